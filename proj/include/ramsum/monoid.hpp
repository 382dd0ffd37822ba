#pragma once

// Free abelian monoid I_X over a countable set of atoms with a completely
// multiplicative norm. Elements are finitely supported exponent maps; atoms
// are materialized lazily, in (norm, label) order, from an AtomSource.

#include <atomic>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ramsum/bigint.hpp"
#include "ramsum/errors.hpp"
#include "ramsum/parallel.hpp"

namespace ramsum {

using AtomId = std::uint32_t;
using Norm = std::uint64_t;

struct Atom {
  AtomId id = 0;
  Norm norm = 0;
  std::string label;
};

// An atom as produced by a source, before the table assigns its id.
struct AtomSpec {
  Norm norm = 0;
  std::string label;
};

struct Factor {
  AtomId atom = 0;
  std::uint32_t exp = 0;
  friend bool operator==(const Factor&, const Factor&) = default;
};

class Element {
 public:
  Element() = default;

  // Sorts by atom id, merges repeated atoms and drops zero exponents.
  static Element from_factors(std::vector<Factor> factors);
  static Element atom(AtomId id, std::uint32_t exp = 1);

  std::span<const Factor> factors() const { return factors_; }
  bool is_zero() const { return factors_.empty(); }
  std::size_t support_size() const { return factors_.size(); }
  std::uint32_t exponent(AtomId id) const;
  std::uint64_t total_degree() const;

  friend bool operator==(const Element&, const Element&) = default;

 private:
  std::vector<Factor> factors_;
};

bool leq(const Element& a, const Element& b);
Element add(const Element& a, const Element& b);
// Requires b <= a; throws PreconditionError otherwise.
Element sub(const Element& a, const Element& b);
Element gcd(const Element& a, const Element& b);
std::uint64_t divisor_count(const Element& e);
// Lexicographic comparison of the dense exponent vectors (e_0, e_1, ...).
std::strong_ordering lex_compare(const Element& a, const Element& b);

struct DensityMeta {
  std::optional<double> c;
  std::optional<double> alpha;
};

class AtomSource {
 public:
  virtual ~AtomSource() = default;

  virtual std::string descriptor() const = 0;
  // Every atom with lo < norm <= hi, in any order.
  virtual std::vector<AtomSpec> atoms_between(Norm lo, Norm hi) const = 0;
  virtual std::optional<Norm> norm_of_label(std::string_view label) const = 0;
  // Atom labels and exponents of the element attached to the rational
  // integer n >= 1, when the instance has such a map.
  virtual std::optional<std::vector<std::pair<std::string, std::uint32_t>>>
  factor_integer(std::uint64_t) const {
    return std::nullopt;
  }
  virtual DensityMeta density() const = 0;
};

// Largest integer n <= x, or 0 when x < 1.
Norm norm_floor(double x);

// Immutable snapshot of the materialized atoms: every atom of norm <= bound().
class AtomList {
 public:
  AtomList() = default;
  AtomList(std::vector<Atom> atoms, Norm bound);

  Norm bound() const { return bound_; }
  std::size_t size() const { return atoms_.size(); }
  std::span<const Atom> atoms() const { return atoms_; }
  const Atom& operator[](AtomId id) const { return atoms_[id]; }

  std::optional<AtomId> find(Norm norm, std::string_view label) const;
  std::size_t count_up_to_norm(Norm n) const;
  bool contains(const Element& e) const;
  void require_covers(double x) const;

  BigInt norm(const Element& e) const;
  // nullopt when the norm does not fit in 64 bits.
  std::optional<std::uint64_t> norm_u64(std::span<const Factor> factors) const;
  std::optional<std::uint64_t> norm_u64(const Element& e) const {
    return norm_u64(e.factors());
  }

 private:
  std::vector<Atom> atoms_;
  Norm bound_ = 1;
};

// Append-only atom table over a source. Readers work on snapshots, so an
// extend() never exposes a partially built view.
class AtomTable {
 public:
  explicit AtomTable(std::shared_ptr<const AtomSource> source);

  const AtomSource& source() const { return *source_; }
  std::shared_ptr<const AtomSource> source_ptr() const { return source_; }

  void extend(double x);
  std::shared_ptr<const AtomList> snapshot() const;
  std::shared_ptr<const AtomList> snapshot(double x) {
    extend(x);
    return snapshot();
  }
  std::optional<AtomId> resolve(std::string_view label);

 private:
  std::shared_ptr<const AtomSource> source_;
  mutable std::mutex mutex_;
  std::shared_ptr<const AtomList> current_;
};

// Divisors of e in canonical order: nondecreasing norm, then lex_compare.
std::vector<Element> divisors(const AtomList& atoms, const Element& e);
// Canonical element order.
bool canonical_less(const AtomList& atoms, const Element& a, const Element& b);

struct ElementView {
  std::span<const Factor> factors;
  std::uint64_t norm = 1;

  Element to_element() const {
    return Element::from_factors({factors.begin(), factors.end()});
  }
};

namespace detail {

template <class Visit>
void visit_subtree(std::span<const Atom> atoms, std::size_t start, Norm bound,
                   Norm current, std::vector<Factor>& stack, Visit& visit) {
  for (std::size_t i = start; i < atoms.size(); ++i) {
    const Norm p = atoms[i].norm;
    if (p > bound / current) break;
    Norm value = current;
    stack.push_back({static_cast<AtomId>(i), 0});
    while (value <= bound / p) {
      value *= p;
      ++stack.back().exp;
      visit(ElementView{stack, value});
      visit_subtree(atoms, i + 1, bound, value, stack, visit);
    }
    stack.pop_back();
  }
}

template <class Visit>
void visit_rooted_at(std::span<const Atom> atoms, std::size_t lead, Norm bound,
                     std::vector<Factor>& stack, Visit& visit) {
  const Norm p = atoms[lead].norm;
  Norm value = 1;
  stack.push_back({static_cast<AtomId>(lead), 0});
  while (value <= bound / p) {
    value *= p;
    ++stack.back().exp;
    visit(ElementView{stack, value});
    visit_subtree(atoms, lead + 1, bound, value, stack, visit);
  }
  stack.pop_back();
}

}  // namespace detail

// Depth-first exponent search over norm-sorted atoms, pruning as soon as the
// partial product exceeds the bound. Visits every element of norm <= bound
// exactly once (zero element first, otherwise unordered).
template <class Visit>
void for_each_up_to(const AtomList& atoms, Norm bound, Visit&& visit) {
  if (bound < 1) return;
  atoms.require_covers(static_cast<double>(bound));
  std::vector<Factor> stack;
  visit(ElementView{stack, 1});
  const auto span = atoms.atoms().first(atoms.count_up_to_norm(bound));
  detail::visit_subtree(span, 0, bound, 1, stack, visit);
}

// Same traversal split by the smallest atom in the support. Each worker folds
// into its own State; callers combine the returned states with an
// order-independent reduction.
template <class State, class Visit>
std::vector<State> visit_up_to_parallel(const AtomList& atoms, Norm bound,
                                        unsigned workers, const State& init,
                                        Visit&& visit) {
  if (bound < 1) return {init};
  atoms.require_covers(static_cast<double>(bound));
  const auto span = atoms.atoms().first(atoms.count_up_to_norm(bound));
  const unsigned threads = effective_workers(workers, span.size() + 1);
  std::vector<State> states(threads, init);
  std::vector<std::vector<Factor>> stacks(threads);
  parallel_for(span.size() + 1, threads, [&](std::size_t task, unsigned w) {
    auto fold = [&](const ElementView& v) { visit(states[w], v); };
    if (task == 0) {
      fold(ElementView{stacks[w], 1});
    } else {
      detail::visit_rooted_at(span, task - 1, bound, stacks[w], fold);
    }
  });
  return states;
}

// Every element of norm <= x in canonical order. Empty when x < 1.
std::vector<Element> enumerate_up_to(const AtomList& atoms, double x);
std::uint64_t count_up_to(const AtomList& atoms, double x, unsigned workers = 1);

// Per-norm sums sums[n-1] = sum of value(M) over M with norm n <= bound.
// Integer accumulation, so the result does not depend on the worker count.
template <class Value>
std::vector<std::int64_t> sum_by_norm(const AtomList& atoms, Norm bound,
                                      unsigned workers, Value&& value) {
  std::vector<std::int64_t> sums(bound, 0);
  if (bound < 1) return sums;
  struct Nothing {};
  visit_up_to_parallel(atoms, bound, workers, Nothing{},
                       [&](Nothing&, const ElementView& v) {
                         const std::int64_t add = value(v);
                         if (add != 0) {
                           std::atomic_ref<std::int64_t>(sums[v.norm - 1])
                               .fetch_add(add, std::memory_order_relaxed);
                         }
                       });
  return sums;
}

// Number of elements of each norm n <= bound.
class NormHistogram {
 public:
  NormHistogram(const AtomList& atoms, Norm bound, unsigned workers = 1);

  Norm bound() const { return bound_; }
  std::uint64_t at(Norm n) const;
  std::uint64_t count_up_to(double t) const;
  // weights()[n - 1] = number of elements of norm n, as exact doubles.
  std::span<const double> weights() const { return weights_; }

 private:
  Norm bound_;
  std::vector<double> weights_;
  std::vector<std::uint64_t> cumulative_;
};

// One instance plus its lazily grown atom table and a cached norm
// histogram. Not safe to share between threads; the computations it starts
// are internally parallel.
class Workspace {
 public:
  explicit Workspace(std::shared_ptr<const AtomSource> source, unsigned workers = 1);

  AtomTable& table() { return table_; }
  const AtomSource& source() const { return table_.source(); }
  DensityMeta density() const { return table_.source().density(); }
  unsigned workers() const { return workers_; }
  void set_workers(unsigned workers) { workers_ = workers == 0 ? 1 : workers; }

  std::shared_ptr<const AtomList> atoms(double x) { return table_.snapshot(x); }
  std::shared_ptr<const NormHistogram> histogram(double x);
  std::uint64_t count_up_to(double x);

 private:
  AtomTable table_;
  unsigned workers_;
  std::shared_ptr<const NormHistogram> histogram_;
};

}  // namespace ramsum
