#include "ramsum/monoid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace ramsum {

Element Element::from_factors(std::vector<Factor> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const Factor& a, const Factor& b) { return a.atom < b.atom; });
  Element e;
  for (const auto& f : factors) {
    if (f.exp == 0) continue;
    if (!e.factors_.empty() && e.factors_.back().atom == f.atom) {
      e.factors_.back().exp += f.exp;
    } else {
      e.factors_.push_back(f);
    }
  }
  return e;
}

Element Element::atom(AtomId id, std::uint32_t exp) {
  Element e;
  if (exp > 0) e.factors_.push_back({id, exp});
  return e;
}

std::uint32_t Element::exponent(AtomId id) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), id,
                             [](const Factor& f, AtomId a) { return f.atom < a; });
  return (it != factors_.end() && it->atom == id) ? it->exp : 0;
}

std::uint64_t Element::total_degree() const {
  std::uint64_t total = 0;
  for (const auto& f : factors_) total += f.exp;
  return total;
}

namespace {

// Walks the union of both supports in atom order, calling fn(atom, ea, eb).
template <class Fn>
void merge_walk(const Element& a, const Element& b, Fn&& fn) {
  auto fa = a.factors();
  auto fb = b.factors();
  std::size_t i = 0, j = 0;
  while (i < fa.size() || j < fb.size()) {
    if (j == fb.size() || (i < fa.size() && fa[i].atom < fb[j].atom)) {
      if (!fn(fa[i].atom, fa[i].exp, 0u)) return;
      ++i;
    } else if (i == fa.size() || fb[j].atom < fa[i].atom) {
      if (!fn(fb[j].atom, 0u, fb[j].exp)) return;
      ++j;
    } else {
      if (!fn(fa[i].atom, fa[i].exp, fb[j].exp)) return;
      ++i;
      ++j;
    }
  }
}

}  // namespace

bool leq(const Element& a, const Element& b) {
  bool ok = true;
  merge_walk(a, b, [&](AtomId, std::uint32_t ea, std::uint32_t eb) {
    ok = ea <= eb;
    return ok;
  });
  return ok;
}

Element add(const Element& a, const Element& b) {
  std::vector<Factor> out;
  out.reserve(a.support_size() + b.support_size());
  merge_walk(a, b, [&](AtomId id, std::uint32_t ea, std::uint32_t eb) {
    out.push_back({id, ea + eb});
    return true;
  });
  return Element::from_factors(std::move(out));
}

Element sub(const Element& a, const Element& b) {
  std::vector<Factor> out;
  out.reserve(a.support_size());
  merge_walk(a, b, [&](AtomId id, std::uint32_t ea, std::uint32_t eb) {
    if (eb > ea) throw PreconditionError("sub(a, b) requires b <= a");
    if (ea > eb) out.push_back({id, ea - eb});
    return true;
  });
  return Element::from_factors(std::move(out));
}

Element gcd(const Element& a, const Element& b) {
  std::vector<Factor> out;
  merge_walk(a, b, [&](AtomId id, std::uint32_t ea, std::uint32_t eb) {
    if (const auto m = std::min(ea, eb); m > 0) out.push_back({id, m});
    return true;
  });
  return Element::from_factors(std::move(out));
}

std::uint64_t divisor_count(const Element& e) {
  std::uint64_t count = 1;
  for (const auto& f : e.factors()) {
    if (count > std::numeric_limits<std::uint64_t>::max() / (f.exp + 1ull)) {
      throw PreconditionError("divisor count overflows 64 bits");
    }
    count *= f.exp + 1ull;
  }
  return count;
}

std::strong_ordering lex_compare(const Element& a, const Element& b) {
  auto result = std::strong_ordering::equal;
  merge_walk(a, b, [&](AtomId, std::uint32_t ea, std::uint32_t eb) {
    if (ea == eb) return true;
    result = ea <=> eb;
    return false;
  });
  return result;
}

Norm norm_floor(double x) {
  if (!(x >= 1.0)) return 0;
  if (x >= 9.2e18) throw PreconditionError("norm bound too large");
  return static_cast<Norm>(std::floor(x));
}

AtomList::AtomList(std::vector<Atom> atoms, Norm bound)
    : atoms_(std::move(atoms)), bound_(bound) {}

std::optional<AtomId> AtomList::find(Norm norm, std::string_view label) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), std::pair{norm, label},
                             [](const Atom& a, const std::pair<Norm, std::string_view>& key) {
                               if (a.norm != key.first) return a.norm < key.first;
                               return std::string_view(a.label) < key.second;
                             });
  if (it == atoms_.end() || it->norm != norm || it->label != label) return std::nullopt;
  return it->id;
}

std::size_t AtomList::count_up_to_norm(Norm n) const {
  return static_cast<std::size_t>(
      std::upper_bound(atoms_.begin(), atoms_.end(), n,
                       [](Norm v, const Atom& a) { return v < a.norm; }) -
      atoms_.begin());
}

bool AtomList::contains(const Element& e) const {
  return e.is_zero() || e.factors().back().atom < atoms_.size();
}

void AtomList::require_covers(double x) const {
  if (norm_floor(x) > bound_) {
    throw PreconditionError("atom table not extended to the requested norm bound");
  }
}

BigInt AtomList::norm(const Element& e) const {
  if (!contains(e)) throw PreconditionError("element uses atoms outside the table");
  BigInt result = 1;
  BigInt power;
  for (const auto& f : e.factors()) {
    mpz_ui_pow_ui(power.get_mpz_t(), atoms_[f.atom].norm, f.exp);
    result *= power;
  }
  return result;
}

std::optional<std::uint64_t> AtomList::norm_u64(std::span<const Factor> factors) const {
  std::uint64_t result = 1;
  for (const auto& f : factors) {
    if (f.atom >= atoms_.size()) throw PreconditionError("element uses atoms outside the table");
    const std::uint64_t p = atoms_[f.atom].norm;
    for (std::uint32_t k = 0; k < f.exp; ++k) {
      if (__builtin_mul_overflow(result, p, &result)) return std::nullopt;
    }
  }
  return result;
}

AtomTable::AtomTable(std::shared_ptr<const AtomSource> source)
    : source_(std::move(source)), current_(std::make_shared<const AtomList>()) {
  if (!source_) throw PreconditionError("AtomTable needs a source");
}

void AtomTable::extend(double x) {
  const Norm target = norm_floor(x);
  std::lock_guard lock(mutex_);
  if (target <= current_->bound()) return;
  auto fresh = source_->atoms_between(current_->bound(), target);
  std::sort(fresh.begin(), fresh.end(), [](const AtomSpec& a, const AtomSpec& b) {
    return a.norm != b.norm ? a.norm < b.norm : a.label < b.label;
  });
  std::vector<Atom> atoms(current_->atoms().begin(), current_->atoms().end());
  atoms.reserve(atoms.size() + fresh.size());
  for (auto& spec : fresh) {
    if (spec.norm < 2) throw PreconditionError("atom norms must be at least 2");
    atoms.push_back({static_cast<AtomId>(atoms.size()), spec.norm, std::move(spec.label)});
  }
  current_ = std::make_shared<const AtomList>(std::move(atoms), target);
}

std::shared_ptr<const AtomList> AtomTable::snapshot() const {
  std::lock_guard lock(mutex_);
  return current_;
}

std::optional<AtomId> AtomTable::resolve(std::string_view label) {
  const auto norm = source_->norm_of_label(label);
  if (!norm) return std::nullopt;
  extend(static_cast<double>(*norm));
  return snapshot()->find(*norm, label);
}

bool canonical_less(const AtomList& atoms, const Element& a, const Element& b) {
  const auto na = atoms.norm_u64(a);
  const auto nb = atoms.norm_u64(b);
  if (na && nb) {
    if (*na != *nb) return *na < *nb;
  } else {
    const int c = cmp(atoms.norm(a), atoms.norm(b));
    if (c != 0) return c < 0;
  }
  return lex_compare(a, b) < 0;
}

std::vector<Element> divisors(const AtomList& atoms, const Element& e) {
  const auto fs = e.factors();
  std::vector<Element> out;
  out.reserve(divisor_count(e));
  std::vector<std::uint32_t> digits(fs.size(), 0);
  while (true) {
    std::vector<Factor> d;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (digits[i] > 0) d.push_back({fs[i].atom, digits[i]});
    }
    out.push_back(Element::from_factors(std::move(d)));
    std::size_t i = 0;
    while (i < fs.size() && digits[i] == fs[i].exp) digits[i++] = 0;
    if (i == fs.size()) break;
    ++digits[i];
  }
  std::sort(out.begin(), out.end(),
            [&](const Element& a, const Element& b) { return canonical_less(atoms, a, b); });
  return out;
}

std::vector<Element> enumerate_up_to(const AtomList& atoms, double x) {
  const Norm bound = norm_floor(x);
  std::vector<std::pair<std::uint64_t, Element>> found;
  for_each_up_to(atoms, bound,
                 [&](const ElementView& v) { found.emplace_back(v.norm, v.to_element()); });
  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return lex_compare(a.second, b.second) < 0;
  });
  std::vector<Element> out;
  out.reserve(found.size());
  for (auto& [n, e] : found) out.push_back(std::move(e));
  return out;
}

std::uint64_t count_up_to(const AtomList& atoms, double x, unsigned workers) {
  const Norm bound = norm_floor(x);
  if (bound < 1) return 0;
  const auto partial = visit_up_to_parallel(
      atoms, bound, workers, std::uint64_t{0},
      [](std::uint64_t& count, const ElementView&) { ++count; });
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

NormHistogram::NormHistogram(const AtomList& atoms, Norm bound, unsigned workers)
    : bound_(bound) {
  std::vector<std::uint32_t> counts(bound, 0);
  if (bound >= 1) {
    struct Nothing {};
    visit_up_to_parallel(atoms, bound, workers, Nothing{}, [&](Nothing&, const ElementView& v) {
      std::atomic_ref<std::uint32_t>(counts[v.norm - 1]).fetch_add(1, std::memory_order_relaxed);
    });
  }
  weights_.resize(bound);
  cumulative_.resize(bound + 1);
  cumulative_[0] = 0;
  for (Norm n = 1; n <= bound; ++n) {
    weights_[n - 1] = static_cast<double>(counts[n - 1]);
    cumulative_[n] = cumulative_[n - 1] + counts[n - 1];
  }
}

std::uint64_t NormHistogram::at(Norm n) const {
  if (n < 1 || n > bound_) throw PreconditionError("norm outside histogram range");
  return static_cast<std::uint64_t>(weights_[n - 1]);
}

std::uint64_t NormHistogram::count_up_to(double t) const {
  const Norm n = norm_floor(t);
  if (n > bound_) throw PreconditionError("histogram does not cover the requested bound");
  return cumulative_[n];
}

Workspace::Workspace(std::shared_ptr<const AtomSource> source, unsigned workers)
    : table_(std::move(source)), workers_(workers == 0 ? 1 : workers) {}

std::shared_ptr<const NormHistogram> Workspace::histogram(double x) {
  const Norm bound = norm_floor(x);
  if (!histogram_ || histogram_->bound() < bound) {
    auto atoms = table_.snapshot(static_cast<double>(bound));
    histogram_ = std::make_shared<const NormHistogram>(*atoms, bound, workers_);
  }
  return histogram_;
}

std::uint64_t Workspace::count_up_to(double x) {
  if (histogram_ && histogram_->bound() >= norm_floor(x)) return histogram_->count_up_to(x);
  return ramsum::count_up_to(*atoms(x), x, workers_);
}

}  // namespace ramsum
