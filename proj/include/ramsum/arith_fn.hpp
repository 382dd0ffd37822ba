#pragma once

// The Dirichlet convolution algebra of functions I_X -> R.

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "ramsum/monoid.hpp"
#include "ramsum/value.hpp"

namespace ramsum {

// A pure function on elements with a declared value ring. Stateless apart
// from whatever its evaluator captures; memoization lives in DownsetTable.
class ArithFn {
 public:
  using Evaluator = std::function<Value(const Element&)>;

  ArithFn(Ring ring, Evaluator evaluator, std::string name = {});

  Ring ring() const { return ring_; }
  const std::string& name() const { return name_; }
  // Throws RingMismatch if the evaluator returns a value outside ring().
  Value operator()(const Element& e) const;

 private:
  Ring ring_;
  std::shared_ptr<const Evaluator> evaluator_;
  std::string name_;
};

using AtomListPtr = std::shared_ptr<const AtomList>;

int mobius(const Element& e);
// Prime-power rule: log N(A_p) on single-atom elements, else 0.
double von_mangoldt(const AtomList& atoms, const Element& e);
// Definition as the divisor sum  sum_{D <= e} mu(e - D) log N(D).
double von_mangoldt_divisor_sum(const AtomList& atoms, const Element& e);

namespace fns {

ArithFn one(Ring ring = Ring::integer);
ArithFn delta(Ring ring = Ring::integer);
ArithFn mobius(Ring ring = Ring::integer);
ArithFn norm(AtomListPtr atoms);
ArithFn norm_power(AtomListPtr atoms, unsigned k);
ArithFn von_mangoldt(AtomListPtr atoms);
// chi_A(B) = 1 if B <= A else 0.
ArithFn indicator(Element a);
// Real-valued copy of an integer or rational function.
ArithFn as_real(const ArithFn& f);

}  // namespace fns

// (f * g)(e) = sum_{D <= e} f(D) g(e - D), summed in canonical divisor order.
Value convolve(const AtomList& atoms, const ArithFn& f, const ArithFn& g, const Element& e);
// Lazily evaluated f * g.
ArithFn convolution(AtomListPtr atoms, const ArithFn& f, const ArithFn& g);

// Values of a function on the downset {d : d <= root}. Storage is mixed-radix
// over the support of root, so index(a) - index(d) = index(a - d) for d <= a.
class DownsetTable {
 public:
  DownsetTable(Element root, Ring ring);
  static DownsetTable tabulate(const ArithFn& f, const Element& root);

  const Element& root() const { return root_; }
  Ring ring() const { return ring_; }
  std::size_t size() const { return values_.size(); }

  bool contains(const Element& d) const { return leq(d, root_); }
  // Throws PreconditionError when d is not <= root.
  std::size_t index_of(const Element& d) const;
  Element element_at(std::size_t index) const;

  const Value& operator[](std::size_t index) const { return values_[index]; }
  const Value& at(const Element& d) const { return values_[index_of(d)]; }
  void set(std::size_t index, Value v);
  void set(const Element& d, Value v) { set(index_of(d), std::move(v)); }

  // Indices of every d <= element_at(index), in increasing index order.
  std::vector<std::size_t> lower_indices(std::size_t index) const;

  // The table as a function; evaluating outside the downset throws.
  ArithFn as_fn(std::string name = "table") const;

 private:
  Element root_;
  Ring ring_;
  std::vector<std::size_t> strides_;
  std::vector<Value> values_;
};

// Convolution of two tables on the same root.
DownsetTable convolve(const DownsetTable& f, const DownsetTable& g);

// g on divisors(root) with (f * g)(d) = delta(d) for every d <= root, from
// g(0) = 1/f(0), g(A) = -(1/f(0)) sum_{0 < D <= A} f(D) g(A - D).
// Throws NotInvertible unless f(0) is a unit of f's ring.
DownsetTable dirichlet_inverse(const ArithFn& f, const Element& root);

// Jordan-type totient phi_s(e) = sum_{D <= e} mu(e - D) N(D)^s.
BigInt phi_exact(const AtomList& atoms, const Element& e, unsigned s);
double phi_real(const AtomList& atoms, const Element& e, double s);
std::complex<double> phi_complex(const AtomList& atoms, const Element& e, std::complex<double> s);

struct SmoothFn {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
};

struct AbelSumResult {
  double direct = 0.0;
  double partial_summation = 0.0;
  double residual = 0.0;
};

// Both sides of partial summation for S(x) = sum_{N(A) <= x} g(A):
//   sum_{N(A) <= x} g(A) F(N(A))  and  S(x) F(x) - int_1^x S(t) F'(t) dt.
// S is constant between consecutive norms, so the integral is taken piece
// by piece with Gauss-Kronrod quadrature of F' on each piece.
AbelSumResult abel_sum(const AtomList& atoms, const ArithFn& g, const SmoothFn& f, double x);

}  // namespace ramsum
