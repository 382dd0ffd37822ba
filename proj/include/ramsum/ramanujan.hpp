#pragma once

// Generalized Ramanujan sums
//   C_K(M) = sum_{D <= M, K} N(D) mu(K - D)
// the general sums S_{f,g}, the exact identity suites, and the numerical
// experiments around [x] = c x + O(x^alpha).

#include <optional>
#include <string>
#include <vector>

#include "ramsum/arith_fn.hpp"
#include "ramsum/monoid.hpp"
#include "ramsum/value.hpp"

namespace ramsum {

BigInt ramanujan_sum(const AtomList& atoms, const Element& k, const Element& m);

// C_K as a lookup on gcd(M, K): precomputes C_K on every divisor of K (as
// 64-bit integers) so the hot loops over millions of M stay cheap.
class RamanujanKernel {
 public:
  RamanujanKernel(const AtomList& atoms, const Element& k);

  const Element& modulus() const { return k_; }
  std::int64_t operator()(std::span<const Factor> m) const;
  std::int64_t operator()(const Element& m) const { return (*this)(m.factors()); }
  // sum_{D <= K} N(D), the bound on |sum_{N(M) <= x} C_K(M)| when alpha = 0.
  std::int64_t divisor_norm_sum() const { return divisor_norm_sum_; }

 private:
  Element k_;
  std::vector<std::size_t> strides_;
  std::vector<std::int64_t> values_;
  std::int64_t divisor_norm_sum_ = 0;
};

// S_{f,g}(M, K) = sum_{D <= M, K} f(D) g(K - D).
Value s_fg(const ArithFn& f, const ArithFn& g, const Element& m, const Element& k,
           const AtomList& atoms);

struct IdentityReport {
  Value lhs;
  Value rhs;
  bool pass = false;
  std::string context;
};

// sum_{D <= K} C_K(D)  vs  N(K) prod_{p | K} (1 - 2 / N(A_p)), exact.
IdentityReport theorem1_1_pair(const AtomList& atoms, const Element& k);
// sum_{D <= N} C_D(M)  vs  N(N) if N <= M else 0.
IdentityReport theorem1_2_pair(const AtomList& atoms, const Element& m, const Element& n);
// sum_{D <= N} S_{f,g}(D, K) h(N - D)  vs  sum_{D <= N, K} f(D) g(K - D) (1*h)(N - D).
IdentityReport apostol_identity_a(const AtomListPtr& atoms, const ArithFn& f, const ArithFn& g,
                                  const ArithFn& h, const Element& k, const Element& n);
// sum_{D <= N} S_{f,g}(M, D) h(N - D)  vs  sum_{D <= N, M} f(D) (g*h)(N - D).
IdentityReport apostol_identity_b(const AtomListPtr& atoms, const ArithFn& f, const ArithFn& g,
                                  const ArithFn& h, const Element& m, const Element& n);

// H(x) = sum_{N(C) <= x} 1 / N(C).
Rational harmonic_partial_exact(const AtomList& atoms, double x);
double harmonic_partial(Workspace& ws, double x);

enum class ResidueMode { grouped, direct };

// Partial sum of sum_M C_K(M) / N(M) over N(M) <= x, an estimate of
// -c Lambda(K). grouped: sum_{D <= K} mu(K - D) H(x / N(D)); direct: the
// norm-ordered sum itself. Throws PreconditionError for K = 0.
double residue_series(Workspace& ws, const Element& k, double x, ResidueMode mode);

struct ZetaPartial {
  std::complex<double> value;
  // c x^{1 - sigma} / (sigma - 1); NaN when c is unknown or sigma <= 1.
  double tail_bound = 0.0;
};

ZetaPartial zeta_partial(Workspace& ws, double s, double x);
ZetaPartial zeta_partial(Workspace& ws, std::complex<double> s, double x);

// sum_{N(M) <= x} C_K(M), exact, by direct summation over M.
BigInt fixed_k_partial(Workspace& ws, const Element& k, double x);
// Same value via sum_{D <= K} N(D) mu(K - D) [x / N(D)].
BigInt fixed_k_partial_regrouped(Workspace& ws, const Element& k, double x);

// sum_{D, A : N(D + A) <= y} mu(A), which is 1 for every y >= 1.
BigInt inner_identity(Workspace& ws, double y);

struct AsymptoticsReport {
  double x = 0.0;
  double y = 0.0;
  // Regrouped evaluation, always present.
  BigInt s;
  // Direct double sum, when it was cheap enough to run.
  std::optional<BigInt> s_direct;
  bool agree = true;
  double c_hat = 0.0;
  std::optional<double> c;
  std::optional<double> main_term;
  std::optional<double> residual;
  // x^alpha y^(2 - alpha), with alpha = 0 when unknown.
  double bound_scale = 0.0;
};

// Direct evaluation runs when [x] [y] <= this many pair terms.
inline constexpr double kDirectPairLimit = 1e6;

// S(x, y) = sum_{N(M) <= x, N(K) <= y} C_K(M), regrouped as
// sum_{D, A : N(D + A) <= y} N(D) mu(A) [x / N(D)].
AsymptoticsReport double_sum(Workspace& ws, double x, double y, bool force_direct = false);

// Smallest C with |residual| <= C x^alpha y^(2 - alpha) over the reports.
double fit_bound_constant(const std::vector<AsymptoticsReport>& reports);

struct DensityFit {
  double c_hat = 0.0;
  std::optional<double> alpha_hat;
};

// c_hat: x-weighted mean of count/x over the larger half of the samples;
// alpha_hat: least-squares slope of log|count - c_hat x| against log x.
// Needs at least three samples with increasing x.
DensityFit density_fit(const std::vector<std::pair<double, std::uint64_t>>& samples);

}  // namespace ramsum
