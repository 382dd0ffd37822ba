#include "ramsum/ramanujan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ramsum/element_spec.hpp"
#include "ramsum/simd.hpp"

namespace ramsum {

namespace {

BigInt pow_norm(Norm p, std::uint32_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), p, e);
  return r;
}

std::int64_t to_i64_or_throw(const BigInt& v, const char* what) {
  const auto r = big_to_i64(v);
  if (!r) throw PreconditionError(std::string(what) + " does not fit in 64 bits");
  return *r;
}

BigInt from_i128(__int128 v) {
  const bool neg = v < 0;
  unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
  BigInt hi = big_from_u64(static_cast<std::uint64_t>(u >> 64));
  BigInt r = hi * BigInt("18446744073709551616") + big_from_u64(static_cast<std::uint64_t>(u));
  return neg ? BigInt(-r) : r;
}

void require_contains(const AtomList& atoms, const Element& e) {
  if (!atoms.contains(e)) throw PreconditionError("element refers to atoms outside the table");
}

// Exact rings compare exactly; floating rings within a relative 1e-9.
bool values_match(const Value& a, const Value& b) {
  if (ring_of(a) != ring_of(b)) return false;
  if (ring_of(a) == Ring::integer || ring_of(a) == Ring::rational) return same_value(a, b);
  const auto ca = to_complex(a);
  const auto cb = to_complex(b);
  const double scale = std::max({1.0, std::abs(ca), std::abs(cb)});
  return std::abs(ca - cb) <= 1e-9 * scale;
}

void require_same_ring(const ArithFn& f, const ArithFn& g, const ArithFn& h) {
  if (f.ring() != g.ring() || g.ring() != h.ring()) {
    throw RingMismatch("identity inputs must share a ring");
  }
}

// Prefix of the histogram weights covering norms 1..floor(x).
std::span<const double> weights_up_to(const NormHistogram& hist, double x) {
  return hist.weights().first(norm_floor(x));
}

}  // namespace

// Only D with K - D squarefree contribute, and the sum is multiplicative in
// the atoms of K: atom p with K_p = k, gcd exponent g gives
// [g >= k] N_p^k - [g >= k - 1] N_p^(k - 1).
BigInt ramanujan_sum(const AtomList& atoms, const Element& k, const Element& m) {
  require_contains(atoms, k);
  BigInt result = 1;
  for (const auto& f : k.factors()) {
    const std::uint32_t g = std::min(f.exp, m.exponent(f.atom));
    const Norm p = atoms[f.atom].norm;
    BigInt local = 0;
    if (g >= f.exp) local += pow_norm(p, f.exp);
    if (g + 1 >= f.exp) local -= pow_norm(p, f.exp - 1);
    if (local == 0) return 0;
    result *= local;
  }
  return result;
}

RamanujanKernel::RamanujanKernel(const AtomList& atoms, const Element& k) : k_(k) {
  require_contains(atoms, k);
  std::size_t size = 1;
  for (const auto& f : k.factors()) {
    strides_.push_back(size);
    size *= static_cast<std::size_t>(f.exp) + 1;
  }
  values_.resize(size);
  BigInt sigma = 0;
  std::vector<std::uint32_t> digits(k.support_size(), 0);
  for (std::size_t idx = 0; idx < size; ++idx) {
    std::vector<Factor> g;
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (digits[i] > 0) g.push_back({k.factors()[i].atom, digits[i]});
    }
    const Element ge = Element::from_factors(std::move(g));
    values_[idx] = to_i64_or_throw(ramanujan_sum(atoms, k, ge), "Ramanujan sum");
    sigma += atoms.norm(ge);
    for (std::size_t i = 0; i < digits.size(); ++i) {
      if (++digits[i] <= k.factors()[i].exp) break;
      digits[i] = 0;
    }
  }
  divisor_norm_sum_ = to_i64_or_throw(sigma, "divisor norm sum");
}

std::int64_t RamanujanKernel::operator()(std::span<const Factor> m) const {
  const auto kf = k_.factors();
  std::size_t idx = 0;
  std::size_t j = 0;
  for (std::size_t i = 0; i < kf.size(); ++i) {
    while (j < m.size() && m[j].atom < kf[i].atom) ++j;
    if (j < m.size() && m[j].atom == kf[i].atom) {
      idx += std::min(m[j].exp, kf[i].exp) * strides_[i];
    }
  }
  return values_[idx];
}

Value s_fg(const ArithFn& f, const ArithFn& g, const Element& m, const Element& k,
           const AtomList& atoms) {
  if (f.ring() != g.ring()) throw RingMismatch("S_{f,g} needs f and g in one ring");
  Value acc = zero(f.ring());
  const Element k_copy = k;
  for (const auto& d : divisors(atoms, gcd(m, k))) acc += f(d) * g(sub(k_copy, d));
  return acc;
}

IdentityReport theorem1_1_pair(const AtomList& atoms, const Element& k) {
  require_contains(atoms, k);
  BigInt lhs = 0;
  for (const auto& d : divisors(atoms, k)) lhs += ramanujan_sum(atoms, k, d);
  Rational rhs(atoms.norm(k));
  for (const auto& f : k.factors()) {
    const Rational p(big_from_u64(atoms[f.atom].norm));
    rhs *= Rational(1) - Rational(2) / p;
  }
  rhs.canonicalize();
  IdentityReport r;
  r.lhs = Rational(lhs);
  r.rhs = rhs;
  r.pass = Rational(lhs) == rhs;
  r.context = "K=" + format_element(atoms, k);
  return r;
}

IdentityReport theorem1_2_pair(const AtomList& atoms, const Element& m, const Element& n) {
  require_contains(atoms, m);
  require_contains(atoms, n);
  BigInt lhs = 0;
  for (const auto& d : divisors(atoms, n)) lhs += ramanujan_sum(atoms, d, m);
  const BigInt rhs = leq(n, m) ? atoms.norm(n) : BigInt(0);
  IdentityReport r;
  r.lhs = lhs;
  r.rhs = rhs;
  r.pass = lhs == rhs;
  r.context = "M=" + format_element(atoms, m) + " N=" + format_element(atoms, n);
  return r;
}

IdentityReport apostol_identity_a(const AtomListPtr& atoms, const ArithFn& f, const ArithFn& g,
                                  const ArithFn& h, const Element& k, const Element& n) {
  require_same_ring(f, g, h);
  require_contains(*atoms, k);
  require_contains(*atoms, n);
  Value lhs = zero(f.ring());
  for (const auto& d : divisors(*atoms, n)) lhs += s_fg(f, g, d, k, *atoms) * h(sub(n, d));
  const ArithFn one_h = convolution(atoms, fns::one(f.ring()), h);
  Value rhs = zero(f.ring());
  for (const auto& d : divisors(*atoms, gcd(n, k))) rhs += f(d) * g(sub(k, d)) * one_h(sub(n, d));
  IdentityReport r;
  r.pass = values_match(lhs, rhs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.context = "K=" + format_element(*atoms, k) + " N=" + format_element(*atoms, n);
  return r;
}

IdentityReport apostol_identity_b(const AtomListPtr& atoms, const ArithFn& f, const ArithFn& g,
                                  const ArithFn& h, const Element& m, const Element& n) {
  require_same_ring(f, g, h);
  require_contains(*atoms, m);
  require_contains(*atoms, n);
  Value lhs = zero(f.ring());
  for (const auto& d : divisors(*atoms, n)) lhs += s_fg(f, g, m, d, *atoms) * h(sub(n, d));
  const ArithFn gh = convolution(atoms, g, h);
  Value rhs = zero(f.ring());
  for (const auto& d : divisors(*atoms, gcd(n, m))) rhs += f(d) * gh(sub(n, d));
  IdentityReport r;
  r.pass = values_match(lhs, rhs);
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  r.context = "M=" + format_element(*atoms, m) + " N=" + format_element(*atoms, n);
  return r;
}

Rational harmonic_partial_exact(const AtomList& atoms, double x) {
  Rational sum = 0;
  for_each_up_to(atoms, norm_floor(x), [&](const ElementView& v) {
    sum += Rational(BigInt(1), big_from_u64(v.norm));
  });
  sum.canonicalize();
  return sum;
}

double harmonic_partial(Workspace& ws, double x) {
  if (x < 1) return 0.0;
  const auto hist = ws.histogram(x);
  return simd::inverse_power_sum(weights_up_to(*hist, x), 1, 1, ws.workers());
}

double residue_series(Workspace& ws, const Element& k, double x, ResidueMode mode) {
  if (k.is_zero()) throw PreconditionError("residue series needs K != 0");
  const auto atoms = ws.atoms(std::max(x, 1.0));
  require_contains(*atoms, k);
  if (x < 1) return 0.0;

  if (mode == ResidueMode::grouped) {
    const auto hist = ws.histogram(x);
    // Terms in canonical divisor order, each H(x / N(D)) a floating sum.
    std::vector<double> terms;
    for (const auto& d : divisors(*atoms, k)) {
      const int mu = mobius(sub(k, d));
      if (mu == 0) continue;
      const double nd = atoms->norm(d).get_d();
      const double t = x / nd;
      if (t < 1) continue;
      terms.push_back(mu * simd::inverse_power_sum(weights_up_to(*hist, t), 1, 1, ws.workers()));
    }
    double sum = 0.0;
    for (double t : terms) sum += t;
    return sum;
  }

  const RamanujanKernel kernel(*atoms, k);
  const auto by_norm = sum_by_norm(*atoms, norm_floor(x), ws.workers(),
                                   [&](const ElementView& v) { return kernel(v.factors); });
  std::vector<double> weights(by_norm.begin(), by_norm.end());
  return simd::inverse_power_sum(weights, 1, 1, ws.workers());
}

ZetaPartial zeta_partial(Workspace& ws, std::complex<double> s, double x) {
  ZetaPartial out;
  const auto density = ws.density();
  const double sigma = s.real();
  if (density.c && sigma > 1 && x >= 1) {
    out.tail_bound = *density.c * std::pow(x, 1 - sigma) / (sigma - 1);
  } else {
    out.tail_bound = std::numeric_limits<double>::quiet_NaN();
  }
  if (x < 1) return out;
  const auto hist = ws.histogram(x);
  const auto w = weights_up_to(*hist, x);
  if (s.imag() == 0 && (s.real() == 1 || s.real() == 2)) {
    out.value = simd::inverse_power_sum(w, 1, static_cast<int>(s.real()), ws.workers());
  } else if (s.imag() == 0) {
    out.value = simd::power_sum(w, 1, s.real(), ws.workers());
  } else {
    out.value = simd::power_sum(w, 1, s, ws.workers());
  }
  return out;
}

ZetaPartial zeta_partial(Workspace& ws, double s, double x) {
  return zeta_partial(ws, std::complex<double>(s, 0.0), x);
}

BigInt fixed_k_partial(Workspace& ws, const Element& k, double x) {
  const auto atoms = ws.atoms(std::max(x, 1.0));
  require_contains(*atoms, k);
  if (x < 1) return 0;
  const RamanujanKernel kernel(*atoms, k);
  const auto states = visit_up_to_parallel(
      *atoms, norm_floor(x), ws.workers(), __int128{0},
      [&](__int128& acc, const ElementView& v) { acc += kernel(v.factors); });
  __int128 total = 0;
  for (auto s : states) total += s;
  return from_i128(total);
}

BigInt fixed_k_partial_regrouped(Workspace& ws, const Element& k, double x) {
  const auto atoms = ws.atoms(std::max(x, 1.0));
  require_contains(*atoms, k);
  if (x < 1) return 0;
  const auto hist = ws.histogram(x);
  BigInt total = 0;
  for (const auto& d : divisors(*atoms, k)) {
    const int mu = mobius(sub(k, d));
    if (mu == 0) continue;
    const BigInt nd = atoms->norm(d);
    const double t = x / nd.get_d();
    if (t < 1) continue;
    total += nd * mu * big_from_u64(hist->count_up_to(t));
  }
  return total;
}

BigInt inner_identity(Workspace& ws, double y) {
  const auto atoms = ws.atoms(std::max(y, 1.0));
  BigInt total = 0;
  for_each_up_to(*atoms, norm_floor(y), [&](const ElementView& v) {
    const Element c = v.to_element();
    for (const auto& d : divisors(*atoms, c)) total += mobius(sub(c, d));
  });
  return total;
}

AsymptoticsReport double_sum(Workspace& ws, double x, double y, bool force_direct) {
  AsymptoticsReport r;
  r.x = x;
  r.y = y;
  const auto atoms = ws.atoms(std::max({x, y, 1.0}));
  const auto hist = ws.histogram(std::max(x, 1.0));

  // sum over C with N(C) <= y of sum_{D <= C} N(D) mu(C - D) [x / N(D)].
  __int128 regrouped = 0;
  for_each_up_to(*atoms, norm_floor(y), [&](const ElementView& v) {
    const Element c = v.to_element();
    for (const auto& d : divisors(*atoms, c)) {
      const int mu = mobius(sub(c, d));
      if (mu == 0) continue;
      const auto nd = atoms->norm_u64(d);
      if (!nd || static_cast<double>(*nd) > x) continue;
      regrouped += static_cast<__int128>(*nd) * mu *
                   static_cast<__int128>(hist->count_up_to(x / static_cast<double>(*nd)));
    }
  });
  r.s = from_i128(regrouped);

  const double pairs = static_cast<double>(hist->count_up_to(x)) *
                       static_cast<double>(ws.count_up_to(y));
  if (force_direct || pairs <= kDirectPairLimit) {
    __int128 direct = 0;
    for_each_up_to(*atoms, norm_floor(y), [&](const ElementView& v) {
      const RamanujanKernel kernel(*atoms, v.to_element());
      const auto states = visit_up_to_parallel(
          *atoms, norm_floor(x), ws.workers(), __int128{0},
          [&](__int128& acc, const ElementView& m) { acc += kernel(m.factors); });
      for (auto s : states) direct += s;
    });
    r.s_direct = from_i128(direct);
    r.agree = *r.s_direct == r.s;
  }

  const double s = r.s.get_d();
  r.c_hat = x > 0 ? s / x : 0.0;
  const auto density = ws.density();
  const double alpha = density.alpha.value_or(0.0);
  r.bound_scale = std::pow(x, alpha) * std::pow(y, 2 - alpha);
  if (density.c) {
    r.c = density.c;
    r.main_term = *density.c * x;
    r.residual = s - *r.main_term;
  }
  return r;
}

double fit_bound_constant(const std::vector<AsymptoticsReport>& reports) {
  double best = 0.0;
  for (const auto& r : reports) {
    if (!r.residual || r.bound_scale <= 0) continue;
    best = std::max(best, std::abs(*r.residual) / r.bound_scale);
  }
  return best;
}

DensityFit density_fit(const std::vector<std::pair<double, std::uint64_t>>& samples) {
  if (samples.size() < 3) throw PreconditionError("density fit needs at least three samples");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].first <= 0 || (i > 0 && samples[i].first <= samples[i - 1].first)) {
      throw PreconditionError("density fit needs positive, increasing x");
    }
  }
  DensityFit fit;
  double sx = 0.0;
  double sc = 0.0;
  for (std::size_t i = samples.size() / 2; i < samples.size(); ++i) {
    sx += samples[i].first;
    sc += static_cast<double>(samples[i].second);
  }
  fit.c_hat = sc / sx;

  std::vector<std::pair<double, double>> pts;
  for (const auto& [x, count] : samples) {
    const double r = std::abs(static_cast<double>(count) - fit.c_hat * x);
    if (r > 0) pts.emplace_back(std::log(x), std::log(r));
  }
  if (pts.size() >= 2) {
    double mx = 0.0;
    double my = 0.0;
    for (const auto& [a, b] : pts) {
      mx += a;
      my += b;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double num = 0.0;
    double den = 0.0;
    for (const auto& [a, b] : pts) {
      num += (a - mx) * (b - my);
      den += (a - mx) * (a - mx);
    }
    if (den > 0) fit.alpha_hat = num / den;
  }
  return fit;
}

}  // namespace ramsum
