#include "ramsum/number_field.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <numeric>

namespace ramsum {

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

bool is_squarefree(std::int64_t n) {
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  if (m == 0) return false;
  for (std::uint64_t d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      m /= d;
      if (m % d == 0) return false;
    }
  }
  return true;
}

namespace {

std::vector<std::uint64_t> small_primes(std::uint64_t limit) {
  std::vector<char> composite(limit + 1, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = 1;
  }
  return out;
}

std::vector<std::pair<std::uint64_t, std::uint32_t>> factor_u64(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
    std::uint32_t e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

// "p<digits><suffix>" -> (prime, suffix)
std::optional<std::pair<std::uint64_t, std::string_view>> parse_label(std::string_view label) {
  if (label.size() < 2 || label[0] != 'p') return std::nullopt;
  std::uint64_t p = 0;
  const char* begin = label.data() + 1;
  const char* end = label.data() + label.size();
  auto [ptr, ec] = std::from_chars(begin, end, p);
  if (ec != std::errc() || ptr == begin || !is_prime(p)) return std::nullopt;
  return std::pair{p, std::string_view(ptr, static_cast<std::size_t>(end - ptr))};
}

std::string prime_label(std::uint64_t p, std::string_view suffix = {}) {
  return "p" + std::to_string(p) + std::string(suffix);
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

}  // namespace

std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  if (hi < 2 || hi <= lo) return out;
  const auto base = small_primes(isqrt(hi));
  constexpr std::uint64_t kSegment = std::uint64_t{1} << 20;
  std::vector<char> composite;
  for (std::uint64_t start = std::max<std::uint64_t>(lo + 1, 2); start <= hi; start += kSegment) {
    const std::uint64_t stop = std::min(hi, start + kSegment - 1);
    composite.assign(stop - start + 1, 0);
    for (const auto p : base) {
      if (p * p > stop) break;
      std::uint64_t first = std::max(p * p, (start + p - 1) / p * p);
      for (std::uint64_t j = first; j <= stop; j += p) composite[j - start] = 1;
    }
    for (std::uint64_t n = start; n <= stop; ++n) {
      if (!composite[n - start]) out.push_back(n);
    }
  }
  return out;
}

std::vector<AtomSpec> RationalIntegers::atoms_between(Norm lo, Norm hi) const {
  std::vector<AtomSpec> out;
  for (const auto p : primes_between(lo, hi)) out.push_back({p, prime_label(p)});
  return out;
}

std::optional<Norm> RationalIntegers::norm_of_label(std::string_view label) const {
  const auto parsed = parse_label(label);
  if (!parsed || !parsed->second.empty()) return std::nullopt;
  return parsed->first;
}

std::optional<std::vector<std::pair<std::string, std::uint32_t>>> RationalIntegers::factor_integer(
    std::uint64_t n) const {
  if (n == 0) return std::nullopt;
  std::vector<std::pair<std::string, std::uint32_t>> out;
  for (const auto& [p, e] : factor_u64(n)) out.emplace_back(prime_label(p), e);
  return out;
}

std::shared_ptr<const AtomSource> rational_integers() {
  static const auto instance = std::make_shared<const RationalIntegers>();
  return instance;
}

int kronecker(std::int64_t a, std::int64_t n) {
  static constexpr int kTwo[8] = {0, 1, 0, -1, 0, -1, 0, 1};  // (2/a) by a mod 8
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  if (a % 2 == 0 && n % 2 == 0) return 0;
  int k = 1;
  int v = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++v;
  }
  if (v % 2 == 1) k = kTwo[mod(a, 8)];
  if (n < 0) {
    n = -n;
    if (a < 0) k = -k;
  }
  // n odd and positive from here on.
  a = mod(a, n);
  while (a != 0) {
    v = 0;
    while (a % 2 == 0) {
      a /= 2;
      ++v;
    }
    if (v % 2 == 1) k *= kTwo[n % 8];
    if (a % 4 == 3 && n % 4 == 3) k = -k;
    const std::int64_t r = a;
    a = n % r;
    n = r;
  }
  return n == 1 ? k : 0;
}

std::string_view splitting_name(Splitting s) {
  switch (s) {
    case Splitting::split:
      return "split";
    case Splitting::inert:
      return "inert";
    case Splitting::ramified:
      return "ramified";
  }
  return "unknown";
}

SplittingRecord split_prime(std::int64_t disc, std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError("split_prime needs a prime, got " + std::to_string(p));
  SplittingRecord rec;
  rec.p = p;
  switch (kronecker(disc, static_cast<std::int64_t>(p))) {
    case 1:
      rec.type = Splitting::split;
      rec.atoms = {{p, prime_label(p, "a")}, {p, prime_label(p, "b")}};
      break;
    case -1:
      rec.type = Splitting::inert;
      rec.atoms = {{p * p, prime_label(p)}};
      break;
    default:
      rec.type = Splitting::ramified;
      rec.atoms = {{p, prime_label(p, "r")}};
      break;
  }
  return rec;
}

QuadraticFieldDescriptor describe_quadratic(std::int64_t d) {
  if (d == 0 || d == 1) throw PreconditionError("quadratic field needs d not in {0, 1}");
  if (!is_squarefree(d)) {
    throw PreconditionError("d = " + std::to_string(d) + " is not squarefree");
  }
  QuadraticFieldDescriptor f;
  f.d = d;
  f.disc = mod(d, 4) == 1 ? d : 4 * d;
  f.r1 = d > 0 ? 2 : 0;
  f.r2 = d > 0 ? 0 : 1;
  return f;
}

FieldInvariants rational_invariants() {
  FieldInvariants inv;
  inv.r1 = 1;
  inv.r2 = 0;
  inv.regulator = 1.0;
  inv.class_number = 1;
  inv.roots_of_unity = 2;
  inv.abs_disc = 1;
  return inv;
}

FieldInvariants quadratic_invariants(std::int64_t d) {
  const auto f = describe_quadratic(d);
  FieldInvariants inv;
  inv.r1 = f.r1;
  inv.r2 = f.r2;
  inv.abs_disc = static_cast<std::uint64_t>(f.disc < 0 ? -f.disc : f.disc);
  if (f.disc < 0) {
    inv.regulator = 1.0;
    inv.class_number = class_number_imaginary(f.disc);
    inv.roots_of_unity = f.disc == -3 ? 6 : f.disc == -4 ? 4 : 2;
  } else {
    inv.regulator = regulator_real(f.disc);
    inv.roots_of_unity = 2;
  }
  return inv;
}

QuadraticField::QuadraticField(std::int64_t d)
    : field_(describe_quadratic(d)), invariants_(quadratic_invariants(d)) {}

std::vector<AtomSpec> QuadraticField::atoms_between(Norm lo, Norm hi) const {
  std::vector<AtomSpec> out;
  for (const auto p : primes_between(lo, hi)) {
    auto rec = split_prime(field_.disc, p);
    if (rec.type == Splitting::inert) continue;
    for (auto& a : rec.atoms) out.push_back(std::move(a));
  }
  for (const auto p : primes_between(isqrt(lo), isqrt(hi))) {
    auto rec = split_prime(field_.disc, p);
    if (rec.type == Splitting::inert) out.push_back(std::move(rec.atoms.front()));
  }
  return out;
}

std::optional<Norm> QuadraticField::norm_of_label(std::string_view label) const {
  const auto parsed = parse_label(label);
  if (!parsed) return std::nullopt;
  const auto rec = split_prime(field_.disc, parsed->first);
  for (const auto& a : rec.atoms) {
    if (a.label == label) return a.norm;
  }
  return std::nullopt;
}

std::optional<std::vector<std::pair<std::string, std::uint32_t>>> QuadraticField::factor_integer(
    std::uint64_t n) const {
  if (n == 0) return std::nullopt;
  std::vector<std::pair<std::string, std::uint32_t>> out;
  for (const auto& [p, e] : factor_u64(n)) {
    const auto rec = split_prime(field_.disc, p);
    const std::uint32_t k = rec.type == Splitting::ramified ? 2 * e : e;
    for (const auto& a : rec.atoms) out.emplace_back(a.label, k);
  }
  return out;
}

DensityMeta QuadraticField::density() const {
  DensityMeta meta;
  meta.alpha = 0.5;
  if (invariants_.class_number) meta.c = cf_from_formula(invariants_);
  return meta;
}

std::shared_ptr<const QuadraticField> quadratic_field(std::int64_t d) {
  return std::make_shared<const QuadraticField>(d);
}

std::uint64_t class_number_imaginary(std::int64_t disc) {
  const bool fundamental =
      disc < 0 && (mod(disc, 4) == 1 ? is_squarefree(disc)
                                     : disc % 4 == 0 && (mod(disc / 4, 4) == 2 || mod(disc / 4, 4) == 3) &&
                                           is_squarefree(disc / 4));
  if (!fundamental) {
    throw PreconditionError("class_number_imaginary needs a negative fundamental discriminant");
  }
  const std::int64_t abs_d = -disc;
  std::uint64_t h = 0;
  for (std::int64_t a = 1; 3 * a * a <= abs_d; ++a) {
    for (std::int64_t b = -a + 1; b <= a; ++b) {
      const std::int64_t num = b * b - disc;
      if (num % (4 * a) != 0) continue;
      const std::int64_t c = num / (4 * a);
      if (c < a) continue;
      if (b < 0 && a == c) continue;
      if (std::gcd(std::gcd(a, b < 0 ? -b : b), c) != 1) continue;
      ++h;
    }
  }
  return h;
}

namespace {

bool is_fundamental_positive(std::int64_t disc) {
  if (disc <= 1) return false;
  if (mod(disc, 4) == 1) return is_squarefree(disc);
  if (disc % 4 != 0) return false;
  const std::int64_t m = disc / 4;
  return (mod(m, 4) == 2 || mod(m, 4) == 3) && is_squarefree(m);
}

double log_positive(const BigInt& u, const BigInt& v, double sqrt_d) {
  long eu = 0;
  long ev = 0;
  const double mu = mpz_get_d_2exp(&eu, u.get_mpz_t());
  const double mv = mpz_get_d_2exp(&ev, v.get_mpz_t());
  const long e = std::max(eu, ev);
  const double scaled = std::ldexp(mu, static_cast<int>(eu - e)) +
                        std::ldexp(mv, static_cast<int>(ev - e)) * sqrt_d;
  return std::log(scaled) + static_cast<double>(e) * std::numbers::ln2;
}

}  // namespace

FundamentalUnit fundamental_unit(std::int64_t disc) {
  if (!is_fundamental_positive(disc)) {
    throw PreconditionError("regulator needs a positive fundamental discriminant");
  }
  const bool one_mod_four = mod(disc, 4) == 1;
  const std::int64_t d = one_mod_four ? disc : disc / 4;
  const auto s = static_cast<std::int64_t>(isqrt(static_cast<std::uint64_t>(d)));

  // Continued fraction of omega = (P + sqrt d) / Q with omega = (1 + sqrt d)/2
  // or sqrt d. From index 1 the expansion is purely periodic; with period r
  // the fundamental unit is p_{r-1} - q_{r-1} * conj(omega).
  std::int64_t P = one_mod_four ? 1 : 0;
  std::int64_t Q = one_mod_four ? 2 : 1;
  BigInt p_prev = 1, p_prev2 = 0, q_prev = 0, q_prev2 = 1;
  std::int64_t P1 = 0, Q1 = 0;
  for (std::uint64_t k = 0;; ++k) {
    const std::int64_t a = (P + s) / Q;
    BigInt pk = a * p_prev + p_prev2;
    BigInt qk = a * q_prev + q_prev2;
    P = a * Q - P;
    Q = (d - P * P) / Q;
    if (k == 0) {
      P1 = P;
      Q1 = Q;
    } else if (P == P1 && Q == Q1) {
      FundamentalUnit unit;
      unit.d = d;
      // pk, qk belong to index r; the unit uses index r - 1.
      if (one_mod_four) {
        unit.u = 2 * p_prev - q_prev;
        unit.v = q_prev;
      } else {
        unit.u = 2 * p_prev;
        unit.v = 2 * q_prev;
      }
      const BigInt n4 = unit.u * unit.u - d * unit.v * unit.v;
      unit.norm = sgn(n4);
      unit.regulator = log_positive(unit.u, unit.v, std::sqrt(static_cast<double>(d))) -
                       std::numbers::ln2;
      return unit;
    }
    p_prev2 = std::move(p_prev);
    p_prev = std::move(pk);
    q_prev2 = std::move(q_prev);
    q_prev = std::move(qk);
  }
}

double regulator_real(std::int64_t disc) { return fundamental_unit(disc).regulator; }

double cf_from_formula(const FieldInvariants& inv) {
  if (!inv.class_number) throw PreconditionError("class number unknown");
  if (inv.regulator <= 0.0 || inv.roots_of_unity <= 0 || inv.abs_disc == 0) {
    throw PreconditionError("field invariants incomplete");
  }
  return std::pow(2.0, inv.r1) * std::pow(2.0 * std::numbers::pi, inv.r2) * inv.regulator *
         static_cast<double>(*inv.class_number) /
         (inv.roots_of_unity * std::sqrt(static_cast<double>(inv.abs_disc)));
}

ClassNumberEstimate h_from_counting(Workspace& field, const FieldInvariants& inv, double x) {
  if (!(x >= 1.0)) throw PreconditionError("h_from_counting needs x >= 1");
  const double density = static_cast<double>(field.count_up_to(x)) / x;
  ClassNumberEstimate out;
  out.estimate = density * inv.roots_of_unity * std::sqrt(static_cast<double>(inv.abs_disc)) /
                 (std::pow(2.0, inv.r1) * std::pow(2.0 * std::numbers::pi, inv.r2) * inv.regulator);
  const double nearest = std::round(out.estimate);
  if (nearest < 1.0 || std::abs(out.estimate - nearest) > 0.4) {
    throw InconclusiveError("class number estimate " + std::to_string(out.estimate) +
                            " is not within 0.4 of a positive integer");
  }
  out.rounded = static_cast<std::uint64_t>(nearest);
  return out;
}

std::shared_ptr<const AtomSource> make_instance(std::string_view selector) {
  if (selector == "z") return rational_integers();
  if (selector.starts_with("q:")) {
    std::int64_t d = 0;
    const char* begin = selector.data() + 2;
    const char* end = selector.data() + selector.size();
    auto [ptr, ec] = std::from_chars(begin, end, d);
    if (ec != std::errc() || ptr != end || begin == end) {
      throw ParseError("bad quadratic field selector '" + std::string(selector) + "'");
    }
    try {
      return quadratic_field(d);
    } catch (const PreconditionError& e) {
      throw ParseError(e.what());
    }
  }
  throw ParseError("unknown instance '" + std::string(selector) + "' (expected z or q:<d>)");
}

}  // namespace ramsum
