#include "ramsum/arith_fn.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace ramsum {

ArithFn::ArithFn(Ring ring, Evaluator evaluator, std::string name)
    : ring_(ring),
      evaluator_(std::make_shared<const Evaluator>(std::move(evaluator))),
      name_(std::move(name)) {}

Value ArithFn::operator()(const Element& e) const {
  Value v = (*evaluator_)(e);
  if (ring_of(v) != ring_) {
    throw RingMismatch("function '" + name_ + "' returned a " +
                       std::string(ring_name(ring_of(v))) + " value, declared " +
                       std::string(ring_name(ring_)));
  }
  return v;
}

int mobius(const Element& e) {
  for (const auto& f : e.factors()) {
    if (f.exp > 1) return 0;
  }
  return e.support_size() % 2 == 0 ? 1 : -1;
}

namespace {

double log_norm(const AtomList& atoms, const Element& e) {
  if (const auto n = atoms.norm_u64(e)) return std::log(static_cast<double>(*n));
  double total = 0.0;
  for (const auto& f : e.factors()) {
    total += f.exp * std::log(static_cast<double>(atoms[f.atom].norm));
  }
  return total;
}

}  // namespace

double von_mangoldt(const AtomList& atoms, const Element& e) {
  if (e.support_size() != 1) return 0.0;
  return std::log(static_cast<double>(atoms[e.factors()[0].atom].norm));
}

double von_mangoldt_divisor_sum(const AtomList& atoms, const Element& e) {
  double total = 0.0;
  for (const auto& d : divisors(atoms, e)) {
    const int m = mobius(sub(e, d));
    if (m != 0) total += m * log_norm(atoms, d);
  }
  return total;
}

namespace fns {

ArithFn one(Ring ring) {
  return ArithFn(ring, [v = ramsum::one(ring)](const Element&) { return v; }, "1");
}

ArithFn delta(Ring ring) {
  return ArithFn(
      ring,
      [z = zero(ring), u = ramsum::one(ring)](const Element& e) { return e.is_zero() ? u : z; },
      "delta");
}

ArithFn mobius(Ring ring) {
  return ArithFn(ring, [ring](const Element& e) { return from_integer(ring, ramsum::mobius(e)); },
                 "mu");
}

ArithFn norm(AtomListPtr atoms) {
  return ArithFn(Ring::integer, [atoms](const Element& e) -> Value { return atoms->norm(e); }, "N");
}

ArithFn norm_power(AtomListPtr atoms, unsigned k) {
  return ArithFn(
      Ring::integer,
      [atoms, k](const Element& e) -> Value {
        BigInt r;
        mpz_pow_ui(r.get_mpz_t(), atoms->norm(e).get_mpz_t(), k);
        return r;
      },
      "N^" + std::to_string(k));
}

ArithFn von_mangoldt(AtomListPtr atoms) {
  return ArithFn(Ring::real,
                 [atoms](const Element& e) -> Value { return ramsum::von_mangoldt(*atoms, e); },
                 "Lambda");
}

ArithFn indicator(Element a) {
  return ArithFn(
      Ring::integer,
      [a = std::move(a)](const Element& b) -> Value { return BigInt(leq(b, a) ? 1 : 0); }, "chi");
}

ArithFn as_real(const ArithFn& f) {
  return ArithFn(Ring::real, [f](const Element& e) -> Value { return to_double(f(e)); },
                 f.name());
}

}  // namespace fns

Value convolve(const AtomList& atoms, const ArithFn& f, const ArithFn& g, const Element& e) {
  if (f.ring() != g.ring()) {
    throw RingMismatch("convolution of " + std::string(ring_name(f.ring())) + " and " +
                       std::string(ring_name(g.ring())) + " functions");
  }
  Value acc = zero(f.ring());
  for (const auto& d : divisors(atoms, e)) acc += f(d) * g(sub(e, d));
  return acc;
}

ArithFn convolution(AtomListPtr atoms, const ArithFn& f, const ArithFn& g) {
  if (f.ring() != g.ring()) {
    throw RingMismatch("convolution of " + std::string(ring_name(f.ring())) + " and " +
                       std::string(ring_name(g.ring())) + " functions");
  }
  return ArithFn(
      f.ring(), [atoms, f, g](const Element& e) { return convolve(*atoms, f, g, e); },
      "(" + f.name() + "*" + g.name() + ")");
}

DownsetTable::DownsetTable(Element root, Ring ring) : root_(std::move(root)), ring_(ring) {
  std::size_t size = 1;
  for (const auto& f : root_.factors()) {
    strides_.push_back(size);
    size *= f.exp + 1;
  }
  values_.assign(size, zero(ring_));
}

DownsetTable DownsetTable::tabulate(const ArithFn& f, const Element& root) {
  DownsetTable t(root, f.ring());
  for (std::size_t i = 0; i < t.size(); ++i) t.values_[i] = f(t.element_at(i));
  return t;
}

std::size_t DownsetTable::index_of(const Element& d) const {
  if (!leq(d, root_)) throw PreconditionError("element outside the tabulated downset");
  std::size_t index = 0;
  const auto rf = root_.factors();
  for (std::size_t i = 0; i < rf.size(); ++i) index += d.exponent(rf[i].atom) * strides_[i];
  return index;
}

Element DownsetTable::element_at(std::size_t index) const {
  std::vector<Factor> out;
  const auto rf = root_.factors();
  for (std::size_t i = 0; i < rf.size(); ++i) {
    const auto digit = static_cast<std::uint32_t>(index % (rf[i].exp + 1));
    index /= rf[i].exp + 1;
    if (digit > 0) out.push_back({rf[i].atom, digit});
  }
  return Element::from_factors(std::move(out));
}

void DownsetTable::set(std::size_t index, Value v) {
  if (ring_of(v) != ring_) throw RingMismatch("value ring differs from table ring");
  values_.at(index) = std::move(v);
}

std::vector<std::size_t> DownsetTable::lower_indices(std::size_t index) const {
  const auto rf = root_.factors();
  std::vector<std::uint32_t> limit(rf.size());
  std::size_t rest = index;
  for (std::size_t i = 0; i < rf.size(); ++i) {
    limit[i] = static_cast<std::uint32_t>(rest % (rf[i].exp + 1));
    rest /= rf[i].exp + 1;
  }
  std::vector<std::size_t> out;
  std::vector<std::uint32_t> digit(rf.size(), 0);
  while (true) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rf.size(); ++i) idx += digit[i] * strides_[i];
    out.push_back(idx);
    std::size_t i = 0;
    while (i < rf.size() && digit[i] == limit[i]) digit[i++] = 0;
    if (i == rf.size()) break;
    ++digit[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

ArithFn DownsetTable::as_fn(std::string name) const {
  auto shared = std::make_shared<const DownsetTable>(*this);
  return ArithFn(
      ring_, [shared](const Element& e) { return shared->at(e); }, std::move(name));
}

DownsetTable convolve(const DownsetTable& f, const DownsetTable& g) {
  if (f.ring() != g.ring()) throw RingMismatch("convolution of tables over different rings");
  if (!(f.root() == g.root())) throw PreconditionError("tables must share their root");
  DownsetTable out(f.root(), f.ring());
  for (std::size_t a = 0; a < f.size(); ++a) {
    Value acc = zero(f.ring());
    for (const std::size_t d : f.lower_indices(a)) acc += f[d] * g[a - d];
    out.set(a, std::move(acc));
  }
  return out;
}

DownsetTable dirichlet_inverse(const ArithFn& f, const Element& root) {
  const Value f0 = f(Element{});
  if (!is_unit(f0)) {
    throw NotInvertible("f(0) = " + to_string(f0) + " is not a unit of the " +
                        std::string(ring_name(f.ring())) + " ring");
  }
  const Value inv0 = inverse(f0);
  const DownsetTable ft = DownsetTable::tabulate(f, root);
  DownsetTable g(root, f.ring());
  g.set(0, inv0);
  for (std::size_t a = 1; a < g.size(); ++a) {
    Value acc = zero(f.ring());
    for (const std::size_t d : g.lower_indices(a)) {
      if (d != 0) acc += ft[d] * g[a - d];
    }
    g.set(a, -(inv0 * acc));
  }
  return g;
}

BigInt phi_exact(const AtomList& atoms, const Element& e, unsigned s) {
  BigInt total = 0;
  BigInt power;
  for (const auto& d : divisors(atoms, e)) {
    const int m = mobius(sub(e, d));
    if (m == 0) continue;
    mpz_pow_ui(power.get_mpz_t(), atoms.norm(d).get_mpz_t(), s);
    if (m > 0) {
      total += power;
    } else {
      total -= power;
    }
  }
  return total;
}

double phi_real(const AtomList& atoms, const Element& e, double s) {
  double total = 0.0;
  for (const auto& d : divisors(atoms, e)) {
    const int m = mobius(sub(e, d));
    if (m != 0) total += m * std::exp(s * log_norm(atoms, d));
  }
  return total;
}

std::complex<double> phi_complex(const AtomList& atoms, const Element& e, std::complex<double> s) {
  std::complex<double> total = 0.0;
  for (const auto& d : divisors(atoms, e)) {
    const int m = mobius(sub(e, d));
    if (m != 0) total += static_cast<double>(m) * std::exp(s * log_norm(atoms, d));
  }
  return total;
}

AbelSumResult abel_sum(const AtomList& atoms, const ArithFn& g, const SmoothFn& f, double x) {
  AbelSumResult result;
  if (!(x >= 1.0)) return result;
  const auto elements = enumerate_up_to(atoms, x);

  // Distinct norms n_0 = 1 < n_1 < ... with S(n_j) accumulated along the way.
  std::vector<std::pair<double, double>> steps;
  double running = 0.0;
  for (const auto& e : elements) {
    const double n = atoms.norm(e).get_d();
    const double gv = to_double(g(e));
    result.direct += gv * f.value(n);
    running += gv;
    if (!steps.empty() && steps.back().first == n) {
      steps.back().second = running;
    } else {
      steps.emplace_back(n, running);
    }
  }

  using boost::math::quadrature::gauss_kronrod;
  double integral = 0.0;
  for (std::size_t j = 0; j < steps.size(); ++j) {
    const double a = steps[j].first;
    const double b = j + 1 < steps.size() ? steps[j + 1].first : x;
    if (b <= a || steps[j].second == 0.0) continue;
    integral += steps[j].second *
                gauss_kronrod<double, 15>::integrate(f.derivative, a, b, 20, 1e-14);
  }
  result.partial_summation = running * f.value(x) - integral;
  result.residual = std::abs(result.direct - result.partial_summation);
  return result;
}

}  // namespace ramsum
