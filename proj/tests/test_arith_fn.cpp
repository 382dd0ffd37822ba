#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ramsum/arith_fn.hpp"
#include "support.hpp"

using namespace ramsum;
using namespace testing_support;

TEST_CASE("mobius examples") {
  auto z = z_workspace();
  CHECK(mobius(Element{}) == 1);
  CHECK(mobius(elt(z, 30)) == -1);
  CHECK(mobius(elt(z, 4)) == 0);
  CHECK(mobius(elt(z, 6)) == 1);
}

TEST_CASE("von Mangoldt examples") {
  auto z = z_workspace();
  const auto atoms = z.atoms(100);
  CHECK(von_mangoldt(*atoms, Element{}) == 0.0);
  CHECK(von_mangoldt(*atoms, elt(z, 8)) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(von_mangoldt(*atoms, elt(z, 6)) == 0.0);
  CHECK(von_mangoldt_divisor_sum(*atoms, elt(z, 8)) == doctest::Approx(std::log(2.0)));
  CHECK(std::abs(von_mangoldt_divisor_sum(*atoms, elt(z, 6))) < 1e-15);
}

TEST_CASE("two von Mangoldt evaluators agree up to norm 10^4") {
  for (const char* inst : {"z", "q:-1"}) {
    Workspace ws(make_instance(inst));
    const auto atoms = ws.atoms(10000);
    for (const auto& e : enumerate_up_to(*atoms, 10000)) {
      const double a = von_mangoldt(*atoms, e);
      const double b = von_mangoldt_divisor_sum(*atoms, e);
      REQUIRE(std::abs(a - b) <= 1e-12 * static_cast<double>(divisor_count(e)));
    }
  }
}

TEST_CASE("convolution examples") {
  auto z = z_workspace();
  const auto atoms = z.atoms(100);
  CHECK(same_value(convolve(*atoms, fns::one(), fns::one(), elt(z, 12)), BigInt(6)));
  CHECK(same_value(convolve(*atoms, fns::norm(atoms), fns::mobius(), elt(z, 6)), BigInt(2)));
  for (const auto& e : enumerate_up_to(*atoms, 100)) {
    CHECK(same_value(convolve(*atoms, fns::mobius(), fns::one(), e), fns::delta()(e)));
  }
  CHECK_THROWS_AS(convolve(*atoms, fns::one(), fns::as_real(fns::one()), elt(z, 6)), RingMismatch);
  const auto lazy = convolution(atoms, fns::one(), fns::one());
  CHECK(same_value(lazy(elt(z, 36)), BigInt(9)));
}

TEST_CASE("ArithFn checks the declared ring") {
  const ArithFn bad(Ring::integer, [](const Element&) { return Value(1.5); }, "bad");
  CHECK_THROWS_AS(bad(Element{}), RingMismatch);
}

TEST_CASE("Dirichlet inverse examples") {
  auto z = z_workspace();
  const auto atoms = z.atoms(100);
  const Element root = elt(z, 360);
  const auto inv_one = dirichlet_inverse(fns::one(), root);
  for (std::size_t i = 0; i < inv_one.size(); ++i) {
    CHECK(same_value(inv_one[i], BigInt(mobius(inv_one.element_at(i)))));
  }
  const auto inv_delta = dirichlet_inverse(fns::delta(), root);
  for (std::size_t i = 0; i < inv_delta.size(); ++i) {
    CHECK(same_value(inv_delta[i], fns::delta()(inv_delta.element_at(i))));
  }
  const auto inv_norm = dirichlet_inverse(fns::norm(atoms), elt(z, 7));
  CHECK(same_value(inv_norm.at(elt(z, 7)), BigInt(-7)));

  const ArithFn two(Ring::integer, [](const Element&) { return Value(BigInt(2)); });
  CHECK_THROWS_AS(dirichlet_inverse(two, root), NotInvertible);
  // Over the rationals 2 is a unit.
  const ArithFn two_q(Ring::rational, [](const Element&) { return Value(Rational(2)); });
  const auto inv = dirichlet_inverse(two_q, elt(z, 12));
  CHECK(same_value(inv.at(Element{}), Rational(1, 2)));
  const auto prod = convolve(DownsetTable::tabulate(two_q, elt(z, 12)), inv);
  for (std::size_t i = 0; i < prod.size(); ++i) {
    CHECK(same_value(prod[i], i == 0 ? Value(Rational(1)) : Value(Rational(0))));
  }
}

TEST_CASE("Jordan totient examples") {
  auto z = z_workspace();
  const auto atoms = z.atoms(100);
  for (std::uint64_t n : {1ull, 2ull, 12ull, 97ull}) {
    CHECK(phi_exact(*atoms, elt(z, n), 0) == (n == 1 ? 1 : 0));
  }
  CHECK(phi_exact(*atoms, elt(z, 6), 1) == 2);
  CHECK(phi_exact(*atoms, elt(z, 2), 2) == 3);
  CHECK(phi_real(*atoms, elt(z, 12), 1.0) == doctest::Approx(4.0));
  const auto c = phi_complex(*atoms, elt(z, 12), {2.0, 0.0});
  CHECK(c.real() == doctest::Approx(phi_exact(*atoms, elt(z, 12), 2).get_d()));
  CHECK(std::abs(c.imag()) < 1e-12);
}

TEST_CASE("phi_1 equals N * mu up to norm 10^4") {
  auto z = z_workspace();
  const auto atoms = z.atoms(10000);
  for (const auto& e : enumerate_up_to(*atoms, 10000)) {
    REQUIRE(same_value(Value(phi_exact(*atoms, e, 1)),
                       convolve(*atoms, fns::norm(atoms), fns::mobius(), e)));
  }
}

TEST_CASE("mobius is multiplicative across disjoint supports") {
  std::mt19937_64 rng(3);
  auto z = z_workspace();
  const auto atoms = z.atoms(100);
  for (int t = 0; t < 500; ++t) {
    const Element a = random_element(rng, *atoms, 10, 4, 2);
    const Element b = random_element(rng, *atoms, 10, 4, 2);
    if (!gcd(a, b).is_zero()) continue;
    CHECK(mobius(add(a, b)) == mobius(a) * mobius(b));
  }
}

namespace {

DownsetTable random_table(const Element& root, std::mt19937_64& rng) {
  DownsetTable t(root, Ring::integer);
  std::uniform_int_distribution<int> v(-5, 5);
  for (std::size_t i = 0; i < t.size(); ++i) t.set(i, BigInt(v(rng)));
  return t;
}

bool equal(const DownsetTable& a, const DownsetTable& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_value(a[i], b[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("property: convolution algebra on random downsets") {
  std::mt19937_64 rng(2024);
  for (const char* inst : {"z", "q:-1"}) {
    Workspace ws(make_instance(inst));
    const auto atoms = ws.atoms(100);
    for (int t = 0; t < 500; ++t) {
      const Element root = random_element(rng, *atoms);
      const auto f = random_table(root, rng);
      const auto g = random_table(root, rng);
      const auto h = random_table(root, rng);
      CHECK(equal(convolve(f, g), convolve(g, f)));
      CHECK(equal(convolve(convolve(f, g), h), convolve(f, convolve(g, h))));
      const auto delta = DownsetTable::tabulate(fns::delta(), root);
      CHECK(equal(convolve(delta, f), f));
      CHECK(equal(convolve(f, delta), f));
      const auto one = DownsetTable::tabulate(fns::one(), root);
      const auto mu = DownsetTable::tabulate(fns::mobius(), root);
      CHECK(equal(convolve(convolve(f, one), mu), f));
      // Table convolution agrees with the lazy function form at the root.
      CHECK(same_value(convolve(f, g).at(root), convolve(*atoms, f.as_fn(), g.as_fn(), root)));
    }
  }
}

TEST_CASE("DownsetTable indexing") {
  auto z = z_workspace();
  const Element root = elt(z, 72);
  DownsetTable t(root, Ring::integer);
  CHECK(t.size() == 12);
  for (std::size_t i = 0; i < t.size(); ++i) CHECK(t.index_of(t.element_at(i)) == i);
  CHECK_THROWS_AS(t.index_of(elt(z, 5)), PreconditionError);
  const auto lower = t.lower_indices(t.index_of(elt(z, 12)));
  CHECK(lower.size() == 6);
  CHECK(std::is_sorted(lower.begin(), lower.end()));
  CHECK_THROWS_AS(t.set(std::size_t{0}, Value(1.0)), RingMismatch);
}

TEST_CASE("abel_sum examples") {
  auto z = z_workspace();
  const auto atoms = z.atoms(200);
  const SmoothFn inv{[](double t) { return 1.0 / t; }, [](double t) { return -1.0 / (t * t); }};
  const auto one_r = fns::as_real(fns::one());

  const auto r1 = abel_sum(*atoms, one_r, inv, 1.0);
  CHECK(r1.direct == doctest::Approx(1.0));
  CHECK(r1.residual == 0.0);

  const auto r10 = abel_sum(*atoms, one_r, inv, 10.0);
  CHECK(r10.direct == doctest::Approx(7381.0 / 2520.0).epsilon(1e-14));
  CHECK(r10.partial_summation == doctest::Approx(7381.0 / 2520.0).epsilon(1e-12));
  CHECK(r10.residual < 1e-12);

  const SmoothFn log_fn{[](double t) { return std::log(t); }, [](double t) { return 1.0 / t; }};
  const auto r100 = abel_sum(*atoms, one_r, log_fn, 100.0);
  CHECK(r100.direct == doctest::Approx(std::lgamma(101.0)).epsilon(1e-12));
  CHECK(r100.residual < 1e-9);

  // A sign-changing weight: mu against 1/t.
  const auto rmu = abel_sum(*atoms, fns::as_real(fns::mobius()), inv, 150.5);
  CHECK(rmu.residual < 1e-12);
}
