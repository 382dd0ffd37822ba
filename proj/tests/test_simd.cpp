#include <bit>
#include <cmath>
#include <random>

#include "doctest.h"
#include "ramsum/errors.hpp"
#include "ramsum/simd.hpp"

using namespace ramsum;
using namespace ramsum::simd;

namespace {

std::vector<double> random_weights(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> v(-6, 12);
  std::vector<double> w(n);
  for (auto& x : w) x = v(rng);
  return w;
}

long double reference(const std::vector<double>& w, std::uint64_t first, int power) {
  long double s = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const long double m = static_cast<long double>(first + i);
    s += w[i] / (power == 1 ? m : m * m);
  }
  return s;
}

}  // namespace

TEST_CASE("isa reporting") {
  CHECK(isa_supported(Isa::scalar));
  CHECK(isa_supported(detected_isa()));
  CHECK(isa_name(Isa::scalar) == "scalar");
#if !defined(__aarch64__)
  CHECK_THROWS_AS(set_active_isa(Isa::neon), PreconditionError);
#endif
}

TEST_CASE("every kernel is bit-identical to the scalar reference") {
  const std::size_t lengths[] = {0, 1, 3, 4, 5, 4095, 4096, 4097, 100000};
  for (std::size_t n : lengths) {
    const auto w = random_weights(n, n + 1);
    for (int power : {1, 2}) {
      for (std::uint64_t first : {1ull, 7ull, 1000003ull}) {
        const double ref = inverse_power_sum(Isa::scalar, w, first, power, 1);
        for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon}) {
          if (!isa_supported(isa)) continue;
          for (unsigned workers : {1u, 2u, 5u}) {
            const double v = inverse_power_sum(isa, w, first, power, workers);
            REQUIRE(std::bit_cast<std::uint64_t>(v) == std::bit_cast<std::uint64_t>(ref));
          }
        }
        CHECK(std::abs(static_cast<long double>(ref) - reference(w, first, power)) <=
              1e-12L * (1 + std::abs(reference(w, first, power))));
      }
    }
  }
}

TEST_CASE("dispatch follows the active isa") {
  const auto w = random_weights(10000, 3);
  const Isa saved = active_isa();
  set_active_isa(Isa::scalar);
  const double a = inverse_power_sum(w, 1, 1);
  set_active_isa(detected_isa());
  const double b = inverse_power_sum(w, 1, 1);
  set_active_isa(saved);
  CHECK(std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b));
}

TEST_CASE("power sums are worker independent and accurate") {
  const auto w = random_weights(50000, 9);
  const double r1 = power_sum(w, 1, 1.5, 1);
  for (unsigned workers : {2u, 3u, 8u}) {
    CHECK(std::bit_cast<std::uint64_t>(power_sum(w, 1, 1.5, workers)) == std::bit_cast<std::uint64_t>(r1));
  }
  long double ref = 0;
  for (std::size_t i = 0; i < w.size(); ++i) ref += w[i] / std::pow(static_cast<long double>(i + 1), 1.5L);
  CHECK(std::abs(r1 - static_cast<double>(ref)) < 1e-11);

  const std::complex<double> s(2.0, 3.0);
  const auto c1 = power_sum(w, 1, s, 1);
  const auto c4 = power_sum(w, 1, s, 4);
  CHECK(c1 == c4);
  // Real s through the complex path.
  const auto c2 = power_sum(w, 1, std::complex<double>(2.0, 0.0), 1);
  CHECK(std::abs(c2.real() - inverse_power_sum(Isa::scalar, w, 1, 2)) < 1e-12);
}

TEST_CASE("preconditions") {
  const std::vector<double> w(4, 1.0);
  CHECK_THROWS_AS(inverse_power_sum(w, 0, 1), PreconditionError);
  CHECK_THROWS_AS(inverse_power_sum(w, 1, 3), PreconditionError);
  CHECK_THROWS_AS(inverse_power_sum(w, 1ull << 26, 2), PreconditionError);
  CHECK(tree_reduce({}) == 0.0);
  CHECK(tree_reduce({1.0, 2.0, 3.0}) == 6.0);
}
