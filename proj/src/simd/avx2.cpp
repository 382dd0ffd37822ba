#include <immintrin.h>

#include "ramsum/simd.hpp"

namespace ramsum::simd::detail {

// Lane j of the accumulator holds entries i with i % 4 == j, matching the
// scalar kernel. Plain mul/div/add, no FMA, so rounding is identical.
double inverse_power_block_avx2(const double* w, std::size_t n, std::uint64_t first,
                                int power) {
  const double f = static_cast<double>(first);
  __m256d acc = _mm256_setzero_pd();
  __m256d m = _mm256_set_pd(f + 3.0, f + 2.0, f + 1.0, f);
  const __m256d step = _mm256_set1_pd(4.0);
  std::size_t i = 0;
  if (power == 2) {
    for (; i + 4 <= n; i += 4) {
      const __m256d d = _mm256_mul_pd(m, m);
      acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w + i), d));
      m = _mm256_add_pd(m, step);
    }
  } else {
    for (; i + 4 <= n; i += 4) {
      acc = _mm256_add_pd(acc, _mm256_div_pd(_mm256_loadu_pd(w + i), m));
      m = _mm256_add_pd(m, step);
    }
  }
  alignas(32) double lanes[kLanes];
  _mm256_store_pd(lanes, acc);
  for (; i < n; ++i) {
    const double v = static_cast<double>(first + i);
    const double d = power == 2 ? v * v : v;
    lanes[i % kLanes] += w[i] / d;
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace ramsum::simd::detail
