#include <arm_neon.h>

#include "ramsum/simd.hpp"

namespace ramsum::simd::detail {

// Two float64x2 accumulators hold lanes {0,1} and {2,3}.
double inverse_power_block_neon(const double* w, std::size_t n, std::uint64_t first,
                                int power) {
  const double f = static_cast<double>(first);
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  const double init01[2] = {f, f + 1.0};
  const double init23[2] = {f + 2.0, f + 3.0};
  float64x2_t m01 = vld1q_f64(init01);
  float64x2_t m23 = vld1q_f64(init23);
  const float64x2_t step = vdupq_n_f64(4.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    float64x2_t d01 = m01;
    float64x2_t d23 = m23;
    if (power == 2) {
      d01 = vmulq_f64(m01, m01);
      d23 = vmulq_f64(m23, m23);
    }
    acc01 = vaddq_f64(acc01, vdivq_f64(vld1q_f64(w + i), d01));
    acc23 = vaddq_f64(acc23, vdivq_f64(vld1q_f64(w + i + 2), d23));
    m01 = vaddq_f64(m01, step);
    m23 = vaddq_f64(m23, step);
  }
  double lanes[kLanes];
  vst1q_f64(lanes, acc01);
  vst1q_f64(lanes + 2, acc23);
  for (; i < n; ++i) {
    const double v = static_cast<double>(first + i);
    const double d = power == 2 ? v * v : v;
    lanes[i % kLanes] += w[i] / d;
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace ramsum::simd::detail
