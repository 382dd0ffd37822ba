#include "ramsum/simd.hpp"

namespace ramsum::simd::detail {

double inverse_power_block_scalar(const double* w, std::size_t n, std::uint64_t first,
                                  int power) {
  double lanes[kLanes] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double m = static_cast<double>(first + i);
    const double d = power == 2 ? m * m : m;
    lanes[i % kLanes] += w[i] / d;
  }
  return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
}

}  // namespace ramsum::simd::detail
