#include <atomic>
#include <cmath>

#include "ramsum/errors.hpp"
#include "ramsum/parallel.hpp"
#include "ramsum/simd.hpp"

namespace ramsum::simd {

namespace {

using BlockKernel = double (*)(const double*, std::size_t, std::uint64_t, int);

BlockKernel kernel_for(Isa isa) {
  switch (isa) {
#if defined(RAMSUM_HAVE_AVX2)
    case Isa::avx2:
      return detail::inverse_power_block_avx2;
#endif
#if defined(RAMSUM_HAVE_NEON)
    case Isa::neon:
      return detail::inverse_power_block_neon;
#endif
    default:
      return detail::inverse_power_block_scalar;
  }
}

Isa probe() {
#if defined(RAMSUM_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return Isa::avx2;
#endif
#if defined(RAMSUM_HAVE_NEON)
  return Isa::neon;
#endif
  return Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{probe()};
  return isa;
}

template <class T, class Block>
std::vector<T> blockwise(std::size_t n, unsigned workers, Block&& block) {
  const std::size_t blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<T> partial(blocks);
  parallel_for(blocks, workers, [&](std::size_t b, unsigned) {
    const std::size_t begin = b * kBlockSize;
    const std::size_t len = std::min(kBlockSize, n - begin);
    partial[b] = block(begin, len);
  });
  return partial;
}

template <class T>
T tree(std::vector<T> partial) {
  if (partial.empty()) return T{};
  while (partial.size() > 1) {
    std::vector<T> next((partial.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < partial.size(); i += 2) next[i / 2] = partial[i] + partial[i + 1];
    if (partial.size() % 2 == 1) next.back() = partial.back();
    partial = std::move(next);
  }
  return partial.front();
}

void check_range(std::span<const double> weights, std::uint64_t first, int power) {
  if (power != 1 && power != 2) throw PreconditionError("inverse_power_sum supports powers 1 and 2");
  if (first == 0 && !weights.empty()) throw PreconditionError("inverse_power_sum needs first >= 1");
  if (first + weights.size() >= (std::uint64_t{1} << 26)) {
    throw PreconditionError("inverse_power_sum range too large for exact squares");
  }
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
    case Isa::scalar:
      break;
  }
  return "scalar";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(RAMSUM_HAVE_AVX2)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(RAMSUM_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() { return probe(); }

Isa active_isa() { return active().load(); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa)) throw PreconditionError("ISA not available on this build or CPU");
  active().store(isa);
}

double tree_reduce(std::vector<double> partial) { return tree(std::move(partial)); }

double inverse_power_sum(Isa isa, std::span<const double> weights, std::uint64_t first,
                         int power, unsigned workers) {
  check_range(weights, first, power);
  if (!isa_supported(isa)) throw PreconditionError("ISA not available on this build or CPU");
  const BlockKernel kernel = kernel_for(isa);
  return tree(blockwise<double>(weights.size(), workers, [&](std::size_t begin, std::size_t len) {
    return kernel(weights.data() + begin, len, first + begin, power);
  }));
}

double inverse_power_sum(std::span<const double> weights, std::uint64_t first, int power,
                         unsigned workers) {
  return inverse_power_sum(active_isa(), weights, first, power, workers);
}

double power_sum(std::span<const double> weights, std::uint64_t first, double s,
                 unsigned workers) {
  if (first == 0 && !weights.empty()) throw PreconditionError("power_sum needs first >= 1");
  return tree(blockwise<double>(weights.size(), workers, [&](std::size_t begin, std::size_t len) {
    double lanes[kLanes] = {0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < len; ++i) {
      const double w = weights[begin + i];
      if (w != 0.0) lanes[i % kLanes] += w * std::pow(static_cast<double>(first + begin + i), -s);
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  }));
}

std::complex<double> power_sum(std::span<const double> weights, std::uint64_t first,
                               std::complex<double> s, unsigned workers) {
  if (first == 0 && !weights.empty()) throw PreconditionError("power_sum needs first >= 1");
  using C = std::complex<double>;
  return tree(blockwise<C>(weights.size(), workers, [&](std::size_t begin, std::size_t len) {
    C lanes[kLanes] = {};
    for (std::size_t i = 0; i < len; ++i) {
      const double w = weights[begin + i];
      if (w != 0.0) {
        const double log_m = std::log(static_cast<double>(first + begin + i));
        lanes[i % kLanes] += w * std::exp(-s * log_m);
      }
    }
    return (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  }));
}

}  // namespace ramsum::simd
