#pragma once

// Weighted inverse-power sums  sum_i w[i] / (first + i)^s  over norm
// histograms. These are the floating inner loops behind harmonic sums,
// zeta truncations and the residue estimators.
//
// Every variant uses the same reduction shape: the input is cut into blocks
// of kBlockSize entries; inside a block entry i goes to lane i % kLanes and
// lanes combine as (l0 + l1) + (l2 + l3); block sums are then combined by a
// pairwise tree. Scalar, AVX2 and NEON kernels therefore return bit-identical
// results, independent of how blocks are spread over workers.

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace ramsum::simd {

enum class Isa { scalar, avx2, neon };

inline constexpr std::size_t kBlockSize = 4096;
inline constexpr std::size_t kLanes = 4;

std::string_view isa_name(Isa isa);
bool isa_supported(Isa isa);
// Best kernel compiled in and supported by the running CPU.
Isa detected_isa();
Isa active_isa();
// Throws PreconditionError for an unsupported ISA.
void set_active_isa(Isa isa);

// power must be 1 or 2; first + size must stay below 2^26 so squares are exact.
double inverse_power_sum(std::span<const double> weights, std::uint64_t first, int power,
                         unsigned workers = 1);
double inverse_power_sum(Isa isa, std::span<const double> weights, std::uint64_t first,
                         int power, unsigned workers = 1);

// General exponent, scalar only, same reduction shape.
double power_sum(std::span<const double> weights, std::uint64_t first, double s,
                 unsigned workers = 1);
std::complex<double> power_sum(std::span<const double> weights, std::uint64_t first,
                               std::complex<double> s, unsigned workers = 1);

// Pairwise tree over partial sums in index order.
double tree_reduce(std::vector<double> partial);

namespace detail {

double inverse_power_block_scalar(const double* w, std::size_t n, std::uint64_t first,
                                  int power);
#if defined(RAMSUM_HAVE_AVX2)
double inverse_power_block_avx2(const double* w, std::size_t n, std::uint64_t first,
                                int power);
#endif
#if defined(RAMSUM_HAVE_NEON)
double inverse_power_block_neon(const double* w, std::size_t n, std::uint64_t first,
                                int power);
#endif

}  // namespace detail

}  // namespace ramsum::simd
