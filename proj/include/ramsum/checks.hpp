#pragma once

// Seeded property suites over one instance, shared by the CLI `check`
// command and the acceptance run. Trials draw from a per-trial generator
// keyed by (seed, suite, trial index), so reports do not depend on workers.

#include <cstdint>
#include <string>
#include <vector>

#include "ramsum/monoid.hpp"

namespace ramsum {

struct CheckConfig {
  std::string instance = "z";
  // Norm bound for th1, th2, oracle and inner, and the element pool of holder.
  double bound = 300;
  // Random trials for apostol, holder and algebra.
  std::uint64_t trials = 500;
  std::uint64_t seed = 42;
  unsigned workers = 1;
  // Appends one synthetic failure; lets tests exercise the failure path.
  bool inject_fault = false;
};

struct CheckFailure {
  std::string suite;
  std::string check;
  std::string context;
  std::string lhs;
  std::string rhs;
};

struct CheckReport {
  std::string suite;
  std::uint64_t trials = 0;
  std::vector<CheckFailure> failures;

  bool ok() const { return failures.empty(); }
  // {suite, trials, failures: [...]}, keys sorted, two-space indent.
  std::string to_json() const;
};

// Suite names: th1, th2, apostol, holder, oracle, inner, algebra, all.
const std::vector<std::string>& suite_names();

// Throws PreconditionError for unknown suites and for oracle outside Z.
CheckReport run_suite(const std::string& suite, const CheckConfig& config);

// splitmix64 stream with a bounded draw, so the sequence is fixed across
// standard libraries.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  // Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n);
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::uint64_t state_;
};

// Root with 1..max_atoms distinct atoms among the first `pool` atoms and
// exponents 1..max_exp.
Element random_root(const AtomList& atoms, SplitMix64& rng, std::size_t pool = 8,
                    std::size_t max_atoms = 4, std::uint32_t max_exp = 3);
// Uniform divisor of root.
Element random_divisor(const Element& root, SplitMix64& rng);

}  // namespace ramsum
