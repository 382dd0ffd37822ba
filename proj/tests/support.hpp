#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "ramsum/element_spec.hpp"
#include "ramsum/monoid.hpp"
#include "ramsum/number_field.hpp"

namespace testing_support {

using namespace ramsum;

inline Workspace z_workspace(unsigned workers = 1) { return Workspace(rational_integers(), workers); }
inline Workspace q_workspace(std::int64_t d, unsigned workers = 1) {
  return Workspace(quadratic_field(d), workers);
}

// Element attached to a positive integer (a factorization in Z, the
// principal ideal in a quadratic field).
inline Element elt(Workspace& ws, std::uint64_t n) { return parse_element(ws.table(), std::to_string(n)); }
inline Element elt(Workspace& ws, const std::string& spec) { return parse_element(ws.table(), spec); }

// Up to max_atoms distinct atoms among the first pool atoms, exponents 1..max_exp.
inline Element random_element(std::mt19937_64& rng, const AtomList& atoms, std::size_t pool = 8,
                              std::size_t max_atoms = 4, std::uint32_t max_exp = 3) {
  pool = std::min(pool, atoms.size());
  std::vector<Factor> fs;
  const std::size_t count = std::uniform_int_distribution<std::size_t>(0, max_atoms)(rng);
  for (std::size_t i = 0; i < count; ++i) {
    const auto id = static_cast<AtomId>(std::uniform_int_distribution<std::size_t>(0, pool - 1)(rng));
    const auto e = std::uniform_int_distribution<std::uint32_t>(1, max_exp)(rng);
    fs.push_back({id, e});
  }
  return Element::from_factors(std::move(fs));
}

// chi_{-4}
inline int chi4(std::uint64_t d) {
  if (d % 2 == 0) return 0;
  return d % 4 == 1 ? 1 : -1;
}

}  // namespace testing_support
