#pragma once

// Textual element specs: a positive integer n (the element attached to n,
// e.g. its prime factorization over Z or the principal ideal (n) in a
// quadratic field) or a product of atom powers such as "p2^2*p5a".

#include <string>
#include <string_view>

#include "ramsum/monoid.hpp"

namespace ramsum {

// Resolves labels through the table, extending it as needed. Throws
// ParseError for malformed specs and unknown labels.
Element parse_element(AtomTable& table, std::string_view spec);

// Canonical form: "1" for the zero element, otherwise label powers sorted by
// label and joined with '*', exponent omitted when it is 1.
std::string format_element(const AtomList& atoms, const Element& e);

}  // namespace ramsum
