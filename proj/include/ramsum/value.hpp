#pragma once

#include <complex>
#include <string>
#include <string_view>
#include <variant>

#include "ramsum/bigint.hpp"

namespace ramsum {

// Alternative order matches Ring.
enum class Ring { integer, rational, real, complex };
using Value = std::variant<BigInt, Rational, double, std::complex<double>>;

std::string_view ring_name(Ring ring);
inline Ring ring_of(const Value& v) { return static_cast<Ring>(v.index()); }

Value zero(Ring ring);
Value one(Ring ring);
Value from_integer(Ring ring, long v);

// Binary operations throw RingMismatch unless both operands share a ring.
Value operator+(const Value& a, const Value& b);
Value operator-(const Value& a, const Value& b);
Value operator*(const Value& a, const Value& b);
Value operator-(const Value& a);
Value& operator+=(Value& a, const Value& b);

bool is_zero(const Value& v);
// Units: +-1 for integers, nonzero otherwise.
bool is_unit(const Value& v);
Value inverse(const Value& v);
// Exact equality; ring mismatch compares unequal.
bool same_value(const Value& a, const Value& b);

double to_double(const Value& v);
std::complex<double> to_complex(const Value& v);
std::string to_string(const Value& v);

}  // namespace ramsum
