#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

namespace ramsum {

using BigInt = mpz_class;
using Rational = mpq_class;

inline BigInt big_from_u64(std::uint64_t v) {
  BigInt r;
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
  return r;
}

inline BigInt big_from_i64(std::int64_t v) {
  if (v >= 0) return big_from_u64(static_cast<std::uint64_t>(v));
  BigInt r = big_from_u64(static_cast<std::uint64_t>(-(v + 1)));
  r += 1;
  return -r;
}

inline std::optional<std::int64_t> big_to_i64(const BigInt& v) {
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 62) return std::nullopt;
  return static_cast<std::int64_t>(mpz_get_si(v.get_mpz_t()));
}

inline std::string to_string(const BigInt& v) { return v.get_str(); }
inline std::string to_string(const Rational& v) { return v.get_str(); }

}  // namespace ramsum
