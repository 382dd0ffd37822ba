#pragma once

// Built-in instances: the rational integers (atoms = primes) and quadratic
// fields Q(sqrt d) (atoms = prime ideals, found by splitting rational primes
// with the Kronecker symbol), plus the invariants of the residue formula
//   c_F = 2^r1 (2 pi)^r2 R h / (W sqrt|D|).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramsum/bigint.hpp"
#include "ramsum/monoid.hpp"

namespace ramsum {

// Primes p with lo < p <= hi, by a segmented sieve.
std::vector<std::uint64_t> primes_between(std::uint64_t lo, std::uint64_t hi);
bool is_prime(std::uint64_t n);
bool is_squarefree(std::int64_t n);
std::uint64_t isqrt(std::uint64_t n);

class RationalIntegers final : public AtomSource {
 public:
  std::string descriptor() const override { return "z"; }
  std::vector<AtomSpec> atoms_between(Norm lo, Norm hi) const override;
  std::optional<Norm> norm_of_label(std::string_view label) const override;
  std::optional<std::vector<std::pair<std::string, std::uint32_t>>> factor_integer(
      std::uint64_t n) const override;
  DensityMeta density() const override { return {1.0, 0.0}; }
};

std::shared_ptr<const AtomSource> rational_integers();

// Kronecker symbol (a/n), with (a/0) = 1 iff a = +-1.
int kronecker(std::int64_t a, std::int64_t n);

enum class Splitting { split, inert, ramified };
std::string_view splitting_name(Splitting s);

struct SplittingRecord {
  std::uint64_t p = 0;
  Splitting type = Splitting::inert;
  // Labels "p5a"/"p5b" (split), "p3" (inert), "p2r" (ramified).
  std::vector<AtomSpec> atoms;
};

SplittingRecord split_prime(std::int64_t disc, std::uint64_t p);

struct QuadraticFieldDescriptor {
  std::int64_t d = 0;
  std::int64_t disc = 0;
  int r1 = 0;
  int r2 = 0;
};

// Validates d (squarefree, not 0 or 1) and derives the discriminant.
QuadraticFieldDescriptor describe_quadratic(std::int64_t d);

struct FieldInvariants {
  int r1 = 1;
  int r2 = 0;
  double regulator = 1.0;
  std::optional<std::uint64_t> class_number;
  int roots_of_unity = 2;
  std::uint64_t abs_disc = 1;
};

class QuadraticField final : public AtomSource {
 public:
  explicit QuadraticField(std::int64_t d);

  const QuadraticFieldDescriptor& field() const { return field_; }
  // Class number is filled in for imaginary fields only.
  const FieldInvariants& invariants() const { return invariants_; }

  std::string descriptor() const override { return "q:" + std::to_string(field_.d); }
  std::vector<AtomSpec> atoms_between(Norm lo, Norm hi) const override;
  std::optional<Norm> norm_of_label(std::string_view label) const override;
  std::optional<std::vector<std::pair<std::string, std::uint32_t>>> factor_integer(
      std::uint64_t n) const override;
  DensityMeta density() const override;

 private:
  QuadraticFieldDescriptor field_;
  FieldInvariants invariants_;
};

std::shared_ptr<const QuadraticField> quadratic_field(std::int64_t d);

// Reduced forms (a, b, c) with b^2 - 4ac = disc, |b| <= a <= c, and b >= 0
// when |b| = a or a = c.
std::uint64_t class_number_imaginary(std::int64_t disc);

// Fundamental unit (u + v sqrt(d)) / 2 of the real quadratic field with
// fundamental discriminant disc, with u^2 - d v^2 = 4 * norm.
struct FundamentalUnit {
  std::int64_t d = 0;
  BigInt u;
  BigInt v;
  int norm = 1;
  double regulator = 0.0;
};

FundamentalUnit fundamental_unit(std::int64_t disc);
double regulator_real(std::int64_t disc);

// Rational integers as the degree-one field: (1, 0, 1, 1, 2, 1).
FieldInvariants rational_invariants();
// W is 6 for disc -3, 4 for disc -4, 2 otherwise; regulator 1 for imaginary
// fields. Real fields come back without a class number.
FieldInvariants quadratic_invariants(std::int64_t d);

// Throws PreconditionError unless every field, including h, is known.
double cf_from_formula(const FieldInvariants& inv);

struct ClassNumberEstimate {
  double estimate = 0.0;
  std::uint64_t rounded = 0;
};

// h from ([x]/x) W sqrt|D| / (2^r1 (2 pi)^r2 R). Throws InconclusiveError
// when the estimate is farther than 0.4 from the nearest integer.
ClassNumberEstimate h_from_counting(Workspace& field, const FieldInvariants& inv, double x);

// Instance selectors "z" and "q:<d>".
std::shared_ptr<const AtomSource> make_instance(std::string_view selector);

}  // namespace ramsum
