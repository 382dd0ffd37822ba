#pragma once

#include <stdexcept>
#include <string>

namespace ramsum {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated an operation's precondition (sub on b not <= a, table
// not extended far enough, K = 0 where a nonzero element is required, ...).
class PreconditionError : public Error {
 public:
  using Error::Error;
};

// Two arithmetic functions or values over different value rings were combined.
class RingMismatch : public Error {
 public:
  using Error::Error;
};

// Dirichlet inverse requested for f with f(0) not a unit of its ring.
class NotInvertible : public Error {
 public:
  using Error::Error;
};

// A numerical estimate did not land close enough to an integer to round.
class InconclusiveError : public Error {
 public:
  using Error::Error;
};

// Malformed textual input (element specs, instance selectors).
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace ramsum
