#include "ramsum/value.hpp"

#include <charconv>

#include "ramsum/errors.hpp"

namespace ramsum {

namespace {

template <class Op>
Value binary(const Value& a, const Value& b, Op op) {
  if (a.index() != b.index()) {
    throw RingMismatch(std::string("cannot combine ") + std::string(ring_name(ring_of(a))) +
                       " and " + std::string(ring_name(ring_of(b))) + " values");
  }
  return std::visit(
      [&](const auto& x) -> Value {
        using T = std::decay_t<decltype(x)>;
        return T(op(x, std::get<T>(b)));
      },
      a);
}

std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string_view ring_name(Ring ring) {
  switch (ring) {
    case Ring::integer:
      return "integer";
    case Ring::rational:
      return "rational";
    case Ring::real:
      return "real";
    case Ring::complex:
      return "complex";
  }
  return "unknown";
}

Value zero(Ring ring) { return from_integer(ring, 0); }
Value one(Ring ring) { return from_integer(ring, 1); }

Value from_integer(Ring ring, long v) {
  switch (ring) {
    case Ring::integer:
      return BigInt(v);
    case Ring::rational:
      return Rational(v);
    case Ring::real:
      return static_cast<double>(v);
    case Ring::complex:
      return std::complex<double>(static_cast<double>(v), 0.0);
  }
  throw PreconditionError("unknown ring");
}

Value operator+(const Value& a, const Value& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x + y; });
}

Value operator-(const Value& a, const Value& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x - y; });
}

Value operator*(const Value& a, const Value& b) {
  return binary(a, b, [](const auto& x, const auto& y) { return x * y; });
}

Value operator-(const Value& a) {
  return std::visit([](const auto& x) -> Value {
    using T = std::decay_t<decltype(x)>;
    return T(-x);
  }, a);
}

Value& operator+=(Value& a, const Value& b) {
  if (a.index() != b.index()) a = a + b;  // throws
  std::visit([&](auto& x) {
    using T = std::decay_t<decltype(x)>;
    x += std::get<T>(b);
  }, a);
  return a;
}

bool is_zero(const Value& v) {
  return std::visit([](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, BigInt> || std::is_same_v<T, Rational>) {
      return sgn(x) == 0;
    } else {
      return x == T(0);
    }
  }, v);
}

bool is_unit(const Value& v) {
  if (const auto* i = std::get_if<BigInt>(&v)) return abs(*i) == 1;
  return !is_zero(v);
}

Value inverse(const Value& v) {
  if (!is_unit(v)) throw NotInvertible("value " + to_string(v) + " is not a unit");
  return std::visit([](const auto& x) -> Value {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, BigInt>) {
      return x;  // +-1 is its own inverse
    } else if constexpr (std::is_same_v<T, Rational>) {
      return Rational(1) / x;
    } else {
      return T(1.0) / x;
    }
  }, v);
}

bool same_value(const Value& a, const Value& b) {
  if (a.index() != b.index()) return false;
  return std::visit([&](const auto& x) {
    using T = std::decay_t<decltype(x)>;
    return x == std::get<T>(b);
  }, a);
}

double to_double(const Value& v) {
  return std::visit([](const auto& x) -> double {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, BigInt> || std::is_same_v<T, Rational>) {
      return x.get_d();
    } else if constexpr (std::is_same_v<T, double>) {
      return x;
    } else {
      return x.real();
    }
  }, v);
}

std::complex<double> to_complex(const Value& v) {
  if (const auto* c = std::get_if<std::complex<double>>(&v)) return *c;
  return {to_double(v), 0.0};
}

std::string to_string(const Value& v) {
  return std::visit([](const auto& x) -> std::string {
    using T = std::decay_t<decltype(x)>;
    if constexpr (std::is_same_v<T, BigInt> || std::is_same_v<T, Rational>) {
      return x.get_str();
    } else if constexpr (std::is_same_v<T, double>) {
      return format_double(x);
    } else {
      return "(" + format_double(x.real()) + "," + format_double(x.imag()) + ")";
    }
  }, v);
}

}  // namespace ramsum
