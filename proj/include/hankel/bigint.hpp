#pragma once

// Arbitrary-precision integer and rational aliases plus the small helpers the
// rest of the library shares. Backed by GMP's C++ interface.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hankel {

using Integer = mpz_class;
using Rational = mpq_class;

inline constexpr const char* kVersion = "1.0.0";

// Error vocabulary. Everything derives from std::runtime_error so callers can
// catch broadly at the CLI boundary.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct LengthError : Error {
  std::size_t required;
  LengthError(const std::string& what, std::size_t need)
      : Error(what + " (need prefix length " + std::to_string(need) + ")"), required(need) {}
};
struct ShapeError : Error {
  using Error::Error;
};
struct PreconditionError : Error {
  using Error::Error;
};
struct DomainError : Error {
  using Error::Error;
};
struct DegenerateOrderError : Error {
  std::size_t order;
  DegenerateOrderError(const std::string& what, std::size_t k) : Error(what), order(k) {}
};
struct DependencyError : Error {
  using Error::Error;
};
struct InternalError : Error {
  using Error::Error;
};
struct PrecisionExhausted : Error {
  using Error::Error;
};

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational make_rational(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Integer pow_int(const Integer& base, unsigned long exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Rational pow_rat(const Rational& base, unsigned long exp) {
  Integer n = pow_int(base.get_num(), exp);
  Integer d = pow_int(base.get_den(), exp);
  return make_rational(n, d);
}

inline Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Integer gcd(const Integer& a, const Integer& b) {
  Integer r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline bool is_odd(const Integer& z) { return mpz_odd_p(z.get_mpz_t()) != 0; }

inline Integer parse_integer(const std::string& s) {
  Integer z;
  if (z.set_str(s, 10) != 0) throw DomainError("not a decimal integer: '" + s + "'");
  return z;
}

}  // namespace hankel
