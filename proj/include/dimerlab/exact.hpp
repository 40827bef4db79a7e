#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace dimerlab {

// Arbitrary-precision integer; counts are nonnegative by construction.
using BigInt = mpz_class;
using BigCount = mpz_class;

// Exact rational, kept canonical (gcd(num,den)=1, den>0) at all times.
using Rational = mpq_class;

inline Rational rational(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational: zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Rational rational_pow(const Rational& base, unsigned long exp) {
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), exp);
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), exp);
  return out;  // canonical because base is
}

// Every finite double is a dyadic rational, so this conversion is exact.
inline Rational rational_from_double(double x) {
  Rational r(x);
  return r;
}

inline double to_double(const Rational& r) { return r.get_d(); }

// "num/den", or just "num" when the denominator is 1.
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline std::string to_string(const BigInt& n) { return n.get_str(); }

}  // namespace dimerlab
