#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "t2hilb/errors.hpp"

namespace t2hilb {

// All exact arithmetic is done with GMP. Int/Rat are the only numeric types
// used outside the floating-point oracle.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat make_rat(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

// "p" for integers, "p/q" otherwise.
inline std::string rat_str(const Rat& q) { return q.get_str(); }

inline Rat parse_rat(const std::string& s) {
  try {
    Rat q(s);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    fail(errc::parse_error, "bad rational literal '" + s + "'");
  }
}

inline Int int_pow(Int base, std::int64_t e) {
  if (e < 0) fail(errc::internal, "int_pow with negative exponent");
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(e));
  return r;
}

inline Rat rat_pow(const Rat& base, std::int64_t e) {
  if (e >= 0) return Rat(int_pow(base.get_num(), e), int_pow(base.get_den(), e));
  if (base == 0) fail(errc::internal, "rat_pow: 0 to a negative power");
  Rat q(int_pow(base.get_den(), -e), int_pow(base.get_num(), -e));
  q.canonicalize();
  return q;
}

inline Int binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// Arithmetic floor division (gmp's fdiv), used for the sectioning degree bounds.
inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

}  // namespace t2hilb
