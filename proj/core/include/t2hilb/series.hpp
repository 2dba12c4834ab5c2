#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "t2hilb/rational.hpp"

namespace t2hilb {

// Dense univariate polynomial over Q, index = exponent.
class Poly {
public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs);
  static Poly constant(const Rat& c);
  static Poly monomial(const Rat& c, int e);
  static Poly one_minus_t_pow(std::int64_t e);  // 1 - t^e

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int e) const;
  int valuation() const;  // lowest nonzero exponent; -1 for zero

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly& operator*=(const Poly& o);
  void mul_scalar(const Rat& c);

  // Division with remainder; exact division fails on nonzero remainder.
  std::pair<Poly, Poly> divmod(const Poly& d) const;
  Poly divide_exact(const Poly& d) const;
  bool divisible_by(const Poly& d) const;

  Rat eval(const Rat& x) const;
  bool integral() const;  // all coefficients integers

  // Primitive gcd over Q[t] (computed by a primitive PRS over Z, result
  // normalized with integer coprime coefficients and positive lead).
  static Poly gcd(const Poly& a, const Poly& b);

  bool operator==(const Poly& o) const = default;
  std::string str(const std::string& var = "t") const;

private:
  void trim();
  std::vector<Rat> c_;
};

// Unreduced num / prod (1 - t^e)^mult with a Laurent numerator.
struct UnivariateRational {
  std::map<std::int64_t, Rat> num;       // exponent -> coefficient
  std::map<std::int64_t, std::int64_t> den;  // e -> multiplicity of (1 - t^e)

  static UnivariateRational zero() { return {}; }
  bool is_zero() const { return num.empty(); }
  void add_num_term(std::int64_t e, const Rat& c);
};

UnivariateRational add(const UnivariateRational& a, const UnivariateRational& b);

// Canonical form N(t) / prod (1 - t^e)^mult: numerator and denominator
// coprime, numerator with integer coefficients, denominator factors found by
// greedy trial division with e descending.
class HilbertSeries {
public:
  HilbertSeries() = default;
  HilbertSeries(Poly numerator, std::map<std::int64_t, std::int64_t> denominator);

  const Poly& numerator() const { return num_; }
  const std::map<std::int64_t, std::int64_t>& denominator() const { return den_; }

  // Taylor coefficients of the power series, degrees 0..D.
  std::vector<Rat> power_series(int D) const;

  bool numerator_palindromic() const;

  bool operator==(const HilbertSeries& o) const = default;
  std::string str() const;

private:
  Poly num_;
  std::map<std::int64_t, std::int64_t> den_;
};

HilbertSeries canonicalize(const UnivariateRational& R);

// Divide by (1 - t^e)^mult and re-canonicalize (exact as power series).
HilbertSeries divide_canonical(const HilbertSeries& H, std::int64_t e, std::int64_t mult);

struct LaurentExpansion {
  std::int64_t pole_order = 0;      // order of the pole at t = 1 (>= 0)
  std::vector<Rat> coefficients;    // gamma_0 ... gamma_M
};

// Exact Laurent expansion at t = 1 in powers of (1 - t), coefficients
// gamma_0..gamma_M of (1-t)^{m - pole_order}.
LaurentExpansion laurent_at_one(const HilbertSeries& H, int M);
LaurentExpansion laurent_at_one(const UnivariateRational& R, int M);

}  // namespace t2hilb
