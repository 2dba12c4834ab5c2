#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "t2hilb/rational.hpp"

namespace t2hilb {

// Sparse multivariate polynomial in u_1..u_n over Q. Keys are exponent
// vectors of fixed length; map order doubles as the lex monomial order used
// by the exact division.
class UPoly {
public:
  using Exps = std::vector<std::int32_t>;
  using Map = std::map<Exps, Rat>;

  UPoly() = default;
  explicit UPoly(int nvars) : nvars_(nvars) {}
  static UPoly constant(int nvars, const Rat& c);
  static UPoly monomial(int nvars, Exps e, const Rat& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const Map& terms() const { return terms_; }

  void add_term(const Exps& e, const Rat& c);
  UPoly operator+(const UPoly& o) const;
  UPoly operator-(const UPoly& o) const;
  UPoly operator*(const UPoly& o) const;
  UPoly& operator+=(const UPoly& o);
  void negate();
  void mul_scalar(const Rat& c);
  UPoly pow(std::int64_t e) const;

  Rat eval_at_ones() const;

  // Lex-leading coefficient; sign-canonical form has it positive.
  const Rat& leading_coeff() const;
  bool leading_negative() const { return leading_coeff() < 0; }

  // Exact division (lex order); fails with errc::internal when not exact.
  UPoly divide_exact(const UPoly& divisor) const;

  bool operator==(const UPoly& o) const = default;
  bool operator<(const UPoly& o) const;  // arbitrary total order, for map keys

  std::string str() const;

private:
  int nvars_ = 0;
  Map terms_;
};

// scalar * num / prod factor^mult with sign-canonical factors.
struct UPolyFraction {
  Rat scalar = 1;
  UPoly num;
  std::map<UPoly, std::int64_t> den;

  bool is_zero() const { return scalar == 0 || num.is_zero(); }
  void add_den_factor(UPoly f, std::int64_t mult = 1);
};

UPolyFraction add(const UPolyFraction& a, const UPolyFraction& b);

// Cancels every denominator factor vanishing at u = 1 against the numerator
// (exact division, asserted), then evaluates at u = 1.
Rat evaluate_at_ones_after_cancellation(const UPolyFraction& F);

}  // namespace t2hilb
