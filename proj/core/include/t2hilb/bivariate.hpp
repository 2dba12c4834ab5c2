#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "t2hilb/rational.hpp"

namespace t2hilb {

enum class Axis { s, t };
inline Axis other_axis(Axis a) { return a == Axis::s ? Axis::t : Axis::s; }

struct ExpPair {
  std::int64_t s = 0, t = 0;
  auto operator<=>(const ExpPair&) const = default;
  std::int64_t on(Axis a) const { return a == Axis::s ? s : t; }
};

// Sparse exact element of Q[s, s^-1, t, t^-1]. No zero coefficients are stored.
class BivariateLaurent {
public:
  using Map = std::map<ExpPair, Rat>;

  BivariateLaurent() = default;
  static BivariateLaurent one() { return monomial(Rat(1), 0, 0); }
  static BivariateLaurent monomial(const Rat& c, std::int64_t es, std::int64_t et);

  bool is_zero() const { return terms_.empty(); }
  size_t term_count() const { return terms_.size(); }
  const Map& terms() const { return terms_; }

  void add_term(ExpPair e, const Rat& c);
  BivariateLaurent& operator+=(const BivariateLaurent& o);
  BivariateLaurent& operator-=(const BivariateLaurent& o);
  BivariateLaurent operator*(const BivariateLaurent& o) const;
  void mul_monomial(const Rat& c, std::int64_t es, std::int64_t et);
  void mul_scalar(const Rat& c);

  // Extremes of the stored exponents along one axis; requires nonzero.
  std::int64_t min_exp(Axis a) const;
  std::int64_t max_exp(Axis a) const;

  Rat coeff(std::int64_t es, std::int64_t et) const;

  // Exact division by (1 - s^a t^b) with (a, b) != (0, 0); fails with
  // errc::internal if the division is not exact.
  BivariateLaurent divide_binomial(std::int64_t a, std::int64_t b) const;

  bool operator==(const BivariateLaurent& o) const = default;

  std::string str() const;

private:
  Map terms_;
};

}  // namespace t2hilb
