#include "t2hilb/bivariate.hpp"

#include <algorithm>
#include <sstream>

namespace t2hilb {

BivariateLaurent BivariateLaurent::monomial(const Rat& c, std::int64_t es, std::int64_t et) {
  BivariateLaurent p;
  if (c != 0) p.terms_[{es, et}] = c;
  return p;
}

void BivariateLaurent::add_term(ExpPair e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

BivariateLaurent& BivariateLaurent::operator+=(const BivariateLaurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

BivariateLaurent& BivariateLaurent::operator-=(const BivariateLaurent& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

BivariateLaurent BivariateLaurent::operator*(const BivariateLaurent& o) const {
  BivariateLaurent out;
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) out.add_term({e1.s + e2.s, e1.t + e2.t}, c1 * c2);
  return out;
}

void BivariateLaurent::mul_monomial(const Rat& c, std::int64_t es, std::int64_t et) {
  Map shifted;
  for (auto& [e, v] : terms_) {
    Rat nv = v * c;
    if (nv != 0) shifted.emplace_hint(shifted.end(), ExpPair{e.s + es, e.t + et}, std::move(nv));
  }
  terms_ = std::move(shifted);
}

void BivariateLaurent::mul_scalar(const Rat& c) { mul_monomial(c, 0, 0); }

std::int64_t BivariateLaurent::min_exp(Axis a) const {
  if (terms_.empty()) fail(errc::internal, "min_exp of zero polynomial");
  std::int64_t m = terms_.begin()->first.on(a);
  for (const auto& [e, c] : terms_) m = std::min(m, e.on(a));
  return m;
}

std::int64_t BivariateLaurent::max_exp(Axis a) const {
  if (terms_.empty()) fail(errc::internal, "max_exp of zero polynomial");
  std::int64_t m = terms_.begin()->first.on(a);
  for (const auto& [e, c] : terms_) m = std::max(m, e.on(a));
  return m;
}

Rat BivariateLaurent::coeff(std::int64_t es, std::int64_t et) const {
  auto it = terms_.find({es, et});
  return it == terms_.end() ? Rat(0) : it->second;
}

BivariateLaurent BivariateLaurent::divide_binomial(std::int64_t a, std::int64_t b) const {
  if (a == 0 && b == 0) fail(errc::internal, "division by the zero binomial");
  if (is_zero()) return {};

  // Work along the axis on which the monomial s^a t^b actually moves, so the
  // leading term of the quotient can be read off the remainder directly.
  const Axis ax = a != 0 ? Axis::s : Axis::t;
  const std::int64_t step = ax == Axis::s ? a : b;
  const std::int64_t lo = min_exp(ax), hi = max_exp(ax);

  BivariateLaurent quotient, rem = *this;
  while (!rem.is_zero()) {
    // extremal term not reachable by further shifts
    ExpPair e = step > 0 ? rem.terms_.begin()->first : rem.terms_.rbegin()->first;
    if (ax == Axis::s) {
      // map order is lexicographic in (s, t), so begin/rbegin are s-extremal
    } else {
      std::int64_t best = step > 0 ? rem.min_exp(Axis::t) : rem.max_exp(Axis::t);
      for (const auto& [ee, cc] : rem.terms_)
        if (ee.t == best) {
          e = ee;
          break;
        }
    }
    std::int64_t pos = e.on(ax);
    if (pos < lo || pos > hi || (step > 0 ? pos > hi - step : pos < lo - step))
      fail(errc::internal, "binomial division is not exact");
    Rat c = rem.terms_.at(e);
    quotient.add_term(e, c);
    rem.add_term(e, -c);
    rem.add_term({e.s + a, e.t + b}, c);
  }
  return quotient;
}

std::string BivariateLaurent::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    if (!first) out << " + ";
    first = false;
    out << "(" << c.get_str() << ")";
    if (e.s != 0) out << "*s^" << e.s;
    if (e.t != 0) out << "*t^" << e.t;
  }
  return out.str();
}

}  // namespace t2hilb
