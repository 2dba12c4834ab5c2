#include "t2hilb/upoly.hpp"

#include <algorithm>
#include <sstream>

namespace t2hilb {

UPoly UPoly::constant(int nvars, const Rat& c) {
  UPoly p(nvars);
  if (c != 0) p.terms_[Exps(nvars, 0)] = c;
  return p;
}

UPoly UPoly::monomial(int nvars, Exps e, const Rat& c) {
  UPoly p(nvars);
  if (c != 0) p.terms_[std::move(e)] = c;
  return p;
}

void UPoly::add_term(const Exps& e, const Rat& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

UPoly UPoly::operator+(const UPoly& o) const {
  UPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

UPoly UPoly::operator-(const UPoly& o) const {
  UPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

UPoly& UPoly::operator+=(const UPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

UPoly UPoly::operator*(const UPoly& o) const {
  UPoly out(nvars_);
  Exps e(nvars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      for (int v = 0; v < nvars_; ++v) e[v] = e1[v] + e2[v];
      out.add_term(e, c1 * c2);
    }
  return out;
}

void UPoly::negate() {
  for (auto& [e, c] : terms_) c = -c;
}

void UPoly::mul_scalar(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return;
  }
  for (auto& [e, v] : terms_) v *= c;
}

UPoly UPoly::pow(std::int64_t e) const {
  if (e < 0) fail(errc::internal, "UPoly::pow negative exponent");
  UPoly acc = constant(nvars_, 1);
  for (std::int64_t i = 0; i < e; ++i) acc = acc * *this;
  return acc;
}

Rat UPoly::eval_at_ones() const {
  Rat sum = 0;
  for (const auto& [e, c] : terms_) sum += c;
  return sum;
}

const Rat& UPoly::leading_coeff() const {
  if (terms_.empty()) fail(errc::internal, "leading_coeff of zero polynomial");
  return terms_.rbegin()->second;  // lex-largest exponent vector
}

UPoly UPoly::divide_exact(const UPoly& divisor) const {
  if (divisor.is_zero()) fail(errc::internal, "UPoly division by zero");
  UPoly quotient(nvars_), rem = *this;
  const auto& dlt = *divisor.terms_.rbegin();
  Exps qe(nvars_);
  while (!rem.is_zero()) {
    const auto& rlt = *rem.terms_.rbegin();
    bool ok = true;
    for (int v = 0; v < nvars_; ++v) {
      qe[v] = rlt.first[v] - dlt.first[v];
      if (qe[v] < 0) ok = false;
    }
    if (!ok) fail(errc::internal, "UPoly division is not exact");
    Rat qc = rlt.second / dlt.second;
    quotient.add_term(qe, qc);
    UPoly t = UPoly::monomial(nvars_, qe, -qc) * divisor;
    rem += t;
  }
  return quotient;
}

bool UPoly::operator<(const UPoly& o) const {
  if (nvars_ != o.nvars_) return nvars_ < o.nvars_;
  return terms_ < o.terms_;
}

std::string UPoly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    out << it->second.get_str();
    for (int v = 0; v < nvars_; ++v)
      if (it->first[v] != 0) {
        out << "*u" << (v + 1);
        if (it->first[v] != 1) out << "^" << it->first[v];
      }
  }
  return out.str();
}

void UPolyFraction::add_den_factor(UPoly f, std::int64_t mult) {
  if (f.is_zero()) fail(errc::internal, "zero denominator factor");
  if (mult == 0) return;
  if (f.leading_negative()) {
    f.negate();
    if (mult % 2 == 1) scalar = -scalar;
  }
  den[std::move(f)] += mult;
}

UPolyFraction add(const UPolyFraction& a, const UPolyFraction& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  UPolyFraction out;
  out.scalar = 1;
  out.den = a.den;
  for (const auto& [f, m] : b.den) {
    auto it = out.den.find(f);
    if (it == out.den.end()) out.den[f] = m;
    else it->second = std::max(it->second, m);
  }
  auto scaled_num = [&out](const UPolyFraction& r) {
    UPoly acc = r.num;
    acc.mul_scalar(r.scalar);
    for (const auto& [f, m] : out.den) {
      auto it = r.den.find(f);
      std::int64_t missing = m - (it == r.den.end() ? 0 : it->second);
      for (std::int64_t rep = 0; rep < missing; ++rep) acc = acc * f;
    }
    return acc;
  };
  out.num = scaled_num(a) + scaled_num(b);
  return out;
}

Rat evaluate_at_ones_after_cancellation(const UPolyFraction& F) {
  if (F.is_zero()) return 0;
  UPoly num = F.num;
  Rat value = F.scalar;
  for (const auto& [f, m] : F.den) {
    Rat at1 = f.eval_at_ones();
    if (at1 == 0) {
      for (std::int64_t rep = 0; rep < m; ++rep) num = num.divide_exact(f);
    } else {
      value /= rat_pow(at1, m);
    }
  }
  return value * num.eval_at_ones();
}

}  // namespace t2hilb
