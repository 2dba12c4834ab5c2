#include "t2hilb/factored.hpp"

#include <algorithm>
#include <numeric>

namespace t2hilb {

FactoredRational FactoredRational::zero() {
  FactoredRational f;
  f.num = BivariateLaurent{};
  return f;
}

void FactoredRational::add_factor(std::int64_t p, std::int64_t q, std::int64_t mult) {
  if (p == 0 && q == 0) fail(errc::internal, "denominator factor (1 - 1)");
  if (mult == 0) return;
  auto it = den.find({p, q});
  if (it == den.end()) den[{p, q}] = mult;
  else if ((it->second += mult) == 0) den.erase(it);
}

FactoredRational mul(const FactoredRational& a, const FactoredRational& b) {
  FactoredRational out;
  out.scalar = a.scalar * b.scalar;
  out.num = a.num * b.num;
  out.den = a.den;
  for (const auto& [key, m] : b.den) out.den[key] += m;
  return out;
}

FactoredRational phi_term(const WeightMatrix& A, int i, int j) {
  Int dij = A.minor(i, j);
  if (dij <= 0) fail(errc::bad_pair, "phi_term needs d_ij > 0");
  FactoredRational out;
  out.scalar = make_rat(Int(1), dij * dij);
  for (int k = 0; k < A.cols(); ++k) {
    if (k == i || k == j) continue;
    Int dik = A.minor(i, k), djk = A.minor(j, k);
    auto ival = [](const Int& x) {
      if (!x.fits_slong_p()) fail(errc::internal, "minor exceeds 64-bit exponent range");
      return static_cast<std::int64_t>(x.get_si());
    };
    out.add_factor(ival(dik), ival(dij + djk));
    out.add_factor(-ival(dik), ival(dij - djk));
  }
  return out;
}

FactoredRational normalize(const FactoredRational& F, Axis axis) {
  FactoredRational out;
  out.scalar = F.scalar;
  out.num = F.num;
  for (const auto& [key, m] : F.den) {
    auto [p, q] = key;
    std::int64_t e = axis == Axis::s ? p : q;
    if (e >= 0) {
      out.add_factor(p, q, m);
    } else {
      // (1 - s^p t^q) = -s^p t^q (1 - s^-p t^-q)
      out.add_factor(-p, -q, m);
      out.num.mul_monomial((m % 2 == 0) ? Rat(1) : Rat(-1), -p * m, -q * m);
    }
  }
  return out;
}

std::pair<FactoredRational, FactoredRational> factor_out_axis_free(const FactoredRational& F,
                                                                   Axis axis) {
  FactoredRational free_part, rem;
  rem.scalar = F.scalar;
  rem.num = F.num;
  for (const auto& [key, m] : F.den) {
    std::int64_t e = axis == Axis::s ? key.first : key.second;
    if (e == 0) free_part.add_factor(key.first, key.second, m);
    else rem.add_factor(key.first, key.second, m);
  }
  return {std::move(free_part), std::move(rem)};
}

FactorMultiset u_op_denominator(const FactorMultiset& den, std::int64_t d, Axis axis) {
  FactorMultiset out;
  for (const auto& [key, m] : den) {
    auto [p, q] = key;
    std::int64_t active = axis == Axis::t ? q : p;
    std::int64_t g = std::gcd(d, active);  // gcd(d, 0) = d for the formal q = 0 branch
    FactorKey nk = axis == Axis::t ? FactorKey{p * d / g, q / g} : FactorKey{p / g, q * d / g};
    out[nk] += m * g;
  }
  return out;
}

namespace {

// Dense-in-active-axis series slots; each slot is a Laurent polynomial in
// the passive variable, stored as exponent -> coefficient.
using Slot = std::map<std::int64_t, Rat>;

void slot_add_shifted(Slot& dst, const Slot& src, std::int64_t shift, const Rat& c) {
  for (const auto& [e, v] : src) {
    Rat add = v * c;
    if (add == 0) continue;
    auto [it, inserted] = dst.emplace(e + shift, add);
    if (!inserted) {
      it->second += add;
      if (it->second == 0) dst.erase(it);
    }
  }
}

}  // namespace

BivariateLaurent truncated_series(const FactoredRational& F, Axis axis, std::int64_t max_deg) {
  if (F.is_zero()) return {};
  const Axis passive = other_axis(axis);
  const std::int64_t lo = F.num.min_exp(axis);
  if (lo > max_deg) return {};

  std::vector<Slot> slots(static_cast<size_t>(max_deg - lo + 1));
  for (const auto& [e, c] : F.num.terms()) {
    if (e.on(axis) > max_deg) continue;
    slots[e.on(axis) - lo][e.on(passive)] += c;
  }
  for (const auto& [key, m] : F.den) {
    std::int64_t q = axis == Axis::t ? key.second : key.first;
    std::int64_t p = axis == Axis::t ? key.first : key.second;
    if (q < 1) fail(errc::not_normalized, "series expansion needs positive axis exponents");
    for (std::int64_t rep = 0; rep < m; ++rep)
      for (std::int64_t idx = q; idx < static_cast<std::int64_t>(slots.size()); ++idx)
        slot_add_shifted(slots[idx], slots[idx - q], p, Rat(1));
  }
  BivariateLaurent out;
  for (size_t i = 0; i < slots.size(); ++i)
    for (const auto& [e, c] : slots[i]) {
      std::int64_t active = lo + static_cast<std::int64_t>(i);
      out.add_term(axis == Axis::t ? ExpPair{e, active} : ExpPair{active, e}, c * F.scalar);
    }
  return out;
}

FactoredRational u_op(const FactoredRational& F, std::int64_t d, Axis axis) {
  if (d < 1) fail(errc::internal, "u_op needs d >= 1");
  if (d == 1) return F;
  if (F.is_zero()) return FactoredRational::zero();

  std::int64_t den_deg = 0;
  for (const auto& [key, m] : F.den) {
    std::int64_t q = axis == Axis::t ? key.second : key.first;
    if (q < 0) fail(errc::not_normalized, "u_op needs the denominator normalized on the axis");
    if (q == 0) fail(errc::not_normalized, "u_op: split axis-free factors off first");
    den_deg += q * m;
  }

  const Axis passive = other_axis(axis);
  const std::int64_t delta = F.num.max_exp(axis) - den_deg;
  FactorMultiset den_out = u_op_denominator(F.den, d, axis);
  const std::int64_t bound = floor_div(delta, d) + den_deg;  // deg Q_d = deg Q
  const std::int64_t lo = F.num.min_exp(axis);
  const std::int64_t lo_out = ceil_div(lo, d);

  FactoredRational out;
  out.scalar = F.scalar;
  out.den = std::move(den_out);
  out.num = BivariateLaurent{};
  if (bound < lo_out || bound * d < lo) return out;  // sectioned window is empty

  // expand to degree d * bound, keep every d-th slot
  FactoredRational plain = F;
  plain.scalar = 1;
  BivariateLaurent series = truncated_series(plain, axis, bound * d);

  // slots indexed by the sectioned active exponent
  std::vector<Slot> slots(static_cast<size_t>(bound - lo_out + 1));
  for (const auto& [e, c] : series.terms()) {
    std::int64_t active = e.on(axis);
    if (active % d != 0) continue;
    slots[active / d - lo_out][e.on(passive)] += c;
  }

  // numerator = sectioned series times the transformed denominator; the
  // transformed factors have strictly positive active exponent, so the
  // degree cut at the bound can be applied after every factor.
  for (const auto& [key, m] : out.den) {
    const std::int64_t q = axis == Axis::t ? key.second : key.first;
    const std::int64_t p = axis == Axis::t ? key.first : key.second;
    for (std::int64_t rep = 0; rep < m; ++rep)
      for (std::int64_t idx = static_cast<std::int64_t>(slots.size()) - 1; idx >= 0; --idx)
        if (idx - q >= 0) slot_add_shifted(slots[idx], slots[idx - q], p, Rat(-1));
  }
  BivariateLaurent num_out;
  for (size_t i = 0; i < slots.size(); ++i)
    for (const auto& [e, c] : slots[i]) {
      std::int64_t active = lo_out + static_cast<std::int64_t>(i);
      num_out.add_term(axis == Axis::t ? ExpPair{e, active} : ExpPair{active, e}, c);
    }
  out.num = std::move(num_out);
  return out;
}

FactoredRational normalize_for_diagonal(const FactoredRational& F) {
  FactoredRational out;
  out.scalar = F.scalar;
  out.num = F.num;
  FactorMultiset null_factors;
  for (const auto& [key, m] : F.den) {
    auto [p, q] = key;
    if (p + q > 0) {
      out.add_factor(p, q, m);
    } else if (p + q < 0) {
      out.add_factor(-p, -q, m);
      out.num.mul_monomial((m % 2 == 0) ? Rat(1) : Rat(-1), -p * m, -q * m);
    } else {
      null_factors[key] += m;
    }
  }
  // Factors with p + q = 0 vanish identically at s = t and must divide the
  // numerator exactly.
  for (const auto& [key, m] : null_factors)
    for (std::int64_t rep = 0; rep < m; ++rep)
      out.num = out.num.divide_binomial(key.first, key.second);
  return out;
}

UnivariateRational substitute_diagonal(const FactoredRational& F) {
  UnivariateRational out;
  if (F.is_zero()) return out;
  for (const auto& [key, m] : F.den) {
    std::int64_t e = key.first + key.second;
    if (e <= 0) fail(errc::needs_reassembly, "factor with p + q <= 0; renormalize first");
    out.den[e] += m;
  }
  for (const auto& [e, c] : F.num.terms()) out.add_num_term(e.s + e.t, c * F.scalar);
  if (out.num.empty()) out.den.clear();
  return out;
}

}  // namespace t2hilb
