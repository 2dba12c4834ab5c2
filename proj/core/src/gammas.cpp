#include "t2hilb/gammas.hpp"

#include <algorithm>

namespace t2hilb {

const char* kappa_variant_name(KappaVariant v) {
  return v == KappaVariant::theorem ? "theorem" : "proof";
}

Rat kappa(KappaVariant v, const Int& g) {
  if (v == KappaVariant::theorem) return make_rat(g - 1, Int(12));
  return make_rat(g * g - 1, Int(12));
}

namespace {

void check_preconditions(const WeightMatrix& A) {
  if (!faithfulness(A).faithful) fail(errc::not_faithful, "gamma formulas need a faithful matrix");
  for (int i = 0; i < A.cols(); ++i)
    if (A.a(0, i) <= 0) fail(errc::not_standard_form, "gamma formulas need standard form");
  if (A.cols() <= 2) fail(errc::too_few_columns, "gamma formulas need n > 2");
}

// Minor of the column-scaled matrix A(u): D_pq = d_pq u_p u_q.
UPoly D_poly(int nvars, int p, int q, const Int& dpq) {
  UPoly::Exps e(nvars, 0);
  e[p] += 1;
  e[q] += 1;
  return UPoly::monomial(nvars, std::move(e), Rat(dpq));
}

// One denominator pair (c_ij - c_ik - c_jk)(c_ij + c_ik + c_jk) as integers.
struct FactorPairInt {
  Int minus_val, plus_val;
};

// Shared term walker: gamma_0 uses exponent 2m-5 and numerator 1; the first
// sum of gamma_2 uses exponent 2m-7, numerator -sum_p (c_ip + c_jp)^2 and a
// global 1/12.
enum class TermKind { gamma0, gamma2_first };

struct DualPathSum {
  Rat regular = 0;
  UPolyFraction singular_group;
  bool has_singular = false;
  GammaLedger* ledger = nullptr;

  void add_regular(int i, int j, const Rat& v) {
    regular += v;
    if (ledger) ledger->terms.push_back({i, j, false, v, {}});
  }
  void add_singular(int i, int j, UPolyFraction f) {
    if (ledger) {
      std::string s = "(" + f.num.str() + ")";
      for (const auto& [fac, m] : f.den) {
        s += " / (" + fac.str() + ")";
        if (m > 1) s += "^" + std::to_string(m);
      }
      if (f.scalar != 1) s = f.scalar.get_str() + " * " + s;
      ledger->terms.push_back({i, j, true, std::nullopt, std::move(s)});
    }
    singular_group = has_singular ? add(singular_group, std::move(f)) : std::move(f);
    has_singular = true;
  }
  Rat finish() {
    Rat total = regular;
    if (has_singular) {
      Rat gv = evaluate_at_ones_after_cancellation(singular_group);
      if (ledger) ledger->singular_group_value = gv;
      total += gv;
    }
    return total;
  }
};

Rat sum_over_pairs(const WeightMatrix& A, const std::vector<int>& cols, TermKind kind,
                   GammaLedger* ledger, bool force_symbolic) {
  const int n = A.cols();
  const int m = static_cast<int>(cols.size());
  const std::int64_t expo = kind == TermKind::gamma0 ? 2 * m - 5 : 2 * m - 7;
  MinorTable mt(A);
  DualPathSum acc;
  acc.ledger = ledger;

  for (int ii = 0; ii < m; ++ii)
    for (int jj = 0; jj < m; ++jj) {
      const int i = cols[ii], j = cols[jj];
      if (i == j) continue;
      const Int dij = mt.d(i, j);
      if (dij <= 0) continue;

      bool singular = false;
      Rat denom_int = 1;
      for (int kk = 0; kk < m; ++kk) {
        const int k = cols[kk];
        if (k == i || k == j) continue;
        Int f_minus = dij - mt.d(i, k) - mt.d(j, k);
        Int f_plus = dij + mt.d(i, k) + mt.d(j, k);
        if (f_minus == 0 || f_plus == 0) {
          singular = true;
          break;
        }
        denom_int *= Rat(f_minus * f_plus);
      }

      if (!singular && !force_symbolic) {
        Rat v = rat_pow(Rat(dij), expo) / denom_int;
        if (kind == TermKind::gamma2_first) {
          Rat sq_sum = 0;
          for (int pp = 0; pp < m; ++pp) {
            const int p = cols[pp];
            if (p == i || p == j) continue;
            Rat s(mt.d(i, p) + mt.d(j, p));
            sq_sum += s * s;
          }
          v *= -sq_sum / 12;
        }
        acc.add_regular(i, j, v);
        continue;
      }

      // u-substitution path: c_pq -> d_pq u_p u_q
      UPolyFraction f;
      f.scalar = 1;
      f.num = UPoly::constant(n, 1);
      UPoly Dij = D_poly(n, i, j, dij);
      if (expo >= 0) {
        f.num = Dij.pow(expo);
      } else {
        f.add_den_factor(Dij, -expo);  // D_ij(1,..,1) = d_ij > 0, never vanishing
      }
      if (kind == TermKind::gamma2_first) {
        UPoly sq_sum(n);
        for (int pp = 0; pp < m; ++pp) {
          const int p = cols[pp];
          if (p == i || p == j) continue;
          UPoly s = D_poly(n, i, p, mt.d(i, p)) + D_poly(n, j, p, mt.d(j, p));
          sq_sum += s * s;
        }
        sq_sum.negate();
        f.num = f.num * sq_sum;
        f.scalar /= 12;
      }
      for (int kk = 0; kk < m; ++kk) {
        const int k = cols[kk];
        if (k == i || k == j) continue;
        UPoly Dik = D_poly(n, i, k, mt.d(i, k));
        UPoly Djk = D_poly(n, j, k, mt.d(j, k));
        f.add_den_factor(Dij - Dik - Djk);
        f.add_den_factor(Dij + Dik + Djk);
      }
      acc.add_singular(i, j, std::move(f));
    }

  return acc.finish();
}

std::vector<int> all_columns(const WeightMatrix& A) {
  std::vector<int> cols(A.cols());
  for (int i = 0; i < A.cols(); ++i) cols[i] = i;
  return cols;
}

}  // namespace

Rat gamma0_formula(const WeightMatrix& A, const std::vector<int>& columns, GammaLedger* ledger) {
  return sum_over_pairs(A, columns, TermKind::gamma0, ledger, false);
}

Rat gamma0_all_symbolic(const WeightMatrix& A) {
  return sum_over_pairs(A, all_columns(A), TermKind::gamma0, nullptr, true);
}

Gamma0Result gamma0(const WeightMatrix& A) {
  check_preconditions(A);
  Gamma0Result out;
  out.value = gamma0_formula(A, all_columns(A), &out.ledger);
  return out;
}

Gamma2Result gamma2(const WeightMatrix& A, KappaVariant variant) {
  check_preconditions(A);
  const int n = A.cols();
  Gamma2Result out;
  out.variant = variant;
  out.first_sum = sum_over_pairs(A, all_columns(A), TermKind::gamma2_first, &out.ledger, false);

  out.second_sum = 0;
  for (int p = 0; p < n; ++p) {
    std::vector<int> cols;
    for (int c = 0; c < n; ++c)
      if (c != p) cols.push_back(c);
    Int g_p = 0;
    for (size_t a = 0; a < cols.size(); ++a)
      for (size_t b = a + 1; b < cols.size(); ++b) g_p = gcd(g_p, A.minor(cols[a], cols[b]));
    Rat g0_Ap = gamma0_formula(A, cols);
    out.ledger.removed_columns.push_back({p, g_p, g0_Ap});
    if (g_p > 1) out.second_sum += kappa(variant, g_p) * g0_Ap;
  }

  out.value = out.first_sum + out.second_sum;
  out.gamma3 = out.value;
  return out;
}

GammaOffResult gamma_off(const WeightMatrix& A, KappaVariant variant) {
  Rat g0 = gamma0(A).value;
  Rat g2 = gamma2(A, variant).value;
  GammaOffResult out;
  out.g0 = g0 / 4;
  out.g1 = out.g0;
  out.g2 = (3 * g0 + 4 * g2) / 16;
  out.g3 = (g0 + 4 * g2) / 8;
  return out;
}

}  // namespace t2hilb
