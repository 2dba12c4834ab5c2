#include "t2hilb/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace t2hilb {

namespace {

struct WeightItem {
  std::int64_t w1, w2;
};

std::vector<WeightItem> cotangent_items(const WeightMatrix& A) {
  std::vector<WeightItem> items;
  for (int sign : {1, -1})
    for (int c = 0; c < A.cols(); ++c) {
      const Int w1 = sign * A.a(0, c), w2 = sign * A.a(1, c);
      if (!w1.fits_slong_p() || !w2.fits_slong_p())
        fail(errc::internal, "weight exceeds the oracle's 64-bit range");
      items.push_back({w1.get_si(), w2.get_si()});
    }
  return items;
}

// table[deg][weight] = number of monomials in the items processed so far;
// processing an item in place realizes unbounded multiplicity. One pass
// yields every degree up to D.
std::vector<Int> dims_up_to(const WeightMatrix& A, int D) {
  const auto items = cotangent_items(A);
  std::int64_t max1 = 0, max2 = 0;
  for (const auto& it : items) {
    max1 = std::max(max1, std::abs(it.w1));
    max2 = std::max(max2, std::abs(it.w2));
  }
  const std::int64_t b1 = std::max<std::int64_t>(max1 * D, 1);
  const std::int64_t b2 = std::max<std::int64_t>(max2 * D, 1);
  const std::int64_t n2 = 2 * b2 + 1;
  const size_t box = static_cast<size_t>(2 * b1 + 1) * n2;
  auto idx = [&](std::int64_t w1, std::int64_t w2) {
    return static_cast<size_t>(w1 + b1) * n2 + static_cast<size_t>(w2 + b2);
  };

  std::vector<std::vector<Int>> table(D + 1, std::vector<Int>(box));
  table[0][idx(0, 0)] = 1;
  for (const auto& it : items)
    for (int deg = 1; deg <= D; ++deg) {
      std::vector<Int>& cur = table[deg];
      const std::vector<Int>& prev = table[deg - 1];
      for (std::int64_t w1 = -b1; w1 <= b1; ++w1) {
        const std::int64_t p1 = w1 - it.w1;
        if (p1 < -b1 || p1 > b1) continue;
        for (std::int64_t w2 = -b2; w2 <= b2; ++w2) {
          const std::int64_t p2 = w2 - it.w2;
          if (p2 < -b2 || p2 > b2) continue;
          const Int& src = prev[idx(p1, p2)];
          if (src != 0) cur[idx(w1, w2)] += src;
        }
      }
    }

  std::vector<Int> dims(D + 1);
  for (int d = 0; d <= D; ++d) dims[d] = table[d][idx(0, 0)];
  return dims;
}

}  // namespace

Int invariant_dimension(const WeightMatrix& A, int d) { return dims_up_to(A, d)[d]; }

Int invariant_dimension_naive(const WeightMatrix& A, int d) {
  const auto items = cotangent_items(A);
  Int count = 0;
  // multiplicity vectors over the 2n items with total degree d
  std::vector<int> mult(items.size(), 0);
  auto rec = [&](auto&& self, size_t pos, int remaining) -> void {
    if (pos + 1 == items.size()) {
      mult[pos] = remaining;
      std::int64_t w1 = 0, w2 = 0;
      for (size_t i = 0; i < items.size(); ++i) {
        w1 += mult[i] * items[i].w1;
        w2 += mult[i] * items[i].w2;
      }
      if (w1 == 0 && w2 == 0) ++count;
      return;
    }
    for (int m = 0; m <= remaining; ++m) {
      mult[pos] = m;
      self(self, pos + 1, remaining - m);
    }
  };
  rec(rec, 0, d);
  return count;
}

OracleSeries oracle_series(const WeightMatrix& A, int D) {
  OracleSeries out;
  out.degree_bound = D;
  out.off = dims_up_to(A, D);
  out.on.resize(D + 1);
  for (int d = 0; d <= D; ++d) {
    Int v = out.off[d];
    if (d >= 2) v -= 2 * out.off[d - 2];
    if (d >= 4) v += out.off[d - 4];
    out.on[d] = v;
  }
  return out;
}

namespace {

using Real = long double;

// One evaluation of the summation formula at perturbed weights.
Real formula_value(const std::vector<std::vector<Real>>& x, GammaKind kind) {
  const int n = static_cast<int>(x[0].size());
  auto c = [&](int p, int q) { return x[0][p] * x[1][q] - x[1][p] * x[0][q]; };
  const int expo = kind == GammaKind::gamma0 ? 2 * n - 5 : 2 * n - 7;
  Real total = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Real cij = c(i, j);
      if (cij <= 0) continue;
      Real denom = 1;
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        denom *= (cij - c(i, k) - c(j, k)) * (cij + c(i, k) + c(j, k));
      }
      Real numer = std::pow(cij, expo);
      if (kind == GammaKind::gamma2_first_sum) {
        Real sq = 0;
        for (int p = 0; p < n; ++p) {
          if (p == i || p == j) continue;
          Real s = c(i, p) + c(j, p);
          sq += s * s;
        }
        numer *= -sq / 12;
      }
      total += numer / denom;
    }
  return total;
}

}  // namespace

PerturbationEstimate perturbation_gamma(const WeightMatrix& A, GammaKind kind, double eps,
                                        int trials, std::uint64_t seed) {
  const int n = A.cols();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  double lo = 0, hi = 0, sum = 0;
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<std::vector<double>> r(2, std::vector<double>(n));
    for (auto& row : r)
      for (double& v : row) v = unit(rng);

    auto eval = [&](double e) {
      std::vector<std::vector<Real>> x(2, std::vector<Real>(n));
      for (int rr = 0; rr < 2; ++rr)
        for (int cc = 0; cc < n; ++cc)
          x[rr][cc] = static_cast<Real>(A.a(rr, cc).get_d()) * (1.0L + e * r[rr][cc]);
      return formula_value(x, kind);
    };

    // eliminate the O(eps) and O(eps^2) error terms
    Real f1 = eval(eps), f2 = eval(eps / 2), f3 = eval(eps / 4);
    Real r1 = 2 * f2 - f1, r2 = 2 * f3 - f2;
    double val = static_cast<double>((4 * r2 - r1) / 3);

    sum += val;
    if (trial == 0) lo = hi = val;
    lo = std::min(lo, val);
    hi = std::max(hi, val);
  }
  return {trials > 0 ? sum / trials : 0.0, hi - lo};
}

}  // namespace t2hilb
