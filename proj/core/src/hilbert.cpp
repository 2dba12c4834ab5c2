#include "t2hilb/hilbert.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace t2hilb {

PipelineMatrix generic_representative(const WeightMatrix& A, const HilbertOptions& opt) {
  if (!faithfulness(A).faithful) fail(errc::not_faithful, "hilbert pipeline needs a faithful matrix");
  if (A.cols() <= 2) fail(errc::too_few_columns, "hilbert pipeline needs n > 2");

  StandardFormResult std_form = to_standard_form(A);
  Classification cls = classify(std_form.matrix);
  if (cls.kind == MatrixClass::generic || cls.kind == MatrixClass::completely_generic)
    return {std::move(std_form.matrix), std::move(std_form.log)};

  GenericizeResult gen = try_genericize(std_form.matrix, opt.genericize_bound);
  if (!gen.matrix)
    fail(errc::not_genericizable,
         gen.provably_impossible ? "no generic equivalent exists (collinearity obstruction)"
                                 : "no generic equivalent found within the search bound");
  BasisChangeLog log = std::move(std_form.log);
  for (BasisMove& m : gen.log.moves) log.moves.push_back(std::move(m));
  return {std::move(*gen.matrix), std::move(log)};
}

UnivariateRational hilbert_term(const WeightMatrix& G, int i, int j) {
  const Int dij_z = G.minor(i, j);
  if (!dij_z.fits_slong_p()) fail(errc::internal, "minor exceeds 64-bit range");
  const std::int64_t d = dij_z.get_si();

  FactoredRational F = phi_term(G, i, j);
  // The two sectioning passes each absorb a 1/d averaging factor, while the
  // closed form counts every root-of-unity pair once; the seed's 1/d^2
  // normalization is compensated here so the term equals the residue sum.
  F.scalar *= Rat(dij_z * dij_z);

  F = normalize(F, Axis::t);
  auto [t_free, t_rem] = factor_out_axis_free(F, Axis::t);
  t_rem = u_op(t_rem, d, Axis::t);
  F = mul(t_free, t_rem);

  F = normalize(F, Axis::s);
  auto [s_free, s_rem] = factor_out_axis_free(F, Axis::s);
  s_rem = u_op(s_rem, d, Axis::s);
  F = mul(s_free, s_rem);

  F = normalize_for_diagonal(F);
  return substitute_diagonal(F);
}

namespace {

struct CharFactor {
  std::int64_t a, b;   // character exponents mod d after flipping
  std::int64_t step;   // |c| = |a + b| of the original factor
  std::int64_t e;      // denominator exponent |c| / gcd(d, a, b)
  std::int64_t mult;
};

struct CharSumData {
  std::int64_t d = 1;
  std::vector<CharFactor> factors;
  std::int64_t t0 = 0;      // tau-exponent of the flip prefactor
  std::int64_t a0 = 0, b0 = 0;  // character of the flip prefactor
  int sign = 1;
  std::int64_t den_degree = 0;  // sum of e * mult
};

std::int64_t to_i64(const Int& x) {
  if (!x.fits_slong_p()) fail(errc::internal, "minor exceeds 64-bit range");
  return x.get_si();
}

std::int64_t mod_nonneg(std::int64_t x, std::int64_t d) {
  std::int64_t r = x % d;
  return r < 0 ? r + d : r;
}

Int to_int(std::uint64_t v) { return Int(static_cast<unsigned long>(v)); }
Int to_int(unsigned __int128 v) {
  Int hi(static_cast<unsigned long>(v >> 64));
  return (hi << 64) + Int(static_cast<unsigned long>(v));
}
const Int& to_int(const Int& v) { return v; }

CharSumData char_sum_data(const WeightMatrix& G, int i, int j) {
  CharSumData out;
  out.d = to_i64(G.minor(i, j));
  if (out.d <= 0) fail(errc::bad_pair, "residue sum needs d_ij > 0");
  for (int k = 0; k < G.cols(); ++k) {
    if (k == i || k == j) continue;
    std::int64_t dik = to_i64(G.minor(i, k)), djk = to_i64(G.minor(j, k));
    for (auto [a, b] : {std::pair{dik, out.d + djk}, std::pair{-dik, out.d - djk}}) {
      std::int64_t c = a + b;
      if (c == 0) fail(errc::bad_pair, "vanishing merged exponent; matrix is not generic");
      if (c < 0) {
        // 1/(1 - chi tau^c) = -chi^-1 tau^-c / (1 - chi^-1 tau^-c)
        out.sign = -out.sign;
        out.t0 += -c;
        out.a0 -= a;
        out.b0 -= b;
        a = -a;
        b = -b;
        c = -c;
      }
      std::int64_t g = std::gcd(std::gcd(out.d, a), b);
      out.factors.push_back({mod_nonneg(a, out.d), mod_nonneg(b, out.d), c, c / g, 1});
      out.den_degree += c / g;
    }
  }
  return out;
}

// DP for the filtered lattice count: table[m][alpha][beta] counts multisets
// of the factors processed so far with tau-degree m and character residue
// (alpha, beta). Each factor is folded in with the in-place unbounded
// recurrence table[m] += shift(table[m - step]).
template <typename Count>
std::vector<Int> char_sum_series(const CharSumData& cs, std::int64_t t_degree) {
  const std::int64_t d = cs.d;
  const size_t states = static_cast<size_t>(d) * d;
  const std::int64_t m_max = d * t_degree;

  std::vector<std::vector<Count>> table(m_max + 1, std::vector<Count>(states));
  if (cs.t0 <= m_max)
    table[cs.t0][mod_nonneg(cs.a0, d) * d + mod_nonneg(cs.b0, d)] = 1;

  for (const CharFactor& f : cs.factors)
    for (std::int64_t rep = 0; rep < f.mult; ++rep)
      for (std::int64_t m = f.step; m <= m_max; ++m) {
        const std::vector<Count>& src = table[m - f.step];
        std::vector<Count>& dst = table[m];
        for (std::int64_t al = 0; al < d; ++al) {
          std::int64_t pa = (al - f.a + d) % d;
          Count* dp = dst.data() + al * d;
          const Count* sp = src.data() + pa * d;
          std::int64_t pb = (d - f.b) % d;
          for (std::int64_t be = 0; be < d; ++be) {
            dp[be] += sp[pb];
            if (++pb == d) pb = 0;
          }
        }
      }

  std::vector<Int> series(t_degree + 1);
  for (std::int64_t r = 0; r <= t_degree; ++r) series[r] = to_int(table[r * d][0]);
  return series;
}

// Bounded-memory variant: the series satisfies the linear recurrence of the
// expanded denominator prod (1 - X_f), so a ring of sum-of-steps rows
// suffices. Quadratic in the number of factors' subsets; emergency path for
// tables that would not fit in memory.
std::vector<Int> char_sum_series_ring(const CharSumData& cs, std::int64_t t_degree) {
  const std::int64_t d = cs.d;
  const size_t states = static_cast<size_t>(d) * d;
  const std::int64_t m_max = d * t_degree;

  struct SubsetTerm {
    std::int64_t step, a, b;
    int sign;
  };
  std::vector<SubsetTerm> terms{{0, 0, 0, 1}};
  for (const CharFactor& f : cs.factors)
    for (std::int64_t rep = 0; rep < f.mult; ++rep) {
      std::vector<SubsetTerm> next = terms;
      for (const SubsetTerm& t : terms)
        next.push_back({t.step + f.step, (t.a + f.a) % d, (t.b + f.b) % d, -t.sign});
      terms = std::move(next);
    }

  std::int64_t ring = 1;
  for (const SubsetTerm& t : terms) ring = std::max(ring, t.step + 1);
  std::vector<std::vector<Int>> table(ring);
  std::vector<Int> series(t_degree + 1);
  for (std::int64_t m = 0; m <= m_max; ++m) {
    std::vector<Int>& cur = table[m % ring];
    cur.assign(states, Int(0));
    if (m == cs.t0) cur[mod_nonneg(cs.a0, d) * d + mod_nonneg(cs.b0, d)] += 1;
    for (const SubsetTerm& t : terms) {
      if (t.step == 0 || t.step > m) continue;
      const std::vector<Int>& src = table[(m - t.step) % ring];
      for (std::int64_t al = 0; al < d; ++al) {
        std::int64_t pa = (al - t.a + d) % d;
        std::int64_t pb = (d - t.b) % d;
        for (std::int64_t be = 0; be < d; ++be) {
          const Int& v = src[pa * d + pb];
          if (v != 0) {
            if (t.sign < 0) cur[al * d + be] += v;
            else cur[al * d + be] -= v;
          }
          if (++pb == d) pb = 0;
        }
      }
    }
    if (m % d == 0) series[m / d] = cur[0];
  }
  return series;
}

// Upper bound on any DP entry, to pick the accumulator width.
long double char_sum_count_bound(const CharSumData& cs, std::int64_t t_degree) {
  std::int64_t min_step = cs.factors.empty() ? 1 : cs.factors.front().step;
  for (const CharFactor& f : cs.factors) min_step = std::min(min_step, f.step);
  long double slots = static_cast<long double>(cs.d) * t_degree / std::max<std::int64_t>(min_step, 1);
  long double bound = 1;
  for (size_t k = 1; k <= cs.factors.size(); ++k) bound = bound * (slots + k) / k;
  return bound;
}

// Rough slot-count proxy for the sectioning pipeline on this pair.
std::int64_t pipeline_cost_estimate(const WeightMatrix& G, int i, int j) {
  std::int64_t d = to_i64(G.minor(i, j));
  std::int64_t spread = 0;
  for (int k = 0; k < G.cols(); ++k) {
    if (k == i || k == j) continue;
    std::int64_t dik = to_i64(G.minor(i, k)), djk = to_i64(G.minor(j, k));
    spread += 2 * std::abs(dik) + std::abs(d + djk) + std::abs(d - djk);
  }
  return d * spread;
}

constexpr std::int64_t kPipelineCostThreshold = 6000;

}  // namespace

UnivariateRational hilbert_term_residue_sum(const WeightMatrix& G, int i, int j) {
  CharSumData cs = char_sum_data(G, i, j);
  // numerator degree is strictly below the denominator degree
  const std::int64_t need = cs.den_degree - 1;
  std::vector<Int> series;
  const long double bound = char_sum_count_bound(cs, need);
  const long double rows = static_cast<long double>(need) * cs.d + 1;
  const long double states = static_cast<long double>(cs.d) * cs.d;
  if (rows * states * 16 > 1.5e9L) series = char_sum_series_ring(cs, need);
  else if (bound < 9.0e18L) series = char_sum_series<std::uint64_t>(cs, need);
  else if (bound < 1.6e38L) series = char_sum_series<unsigned __int128>(cs, need);
  else series = char_sum_series<Int>(cs, need);

  UnivariateRational out;
  for (const CharFactor& f : cs.factors) out.den[f.e] += f.mult;
  // clear the denominator: N = series * prod (1 - t^e)^mult, a polynomial
  std::vector<Int> num = std::move(series);
  for (const CharFactor& f : cs.factors)
    for (std::int64_t rep = 0; rep < f.mult; ++rep)
      for (std::int64_t m = need; m >= f.e; --m) num[m] -= num[m - f.e];
  for (std::int64_t m = 0; m <= need; ++m)
    if (num[m] != 0) out.add_num_term(m, Rat(cs.sign * num[m]));
  if (out.num.empty()) out.den.clear();
  return out;
}

namespace {

UnivariateRational sum_pairwise(std::vector<UnivariateRational> terms) {
  if (terms.empty()) return UnivariateRational::zero();
  // balanced reduction tree bounds the intermediate numerator degree
  while (terms.size() > 1) {
    std::vector<UnivariateRational> next;
    for (size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(add(terms[i], terms[i + 1]));
    if (terms.size() % 2 == 1) next.push_back(std::move(terms.back()));
    terms = std::move(next);
  }
  return std::move(terms.front());
}

}  // namespace

HilbertSeries hilbert_on(const WeightMatrix& A, const HilbertOptions& opt) {
  PipelineMatrix pm = generic_representative(A, opt);
  const WeightMatrix& G = pm.matrix;
  const int n = G.cols();

  std::vector<UnivariateRational> terms;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j || G.minor(i, j) <= 0) continue;
      // the residue sum avoids the sectioning pipeline's series blow-up on
      // pairs with large minors
      if (pipeline_cost_estimate(G, i, j) <= kPipelineCostThreshold)
        terms.push_back(hilbert_term(G, i, j));
      else
        terms.push_back(hilbert_term_residue_sum(G, i, j));
    }

  HilbertSeries H = canonicalize(sum_pairwise(std::move(terms)));
  if (H.power_series(0)[0] != 1) fail(errc::internal, "hilbert series has constant term != 1");
  return H;
}

HilbertSeries hilbert_off(const WeightMatrix& A, const HilbertOptions& opt) {
  return divide_canonical(hilbert_on(A, opt), 2, 2);
}

HilbertReport analyze(const WeightMatrix& A, int M, const HilbertOptions& opt) {
  PipelineMatrix pm = generic_representative(A, opt);
  HilbertReport rep;
  rep.on_shell = hilbert_on(pm.matrix, opt);
  rep.off_shell = divide_canonical(rep.on_shell, 2, 2);
  rep.gammas = laurent_at_one(rep.on_shell, std::max(M, 3));
  rep.pole_order = rep.gammas.pole_order;
  if (!pm.log.empty()) rep.genericized_from = pm.log;
  rep.describes_M0 = shell_support(A).full;

  const std::int64_t n = A.cols();
  if (rep.pole_order != 2 * n - 4) fail(errc::internal, "pole order differs from 2n - 4");
  if (rep.gammas.coefficients[1] != 0) fail(errc::internal, "gamma_1 != 0");
  if (rep.gammas.coefficients[2] != rep.gammas.coefficients[3])
    fail(errc::internal, "gamma_2 != gamma_3");
  if (!rep.on_shell.numerator_palindromic())
    fail(errc::internal, "canonical numerator is not palindromic");
  if (static_cast<int>(rep.gammas.coefficients.size()) > M + 1)
    rep.gammas.coefficients.resize(M + 1);
  return rep;
}

}  // namespace t2hilb
