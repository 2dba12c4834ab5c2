#include <doctest.h>

#include <random>

#include "t2hilb/factored.hpp"
#include "t2hilb/series.hpp"
#include "t2hilb/weights.hpp"

using namespace t2hilb;

namespace {

FactoredRational frac(Rat scalar, BivariateLaurent num,
                      std::vector<std::pair<std::int64_t, std::int64_t>> factors) {
  FactoredRational f;
  f.scalar = std::move(scalar);
  f.num = std::move(num);
  for (auto [p, q] : factors) f.add_factor(p, q);
  return f;
}

// keep every d-th coefficient along the axis
BivariateLaurent section(const BivariateLaurent& series, std::int64_t d, Axis axis) {
  BivariateLaurent out;
  for (const auto& [e, c] : series.terms()) {
    std::int64_t a = e.on(axis);
    if (a % d != 0) continue;
    out.add_term(axis == Axis::t ? ExpPair{e.s, a / d} : ExpPair{a / d, e.t}, c);
  }
  return out;
}

BivariateLaurent expand_factors(const FactorMultiset& den) {
  BivariateLaurent out = BivariateLaurent::one();
  for (const auto& [key, m] : den)
    for (std::int64_t rep = 0; rep < m; ++rep) {
      BivariateLaurent f = BivariateLaurent::one();
      f.add_term({key.first, key.second}, Rat(-1));
      out = out * f;
    }
  return out;
}

// cross-multiplied equality of two factored rationals
bool same_value(const FactoredRational& a, const FactoredRational& b) {
  BivariateLaurent lhs = a.num * expand_factors(b.den);
  lhs.mul_scalar(a.scalar);
  BivariateLaurent rhs = b.num * expand_factors(a.den);
  rhs.mul_scalar(b.scalar);
  return lhs == rhs;
}

// power series of an unreduced univariate rational, degrees 0..D
std::vector<Rat> univariate_series(const UnivariateRational& r, int D) {
  std::vector<Rat> h(D + 1);
  for (const auto& [e, c] : r.num) {
    REQUIRE(e >= 0);
    if (e <= D) h[e] += c;
  }
  for (const auto& [e, m] : r.den)
    for (std::int64_t rep = 0; rep < m; ++rep)
      for (std::int64_t i = e; i <= D; ++i) h[i] += h[i - e];
  return h;
}

FactoredRational random_fraction(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nf(1, 4), p_dist(-4, 4), q_dist(1, 4), ne(-2, 3),
      coef(-2, 2);
  BivariateLaurent num;
  for (int i = 0; i < 3; ++i) num.add_term({ne(rng), ne(rng)}, Rat(coef(rng)));
  if (num.is_zero()) num = BivariateLaurent::one();
  FactoredRational f;
  f.scalar = Rat(1, 1 + static_cast<int>(rng() % 3));
  f.num = num;
  int k = nf(rng);
  for (int i = 0; i < k; ++i) f.add_factor(p_dist(rng), q_dist(rng));
  return f;
}

}  // namespace

TEST_SUITE("series") {
  TEST_CASE("phi_term: spec examples") {
    WeightMatrix A = WeightMatrix::parse("1 2 3; 0 1 1");  // minors 1, 1, -1
    FactoredRational f = phi_term(A, 0, 1);
    CHECK(f.scalar == 1);
    CHECK(f.num == BivariateLaurent::one());
    FactorMultiset expect{{{1, 0}, 1}, {{-1, 2}, 1}};  // (1-s)(1-s^-1 t^2)
    CHECK(f.den == expect);

    f = phi_term(A, 0, 2);
    FactorMultiset expect2{{{1, 2}, 1}, {{-1, 0}, 1}};  // (1-s t^2)(1-s^-1)
    CHECK(f.den == expect2);

    // n = 3 always gives two factors and scalar 1/d^2
    WeightMatrix B = WeightMatrix::parse("1 3 4; 0 1 2");  // d_13 = 2
    f = phi_term(B, 0, 2);
    CHECK(f.scalar == Rat(1, 4));
    std::int64_t total = 0;
    for (const auto& [k, m] : f.den) total += m;
    CHECK(total == 2);

    CHECK_THROWS_AS(phi_term(A, 1, 0), Error);  // d_10 = -1 < 0
  }

  TEST_CASE("normalize: spec examples") {
    // 1/(1 - s^-1) on axis s -> (-s)/(1 - s)
    FactoredRational f = frac(1, BivariateLaurent::one(), {{-1, 0}});
    FactoredRational g = normalize(f, Axis::s);
    CHECK(g.den == FactorMultiset{{{1, 0}, 1}});
    CHECK(g.num == BivariateLaurent::monomial(Rat(-1), 1, 0));
    CHECK(same_value(f, g));

    // 1/(1 - s^-1 t^2): axis-s normalization flips the factor, value unchanged
    f = frac(1, BivariateLaurent::one(), {{-1, 2}});
    g = normalize(f, Axis::s);
    CHECK(g.den == FactorMultiset{{{1, -2}, 1}});
    CHECK(same_value(f, g));
    // ... and axis-t normalization brings it back
    FactoredRational h = normalize(g, Axis::t);
    CHECK(h.den == f.den);
    CHECK(same_value(h, f));

    // already normalized input is unchanged
    f = frac(Rat(1, 3), BivariateLaurent::monomial(Rat(2), 1, 1), {{2, 3}, {1, 0}});
    g = normalize(f, Axis::t);
    CHECK(g.scalar == f.scalar);
    CHECK(g.num == f.num);
    CHECK(g.den == f.den);
  }

  TEST_CASE("factor_out_axis_free") {
    FactoredRational f = frac(1, BivariateLaurent::one(), {{1, 0}, {1, 1}});
    auto [free_part, rem] = factor_out_axis_free(f, Axis::t);
    CHECK(free_part.den == FactorMultiset{{{1, 0}, 1}});
    CHECK(rem.den == FactorMultiset{{{1, 1}, 1}});
    CHECK(same_value(mul(free_part, rem), f));

    f = frac(1, BivariateLaurent::one(), {{1, 1}, {2, 3}});
    auto [none, all] = factor_out_axis_free(f, Axis::t);
    CHECK(none.den.empty());
    CHECK(all.den == f.den);

    f = frac(1, BivariateLaurent::one(), {{1, 0}, {0, 1}});
    auto [sfree, trem] = factor_out_axis_free(f, Axis::t);
    CHECK(sfree.den == FactorMultiset{{{1, 0}, 1}});
    CHECK(trem.den == FactorMultiset{{{0, 1}, 1}});
  }

  TEST_CASE("u_op: d = 1 is the identity") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 10; ++rep) {
      FactoredRational f = random_fraction(rng);
      FactoredRational g = u_op(f, 1, Axis::t);
      CHECK(g.scalar == f.scalar);
      CHECK(g.num == f.num);
      CHECK(g.den == f.den);
    }
  }

  TEST_CASE("u_op: geometric series examples") {
    // U_{2,t}(1/(1 - s t)) = 1/(1 - s^2 t)
    FactoredRational f = frac(1, BivariateLaurent::one(), {{1, 1}});
    FactoredRational g = u_op(f, 2, Axis::t);
    CHECK(g.den == FactorMultiset{{{2, 1}, 1}});
    CHECK(g.num == BivariateLaurent::one());

    // U_{2,t}(1/(1 - s t^2)) = (1 - s t)/(1 - s t)^2, value 1/(1 - s t)
    f = frac(1, BivariateLaurent::one(), {{1, 2}});
    g = u_op(f, 2, Axis::t);
    CHECK(g.den == FactorMultiset{{{1, 1}, 2}});
    BivariateLaurent expected = BivariateLaurent::one();
    expected.add_term({1, 1}, Rat(-1));
    CHECK(g.num == expected);
    CHECK(same_value(g, frac(1, BivariateLaurent::one(), {{1, 1}})));
  }

  TEST_CASE("u_op rejects unnormalized and axis-free denominators") {
    FactoredRational f = frac(1, BivariateLaurent::one(), {{1, -2}});
    CHECK_THROWS_AS(u_op(f, 2, Axis::t), Error);
    f = frac(1, BivariateLaurent::one(), {{1, 0}, {1, 1}});
    CHECK_THROWS_AS(u_op(f, 2, Axis::t), Error);
  }

  TEST_CASE("u_op denominator transform handles the formal q = 0 branch") {
    FactorMultiset den{{{3, 0}, 1}};
    FactorMultiset out = u_op_denominator(den, 4, Axis::t);  // g = gcd(4, 0) = 4
    CHECK(out == FactorMultiset{{{3, 0}, 4}});
  }

  TEST_CASE("u_op agrees with direct index filtering of the series") {
    std::mt19937_64 rng(43);
    const std::int64_t D = 12;
    for (int rep = 0; rep < 60; ++rep) {
      FactoredRational f = random_fraction(rng);
      std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 5);
      FactoredRational g = u_op(f, d, Axis::t);
      BivariateLaurent direct = section(truncated_series(f, Axis::t, d * D), d, Axis::t);
      BivariateLaurent via_op = truncated_series(g, Axis::t, D);
      CHECK(direct == via_op);
    }
  }

  TEST_CASE("u_op on the s axis mirrors the t axis") {
    std::mt19937_64 rng(47);
    const std::int64_t D = 10;
    for (int rep = 0; rep < 30; ++rep) {
      FactoredRational f = random_fraction(rng);
      // swap exponents so the s axis is the expandable one
      FactoredRational swapped;
      swapped.scalar = f.scalar;
      for (const auto& [e, c] : f.num.terms()) swapped.num.add_term({e.t, e.s}, c);
      for (const auto& [k, m] : f.den) swapped.add_factor(k.second, k.first, m);
      std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 4);
      FactoredRational g = u_op(swapped, d, Axis::s);
      BivariateLaurent direct = section(truncated_series(swapped, Axis::s, d * D), d, Axis::s);
      BivariateLaurent via_op = truncated_series(g, Axis::s, D);
      CHECK(direct == via_op);
    }
  }

  TEST_CASE("u_op composition law") {
    std::mt19937_64 rng(53);
    const std::int64_t D = 30;
    for (int rep = 0; rep < 20; ++rep) {
      FactoredRational f = random_fraction(rng);
      std::int64_t d = 2 + static_cast<std::int64_t>(rng() % 2);
      std::int64_t e = 2 + static_cast<std::int64_t>(rng() % 2);
      FactoredRational lhs = u_op(u_op(f, d, Axis::t), e, Axis::t);
      FactoredRational rhs = u_op(f, d * e, Axis::t);
      CHECK(truncated_series(lhs, Axis::t, D) == truncated_series(rhs, Axis::t, D));
    }
  }

  TEST_CASE("u_op sections plain numerators") {
    BivariateLaurent num;
    num.add_term({1, 1}, Rat(1));
    num.add_term({2, 2}, Rat(1));
    FactoredRational f = frac(1, num, {});
    FactoredRational g = u_op(f, 2, Axis::t);
    CHECK(g.num == BivariateLaurent::monomial(Rat(1), 2, 1));
  }

  TEST_CASE("substitute_diagonal") {
    // (1 - s t^2) -> (1 - t^3); numerator s^2 t -> t^3
    FactoredRational f = frac(Rat(1, 2), BivariateLaurent::monomial(Rat(4), 2, 1), {{1, 2}});
    UnivariateRational r = substitute_diagonal(f);
    CHECK(r.den == std::map<std::int64_t, std::int64_t>{{3, 1}});
    CHECK(r.num == std::map<std::int64_t, Rat>{{3, Rat(2)}});

    // scalar-only input is unchanged
    f = frac(Rat(5), BivariateLaurent::one(), {});
    r = substitute_diagonal(f);
    CHECK(r.num == std::map<std::int64_t, Rat>{{0, Rat(5)}});
    CHECK(r.den.empty());

    // p + q <= 0 must be renormalized first
    f = frac(1, BivariateLaurent::one(), {{-2, 1}});
    CHECK_THROWS_AS(substitute_diagonal(f), Error);
    FactoredRational fixed = normalize_for_diagonal(f);
    r = substitute_diagonal(fixed);
    CHECK(r.den == std::map<std::int64_t, std::int64_t>{{1, 1}});

    // p + q = 0 factors cancel exactly against the numerator
    BivariateLaurent num = BivariateLaurent::one();
    num.add_term({1, -1}, Rat(-1));  // 1 - s t^-1
    f = frac(1, num, {{1, -1}});
    fixed = normalize_for_diagonal(f);
    CHECK(fixed.den.empty());
    CHECK(fixed.num == BivariateLaurent::one());
  }

  TEST_CASE("canonicalize: reductions") {
    // (1 - t)/(1 - t)^2 -> 1/(1 - t)
    UnivariateRational r;
    r.add_num_term(0, Rat(1));
    r.add_num_term(1, Rat(-1));
    r.den[1] = 2;
    HilbertSeries H = canonicalize(r);
    CHECK(H.numerator() == Poly::constant(Rat(1)));
    CHECK(H.denominator() == std::map<std::int64_t, std::int64_t>{{1, 1}});

    // (1 + t)/((1 - t)(1 - t^2)) -> 1/(1 - t)^2
    r = UnivariateRational{};
    r.add_num_term(0, Rat(1));
    r.add_num_term(1, Rat(1));
    r.den[1] = 1;
    r.den[2] = 1;
    H = canonicalize(r);
    CHECK(H.numerator() == Poly::constant(Rat(1)));
    CHECK(H.denominator() == std::map<std::int64_t, std::int64_t>{{1, 2}});
  }

  TEST_CASE("canonicalize preserves the first 60 power-series coefficients") {
    std::mt19937_64 rng(59);
    for (int rep = 0; rep < 25; ++rep) {
      UnivariateRational r;
      std::uniform_int_distribution<int> coef(-3, 3), e_dist(1, 5);
      for (int i = 0; i < 4; ++i) r.add_num_term(rng() % 6, Rat(coef(rng)));
      if (r.num.empty()) r.add_num_term(0, Rat(1));
      for (int i = 0; i < 3; ++i) r.den[e_dist(rng)] += 1;
      HilbertSeries H = canonicalize(r);
      std::vector<Rat> before = univariate_series(r, 60);
      std::vector<Rat> after = H.power_series(60);
      CHECK(before == after);
    }
  }

  TEST_CASE("laurent_at_one: examples") {
    // 1/(1 - t): pole 1, gamma_0 = 1
    HilbertSeries H(Poly::constant(Rat(1)), {{1, 1}});
    LaurentExpansion L = laurent_at_one(H, 2);
    CHECK(L.pole_order == 1);
    CHECK(L.coefficients[0] == 1);
    CHECK(L.coefficients[1] == 0);

    // 1/(1 - t^2): 1/(2(1-t)) + 1/4 + (1/8)(1-t) + ...
    H = HilbertSeries(Poly::constant(Rat(1)), {{2, 1}});
    L = laurent_at_one(H, 2);
    CHECK(L.pole_order == 1);
    CHECK(L.coefficients[0] == Rat(1, 2));
    CHECK(L.coefficients[1] == Rat(1, 4));
    CHECK(L.coefficients[2] == Rat(1, 8));

    // polynomial input: pole 0, Taylor coefficients at t = 1
    H = HilbertSeries(Poly(std::vector<Rat>{Rat(1), Rat(1)}), {});  // 1 + t = 2 - (1-t)
    L = laurent_at_one(H, 2);
    CHECK(L.pole_order == 0);
    CHECK(L.coefficients[0] == 2);
    CHECK(L.coefficients[1] == -1);
    CHECK(L.coefficients[2] == 0);
  }

  TEST_CASE("laurent_at_one resums to the stated remainder order") {
    std::mt19937_64 rng(61);
    const int M = 6;
    for (int rep = 0; rep < 15; ++rep) {
      std::uniform_int_distribution<int> coef(0, 3), e_dist(1, 4);
      std::vector<Rat> nc(4);
      for (Rat& c : nc) c = coef(rng);
      if (Poly(nc).is_zero()) nc[0] = 1;
      std::map<std::int64_t, std::int64_t> den;
      for (int i = 0; i < 2; ++i) den[e_dist(rng)] += 1;
      HilbertSeries H(Poly(nc), den);
      LaurentExpansion L = laurent_at_one(H, M);

      // w^p N(1-w) - S(w) D(1-w) must vanish to order M + 1 + val(D(1-w))
      Poly one_minus_w(std::vector<Rat>{Rat(1), Rat(-1)});
      auto compose = [&](const Poly& p) {
        Poly out;
        for (int k = p.degree(); k >= 0; --k)
          out = out * one_minus_w + Poly::constant(p.coeff(k));
        return out;
      };
      Poly Nw = compose(H.numerator());
      Poly Dfull = Poly::constant(Rat(1));
      std::int64_t q = 0;
      for (const auto& [e, m] : den) {
        q += m;
        for (std::int64_t i = 0; i < m; ++i) Dfull *= Poly::one_minus_t_pow(e);
      }
      Poly Dw = compose(Dfull);
      Poly S(std::vector<Rat>(L.coefficients.begin(), L.coefficients.end()));
      Poly bracket = Poly::monomial(Rat(1), static_cast<int>(L.pole_order)) * Nw - S * Dw;
      if (!bracket.is_zero()) CHECK(bracket.valuation() >= M + 1 + q);
    }
  }
}
