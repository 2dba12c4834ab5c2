#include <doctest.h>

#include <random>

#include "t2hilb/hilbert.hpp"
#include "t2hilb/oracle.hpp"

using namespace t2hilb;

namespace {

WeightMatrix mat(const std::string& s) { return WeightMatrix::parse(s); }

bool matches_oracle(const HilbertSeries& H, const WeightMatrix& A, int D) {
  OracleSeries os = oracle_series(A, D);
  std::vector<Rat> ps = H.power_series(D);
  for (int d = 0; d <= D; ++d)
    if (ps[d] != Rat(os.on[d])) return false;
  return true;
}

WeightMatrix random_faithful_generic(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> top(1, 6), bot(-4, 4);
  while (true) {
    std::vector<Int> r0, r1;
    for (int i = 0; i < n; ++i) {
      r0.emplace_back(top(rng));
      r1.emplace_back(bot(rng));
    }
    WeightMatrix A(std::move(r0), std::move(r1));
    Classification c = classify(A);
    if (c.faithful && (c.kind == MatrixClass::generic || c.kind == MatrixClass::completely_generic))
      return A;
  }
}

}  // namespace

TEST_SUITE("hilbert") {
  TEST_CASE("closed form for the completely generic 3-column example") {
    HilbertSeries H = hilbert_on(mat("1 2 3; 0 1 1"));
    // (1 - t + t^2)/((1-t)(1-t^3)), hand-checked against the lattice oracle
    CHECK(H.numerator() == Poly(std::vector<Rat>{Rat(1), Rat(-1), Rat(1)}));
    CHECK(H.denominator() == std::map<std::int64_t, std::int64_t>{{1, 1}, {3, 1}});
    CHECK(matches_oracle(H, mat("1 2 3; 0 1 1"), 20));
  }

  TEST_CASE("Example 2.3: degenerate and generic representatives agree") {
    HilbertSeries HA = hilbert_on(mat("2 1 4; 1 -1 1"));  // runs via genericization
    HilbertSeries HB = hilbert_on(mat("4 1 6; 1 1 1"));
    CHECK(HA == HB);
    CHECK(matches_oracle(HA, mat("2 1 4; 1 -1 1"), 16));
  }

  TEST_CASE("defining relation of the off-shell series") {
    for (const char* m : {"1 2 3; 0 1 1", "1 3 4; 0 1 2", "4 1 6; 1 1 1"}) {
      WeightMatrix A = mat(m);
      HilbertSeries on = hilbert_on(A), off = hilbert_off(A);
      std::vector<Rat> ps_on = on.power_series(40), ps_off = off.power_series(40);
      for (int d = 0; d <= 40; ++d) {
        Rat expect = ps_off[d];
        if (d >= 2) expect -= 2 * ps_off[d - 2];
        if (d >= 4) expect += ps_off[d - 4];
        CHECK(ps_on[d] == expect);
      }
      // off-shell pole order is 2n - 2
      CHECK(laurent_at_one(off, 0).pole_order == 2 * A.cols() - 2);
      // off-shell coefficients are the lattice counts themselves
      OracleSeries os = oracle_series(A, 20);
      for (int d = 0; d <= 20; ++d) CHECK(ps_off[d] == Rat(os.off[d]));
    }
  }

  TEST_CASE("random battery matches the lattice oracle") {
    std::mt19937_64 rng(73);
    for (int rep = 0; rep < 6; ++rep) {
      WeightMatrix A = random_faithful_generic(rng, 3);
      CHECK(matches_oracle(hilbert_on(A), A, 20));
    }
    for (int rep = 0; rep < 3; ++rep) {
      WeightMatrix A = random_faithful_generic(rng, 4);
      CHECK(matches_oracle(hilbert_on(A), A, 14));
    }
  }

  TEST_CASE("series is invariant under logged basis changes") {
    std::mt19937_64 rng(79);
    WeightMatrix A = mat("1 3 4; 0 1 2");
    HilbertSeries H = hilbert_on(A);
    for (int rep = 0; rep < 6; ++rep) {
      BasisChangeLog log;
      log.moves.push_back({BasisMove::Kind::add_row2_to_row1,
                           Int(static_cast<long>(rng() % 5) - 2), {}});
      if (rng() % 2) log.moves.push_back({BasisMove::Kind::swap_rows, Int(0), {}});
      if (rng() % 2) log.moves.push_back({BasisMove::Kind::negate_row2, Int(0), {}});
      std::vector<int> flips;
      for (int c = 0; c < 3; ++c)
        if (rng() % 2) flips.push_back(c);
      if (!flips.empty()) log.moves.push_back({BasisMove::Kind::flip_columns, Int(0), flips});
      WeightMatrix B = replay(A, log);
      if (faithfulness(B).rank != 2) continue;
      CHECK(hilbert_on(B) == H);
    }
    // column permutation too
    CHECK(hilbert_on(A.with_columns({2, 0, 1})) == H);
  }

  TEST_CASE("analyze: structural facts and report fields") {
    HilbertReport rep = analyze(mat("1 2 3; 0 1 1"), 3);
    CHECK(rep.pole_order == 2);
    CHECK(rep.gammas.coefficients[0] == Rat(1, 3));
    CHECK(rep.gammas.coefficients[1] == 0);
    CHECK(rep.gammas.coefficients[2] == Rat(2, 9));
    CHECK(rep.gammas.coefficients[3] == Rat(2, 9));
    CHECK(rep.on_shell.numerator_palindromic());
    CHECK_FALSE(rep.genericized_from.has_value());
    CHECK_FALSE(rep.describes_M0);  // column weights sit in a half plane

    // Example 2.1 B: full support, so the series describes R[M0]
    HilbertReport repB = analyze(mat("-1 0 1; 0 -1 1"), 3);
    CHECK(repB.describes_M0);
    REQUIRE(repB.genericized_from.has_value());
    CHECK(replay(mat("-1 0 1; 0 -1 1"), *repB.genericized_from) ==
          generic_representative(mat("-1 0 1; 0 -1 1")).matrix);

    // constant term and nonnegativity, degrees 0..60
    std::vector<Rat> ps = repB.on_shell.power_series(60);
    CHECK(ps[0] == 1);
    for (const Rat& c : ps) {
      CHECK(c >= 0);
      CHECK(is_integer(c));
    }
  }

  TEST_CASE("error paths") {
    CHECK_THROWS_WITH_AS(hilbert_on(mat("1 2; 2 4")), doctest::Contains("NotFaithful"), Error);
    CHECK_THROWS_AS(hilbert_on(mat("1 1; 0 1")), Error);          // n = 2
    CHECK_THROWS_AS(hilbert_on(mat("1 1 1; 0 1 1")), Error);      // not genericizable
    try {
      hilbert_on(mat("1 1 1; 0 1 1"));
    } catch (const Error& e) {
      CHECK(e.code() == errc::not_genericizable);
    }
  }
}
