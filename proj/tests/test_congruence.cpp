#include <doctest.h>

#include <random>

#include "t2hilb/congruence.hpp"

using namespace t2hilb;

namespace {

IntMat random_int_mat(std::mt19937_64& rng, int r, int c, int lo, int hi) {
  std::uniform_int_distribution<int> entry(lo, hi);
  IntMat m(r, c);
  for (Int& x : m.a) x = entry(rng);
  return m;
}

// gcd of all i x i minors, by direct enumeration (Prop 2.4 reference value)
Int minor_gcd(const IntMat& m, int i) {
  std::vector<int> rows(i), cols(i);
  Int g = 0;
  auto det_of = [&](const std::vector<int>& rs, const std::vector<int>& cs) {
    IntMat sub(i, i);
    for (int a = 0; a < i; ++a)
      for (int b = 0; b < i; ++b) sub.at(a, b) = m.at(rs[a], cs[b]);
    return sub.det();
  };
  std::vector<int> rsel, csel;
  auto rec_cols = [&](auto&& self, int start) -> void {
    if (static_cast<int>(csel.size()) == i) {
      g = gcd(g, det_of(rsel, csel));
      return;
    }
    for (int c = start; c < m.cols; ++c) {
      csel.push_back(c);
      self(self, c + 1);
      csel.pop_back();
    }
  };
  auto rec_rows = [&](auto&& self, int start) -> void {
    if (static_cast<int>(rsel.size()) == i) {
      rec_cols(rec_cols, 0);
      return;
    }
    for (int r = start; r < m.rows; ++r) {
      rsel.push_back(r);
      self(self, r + 1);
      rsel.pop_back();
    }
  };
  rec_rows(rec_rows, 0);
  return g;
}

// |{x in (Z/N)^n : Mx = 0}| by direct enumeration
Int count_solutions_naive(const IntMat& m, long N) {
  std::vector<long> x(m.cols, 0);
  Int count = 0;
  while (true) {
    bool ok = true;
    for (int r = 0; r < m.rows && ok; ++r) {
      Int acc = 0;
      for (int c = 0; c < m.cols; ++c) acc += m.at(r, c) * x[c];
      if (acc % N != 0) ok = false;
    }
    if (ok) ++count;
    int pos = 0;
    while (pos < m.cols && ++x[pos] == N) x[pos++] = 0;
    if (pos == m.cols) break;
  }
  return count;
}

}  // namespace

TEST_SUITE("congruence") {
  TEST_CASE("identity and the gcd example") {
    SmithDecomposition snf = smith_normal_form(IntMat::identity(2));
    CHECK(snf.diag == std::vector<Int>{1, 1});
    CHECK(snf.rank == 2);
    CHECK(snf.P == IntMat::identity(2));
    CHECK(snf.Q == IntMat::identity(2));

    IntMat m(2, 2);
    m.at(0, 0) = 2; m.at(0, 1) = 4; m.at(1, 0) = 6; m.at(1, 1) = 8;
    snf = smith_normal_form(m);
    CHECK(snf.diag == std::vector<Int>{2, 4});  // Delta_1 = 2, Delta_2 = 8
  }

  TEST_CASE("zero matrix is rejected") {
    CHECK_THROWS_AS(smith_normal_form(IntMat(2, 3)), Error);
  }

  TEST_CASE("decomposition properties on random matrices") {
    std::mt19937_64 rng(17);
    int done = 0;
    while (done < 60) {
      int r = 1 + static_cast<int>(rng() % 3), c = 1 + static_cast<int>(rng() % 4);
      IntMat m = random_int_mat(rng, r, c, -9, 9);
      if (m.is_zero()) continue;
      ++done;
      SmithDecomposition snf = smith_normal_form(m);

      CHECK(snf.P * snf.diagonal_matrix(r, c) * snf.Q == m);
      CHECK(abs(snf.P.det()) == 1);
      CHECK(abs(snf.Q.det()) == 1);
      for (size_t i = 0; i + 1 < snf.diag.size(); ++i) {
        CHECK(snf.diag[i] >= 0);
        if (snf.diag[i] == 0) CHECK(snf.diag[i + 1] == 0);
        else CHECK(snf.diag[i + 1] % snf.diag[i] == 0);
      }
      // Prop 2.4: prod_{k<=i} a_k = gcd of i x i minors
      Int prod = 1;
      for (int i = 1; i <= std::min(r, c); ++i) {
        prod *= snf.diag[i - 1];
        CHECK(abs(prod) == minor_gcd(m, i));
      }
    }
  }

  TEST_CASE("congruence counts: examples") {
    IntMat one(1, 1);
    one.at(0, 0) = 2;
    CHECK(count_congruence_solutions(one, 4) == 2);  // {0, 2}

    CHECK(count_congruence_solutions(IntMat::identity(2), 7) == 1);
    CHECK(count_congruence_solutions(IntMat::identity(2), 12) == 1);

    CHECK_THROWS_AS(count_congruence_solutions(one, 1), Error);
    CHECK_THROWS_AS(count_congruence_solutions(IntMat(2, 2), 5), Error);
  }

  TEST_CASE("congruence counts match exhaustive enumeration") {
    std::mt19937_64 rng(23);
    std::uniform_int_distribution<long> mod(2, 12);
    int done = 0;
    while (done < 120) {
      int r = 1 + static_cast<int>(rng() % 3), c = 1 + static_cast<int>(rng() % 3);
      IntMat m = random_int_mat(rng, r, c, -6, 6);
      if (m.is_zero()) continue;
      ++done;
      long N = mod(rng);
      CHECK(count_congruence_solutions(m, N) == count_solutions_naive(m, N));
    }
  }

  TEST_CASE("root pairs: examples and enumeration") {
    WeightMatrix A = WeightMatrix::parse("2 1 4; 1 -1 1");  // faithful, d_23 = 5
    CHECK(count_root_pairs(A, 1, 2) == 5);

    WeightMatrix B = WeightMatrix::parse("2 0 2; 0 2 2");  // g = 4, d_12 = 4
    CHECK(count_root_pairs(B, 0, 1) == 16);

    WeightMatrix C = WeightMatrix::parse("1 2 3; 0 1 1");  // d_12 = 1, faithful
    CHECK(count_root_pairs(C, 0, 1) == 1);

    WeightMatrix D = WeightMatrix::parse("1 1 2; 1 1 1");  // d_12 = 0
    CHECK_THROWS_AS(count_root_pairs(D, 0, 1), Error);
  }

  TEST_CASE("root pairs match direct enumeration for small d_ij") {
    // pairs (xi, zeta) of d-th roots of unity as exponents (x, y) in (Z/d)^2
    auto enumerate = [](const WeightMatrix& A, int i, int j) {
      long d = std::labs(A.minor(i, j).get_si());
      Int count = 0;
      for (long x = 0; x < d; ++x)
        for (long y = 0; y < d; ++y) {
          bool ok = true;
          for (int k = 0; k < A.cols() && ok; ++k) {
            if (k == i || k == j) continue;
            Int e = x * A.minor(i, k) + y * A.minor(j, k);
            if (e % d != 0) ok = false;
          }
          if (ok) ++count;
        }
      return count;
    };
    std::mt19937_64 rng(29);
    std::uniform_int_distribution<int> entry(-4, 4);
    int done = 0;
    while (done < 60) {
      std::vector<Int> r0, r1;
      for (int c = 0; c < 3 + static_cast<int>(rng() % 2); ++c) {
        r0.emplace_back(entry(rng));
        r1.emplace_back(entry(rng));
      }
      WeightMatrix A(std::move(r0), std::move(r1));
      if (faithfulness(A).rank != 2) continue;
      int i = static_cast<int>(rng() % A.cols()), j = static_cast<int>(rng() % A.cols());
      if (i == j || A.minor(i, j) == 0) continue;
      if (abs(A.minor(i, j)) > 12) continue;
      ++done;
      CHECK(count_root_pairs(A, i, j) == enumerate(A, i, j));
    }
  }
}
