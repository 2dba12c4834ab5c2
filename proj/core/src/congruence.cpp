#include "t2hilb/congruence.hpp"

#include <algorithm>
#include <cstdlib>

namespace t2hilb {

IntMat IntMat::identity(int n) {
  IntMat m(n, n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

bool IntMat::is_zero() const {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

IntMat IntMat::operator*(const IntMat& other) const {
  IntMat out(rows, other.cols);
  for (int i = 0; i < rows; ++i)
    for (int k = 0; k < cols; ++k) {
      if (at(i, k) == 0) continue;
      for (int j = 0; j < other.cols; ++j) out.at(i, j) += at(i, k) * other.at(k, j);
    }
  return out;
}

void IntMat::swap_rows(int r1, int r2) {
  if (r1 == r2) return;
  for (int c = 0; c < cols; ++c) std::swap(at(r1, c), at(r2, c));
}

void IntMat::swap_cols(int c1, int c2) {
  if (c1 == c2) return;
  for (int r = 0; r < rows; ++r) std::swap(at(r, c1), at(r, c2));
}

Int IntMat::det() const {
  if (rows != cols) fail(errc::internal, "det of non-square matrix");
  if (rows == 1) return at(0, 0);
  Int sum = 0;
  for (int c = 0; c < cols; ++c) {
    if (at(0, c) == 0) continue;
    IntMat sub(rows - 1, cols - 1);
    for (int r = 1; r < rows; ++r) {
      int cc = 0;
      for (int c2 = 0; c2 < cols; ++c2) {
        if (c2 == c) continue;
        sub.at(r - 1, cc++) = at(r, c2);
      }
    }
    Int term = at(0, c) * sub.det();
    sum += (c % 2 == 0) ? term : -term;
  }
  return sum;
}

IntMat SmithDecomposition::diagonal_matrix(int rows, int cols) const {
  IntMat S(rows, cols);
  for (size_t i = 0; i < diag.size(); ++i) S.at(static_cast<int>(i), static_cast<int>(i)) = diag[i];
  return S;
}

namespace {

// Bookkeeping for M = P * W * Q under the elementary operations applied to W.
struct SnfState {
  IntMat W, P, Q;

  void swap_rows(int r1, int r2) {
    W.swap_rows(r1, r2);
    P.swap_cols(r1, r2);
  }
  void swap_cols(int c1, int c2) {
    W.swap_cols(c1, c2);
    Q.swap_rows(c1, c2);
  }
  // row r -= q * row t on W; P gains column t += q * column r
  void row_sub(int r, int t, const Int& q) {
    if (q == 0) return;
    for (int c = 0; c < W.cols; ++c) W.at(r, c) -= q * W.at(t, c);
    for (int rr = 0; rr < P.rows; ++rr) P.at(rr, t) += q * P.at(rr, r);
  }
  // col c -= q * col t on W; Q gains row t += q * row c
  void col_sub(int c, int t, const Int& q) {
    if (q == 0) return;
    for (int r = 0; r < W.rows; ++r) W.at(r, c) -= q * W.at(r, t);
    for (int cc = 0; cc < Q.cols; ++cc) Q.at(t, cc) += q * Q.at(c, cc);
  }
  // row t += row r (used to pull non-divisible entries into the pivot row)
  void row_add(int t, int r) {
    for (int c = 0; c < W.cols; ++c) W.at(t, c) += W.at(r, c);
    for (int rr = 0; rr < P.rows; ++rr) P.at(rr, r) -= P.at(rr, t);
  }
  void negate_row(int r) {
    for (int c = 0; c < W.cols; ++c) W.at(r, c) = -W.at(r, c);
    for (int rr = 0; rr < P.rows; ++rr) P.at(rr, r) = -P.at(rr, r);
  }
};

// Quotient minimizing |a - q*b|. The floor remainder has the sign of b.
Int nearest_quotient(const Int& a, const Int& b) {
  Int q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if ((b > 0 && 2 * r > b) || (b < 0 && 2 * r < b)) q += 1;
  return q;
}

}  // namespace

SmithDecomposition smith_normal_form(const IntMat& M) {
  if (M.is_zero()) fail(errc::zero_matrix, "Smith normal form of the zero matrix");
  const int m = M.rows, n = M.cols, mn = std::min(m, n);

  SnfState st{M, IntMat::identity(m), IntMat::identity(n)};

  for (int t = 0; t < mn; ++t) {
    // smallest-nonzero-absolute-value pivot in the trailing submatrix
    int pr = -1, pc = -1;
    for (int r = t; r < m; ++r)
      for (int c = t; c < n; ++c)
        if (st.W.at(r, c) != 0 &&
            (pr < 0 || abs(st.W.at(r, c)) < abs(st.W.at(pr, pc)))) {
          pr = r;
          pc = c;
        }
    if (pr < 0) break;
    st.swap_rows(t, pr);
    st.swap_cols(t, pc);

    for (bool settled = false; !settled;) {
      settled = true;
      for (int r = t + 1; r < m; ++r) {
        if (st.W.at(r, t) == 0) continue;
        st.row_sub(r, t, nearest_quotient(st.W.at(r, t), st.W.at(t, t)));
        if (st.W.at(r, t) != 0) {  // remainder is strictly smaller; promote it
          st.swap_rows(t, r);
          settled = false;
        }
      }
      for (int c = t + 1; c < n; ++c) {
        if (st.W.at(t, c) == 0) continue;
        st.col_sub(c, t, nearest_quotient(st.W.at(t, c), st.W.at(t, t)));
        if (st.W.at(t, c) != 0) {
          st.swap_cols(t, c);
          settled = false;
        }
      }
      if (!settled) continue;
      // enforce divisibility of the trailing submatrix by the pivot
      for (int r = t + 1; r < m && settled; ++r)
        for (int c = t + 1; c < n && settled; ++c)
          if (st.W.at(r, c) % st.W.at(t, t) != 0) {
            st.row_add(t, r);
            settled = false;
          }
    }
    if (st.W.at(t, t) < 0) st.negate_row(t);
  }

  SmithDecomposition out;
  out.diag.resize(mn);
  out.rank = 0;
  for (int i = 0; i < mn; ++i) {
    out.diag[i] = st.W.at(i, i);
    if (out.diag[i] != 0) ++out.rank;
  }
  out.P = std::move(st.P);
  out.Q = std::move(st.Q);
  return out;
}

Int count_congruence_solutions(const IntMat& M, const Int& N) {
  if (N <= 1) fail(errc::bad_modulus, "modulus must exceed 1");
  if (M.is_zero()) fail(errc::zero_matrix, "congruence count of the zero matrix");
  SmithDecomposition snf = smith_normal_form(M);
  const int mn = std::min(M.rows, M.cols);
  Int count = int_pow(N, M.cols - mn);
  for (int i = 0; i < mn; ++i) count *= snf.diag[i] == 0 ? N : gcd(snf.diag[i], N);
  return count;
}

Int count_root_pairs(const WeightMatrix& A, int i, int j) {
  if (A.cols() <= 2) fail(errc::too_few_columns, "count_root_pairs needs n > 2");
  Faithfulness f = faithfulness(A);
  if (f.rank != 2) fail(errc::rank_deficient, "count_root_pairs needs rank 2");
  Int dij = A.minor(i, j);
  if (dij == 0) fail(errc::singular_pair, "d_ij = 0");
  return f.minor_gcd * abs(dij);
}

}  // namespace t2hilb
