#pragma once

#include <vector>

#include "t2hilb/rational.hpp"
#include "t2hilb/weights.hpp"

namespace t2hilb {

// Small dense integer matrix, only used by the integer linear algebra layer.
struct IntMat {
  int rows = 0, cols = 0;
  std::vector<Int> a;

  IntMat() = default;
  IntMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static IntMat identity(int n);

  Int& at(int r, int c) { return a[static_cast<size_t>(r) * cols + c]; }
  const Int& at(int r, int c) const { return a[static_cast<size_t>(r) * cols + c]; }

  bool is_zero() const;
  IntMat operator*(const IntMat& other) const;
  bool operator==(const IntMat& other) const = default;

  void swap_rows(int r1, int r2);
  void swap_cols(int c1, int c2);

  Int det() const;  // by expansion; fine for the tiny sizes used here
};

// A = P * S * Q with P, Q unimodular and S diagonal with the divisibility
// chain a_i | a_{i+1}; diagonal entries are the canonical nonnegative choice.
struct SmithDecomposition {
  IntMat P;                // m x m
  std::vector<Int> diag;   // length min(m, n)
  IntMat Q;                // n x n
  int rank = 0;            // number of nonzero diagonal entries

  IntMat diagonal_matrix(int rows, int cols) const;
};

SmithDecomposition smith_normal_form(const IntMat& M);

// |{ x in (Z/N)^n : Mx = 0 mod N }| = N^{n-min(m,n)} * prod gcd(a_i, N).
Int count_congruence_solutions(const IntMat& M, const Int& N);

// Number of pairs (xi, zeta) of d_ij-th roots of unity with
// xi^{d_ik} zeta^{d_jk} = 1 for all k != i, j; equals g * |d_ij|.
Int count_root_pairs(const WeightMatrix& A, int i, int j);

}  // namespace t2hilb
