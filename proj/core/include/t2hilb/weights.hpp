#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "t2hilb/rational.hpp"

namespace t2hilb {

// 2xn integer weight matrix of a 2-torus representation. Column i carries the
// character (a_1i, a_2i) of the i-th coordinate. Immutable after construction.
class WeightMatrix {
public:
  WeightMatrix(std::vector<Int> row1, std::vector<Int> row2);

  // Text format: rows separated by ';', entries by whitespace or ','.
  static WeightMatrix parse(const std::string& text);
  std::string str() const;

  int cols() const { return static_cast<int>(rows_[0].size()); }
  const Int& a(int row, int col) const { return rows_[row][col]; }
  bool column_is_zero(int col) const { return rows_[0][col] == 0 && rows_[1][col] == 0; }
  bool has_zero_column() const;

  // 2x2 minor d_ij = a_1i a_2j - a_2i a_1j, antisymmetric in (i, j).
  Int minor(int i, int j) const;

  WeightMatrix with_columns(const std::vector<int>& cols) const;

  bool operator==(const WeightMatrix& other) const {
    return rows_[0] == other.rows_[0] && rows_[1] == other.rows_[1];
  }

private:
  std::vector<Int> rows_[2];
};

// Full minor table, stored for i<j with the antisymmetric accessor.
class MinorTable {
public:
  explicit MinorTable(const WeightMatrix& A);
  int cols() const { return n_; }
  Int d(int i, int j) const;  // requires i != j; d(j,i) = -d(i,j)

private:
  int n_;
  std::vector<Int> upper_;  // d_ij for i<j, row-major
};

enum class MatrixClass { not_standard_form, degenerate, generic, completely_generic };

const char* matrix_class_name(MatrixClass c);

struct Classification {
  MatrixClass kind;
  bool faithful;
  int rank;  // 0, 1 or 2
};

struct Faithfulness {
  int rank;
  Int minor_gcd;  // gcd of all 2x2 minors; 0 when rank < 2
  bool faithful;  // rank == 2 and minor_gcd == 1
};

// One elementary change of basis. Replaying a log on its input must
// reproduce the output matrix exactly.
struct BasisMove {
  enum class Kind { add_row2_to_row1, swap_rows, negate_row1, negate_row2, flip_columns };
  Kind kind;
  Int k;                     // multiplier for add_row2_to_row1
  std::vector<int> columns;  // for flip_columns
};

struct BasisChangeLog {
  std::vector<BasisMove> moves;
  bool empty() const { return moves.empty(); }
};

WeightMatrix replay(const WeightMatrix& A, const BasisChangeLog& log);

struct StandardFormResult {
  WeightMatrix matrix;
  BasisChangeLog log;
};

struct GenericizeResult {
  std::optional<WeightMatrix> matrix;
  BasisChangeLog log;
  // Set when the triple-collinearity obstruction proves no generic
  // equivalent exists under row operations and column sign flips.
  bool provably_impossible = false;
};

struct ShellSupport {
  std::set<int> columns;  // 0-based indices i admitting r >= 0, Ar = 0, r_i > 0
  bool full = false;      // support == all columns
};

Faithfulness faithfulness(const WeightMatrix& A);
Classification classify(const WeightMatrix& A);

// Deterministic: first k in 0, 1, -1, 2, -2, ... with all a_1i + k a_2i != 0,
// then flip the columns whose first-row entry is negative.
StandardFormResult to_standard_form(const WeightMatrix& A);

// Bounded search for a generic standard-form matrix with an equivalent
// cotangent lift. Absence is reported via an empty matrix; the
// provably_impossible flag distinguishes the obstruction case from a mere
// search-bound exhaustion.
GenericizeResult try_genericize(const WeightMatrix& A, int bound = 10);

// Exact rational feasibility of { r >= 0, Ar = 0, r_i > 0 } per column.
ShellSupport shell_support(const WeightMatrix& A);

// Pluecker identity d_{i1 i2} d_{i0 j} - d_{i0 i2} d_{i1 j} + d_{i0 i1} d_{i2 j} = 0.
bool pluecker_holds(const WeightMatrix& A, int i0, int i1, int i2, int j);

}  // namespace t2hilb
