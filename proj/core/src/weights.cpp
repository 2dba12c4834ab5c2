#include "t2hilb/weights.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace t2hilb {

WeightMatrix::WeightMatrix(std::vector<Int> row1, std::vector<Int> row2) {
  if (row1.size() != row2.size() || row1.empty())
    fail(errc::parse_error, "weight matrix needs two rows of equal positive length");
  rows_[0] = std::move(row1);
  rows_[1] = std::move(row2);
}

WeightMatrix WeightMatrix::parse(const std::string& text) {
  std::vector<std::vector<Int>> rows;
  std::string row_text;
  std::stringstream whole(text);
  while (std::getline(whole, row_text, ';')) {
    for (char& c : row_text)
      if (c == ',') c = ' ';
    std::vector<Int> row;
    std::stringstream ss(row_text);
    std::string tok;
    while (ss >> tok) {
      try {
        row.emplace_back(tok);
      } catch (const std::invalid_argument&) {
        fail(errc::parse_error, "bad integer '" + tok + "' in matrix");
      }
    }
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.size() != 2) fail(errc::parse_error, "expected two rows separated by ';'");
  if (rows[0].size() != rows[1].size()) fail(errc::parse_error, "rows have different lengths");
  return WeightMatrix(std::move(rows[0]), std::move(rows[1]));
}

std::string WeightMatrix::str() const {
  std::string out;
  for (int r = 0; r < 2; ++r) {
    if (r) out += "; ";
    for (int c = 0; c < cols(); ++c) {
      if (c) out += ' ';
      out += rows_[r][c].get_str();
    }
  }
  return out;
}

bool WeightMatrix::has_zero_column() const {
  for (int i = 0; i < cols(); ++i)
    if (column_is_zero(i)) return true;
  return false;
}

Int WeightMatrix::minor(int i, int j) const {
  return rows_[0][i] * rows_[1][j] - rows_[1][i] * rows_[0][j];
}

WeightMatrix WeightMatrix::with_columns(const std::vector<int>& cols) const {
  std::vector<Int> r0, r1;
  for (int c : cols) {
    r0.push_back(rows_[0][c]);
    r1.push_back(rows_[1][c]);
  }
  return WeightMatrix(std::move(r0), std::move(r1));
}

MinorTable::MinorTable(const WeightMatrix& A) : n_(A.cols()) {
  upper_.reserve(static_cast<size_t>(n_) * (n_ - 1) / 2);
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j) upper_.push_back(A.minor(i, j));
}

Int MinorTable::d(int i, int j) const {
  if (i < j) {
    // index of (i,j) in the row-major upper triangle
    size_t idx = static_cast<size_t>(i) * n_ - static_cast<size_t>(i) * (i + 1) / 2 + (j - i - 1);
    return upper_[idx];
  }
  return -d(j, i);
}

const char* matrix_class_name(MatrixClass c) {
  switch (c) {
    case MatrixClass::not_standard_form: return "NotStandardForm";
    case MatrixClass::degenerate: return "Degenerate";
    case MatrixClass::generic: return "Generic";
    case MatrixClass::completely_generic: return "CompletelyGeneric";
  }
  return "?";
}

Faithfulness faithfulness(const WeightMatrix& A) {
  const int n = A.cols();
  Int g = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g = gcd(g, A.minor(i, j));
  if (g != 0) return {2, g, g == 1};
  // All minors vanish: rank is 1 unless the matrix is zero.
  for (int i = 0; i < n; ++i)
    if (!A.column_is_zero(i)) return {1, Int(0), false};
  return {0, Int(0), false};
}

Classification classify(const WeightMatrix& A) {
  const Faithfulness f = faithfulness(A);
  const int n = A.cols();

  for (int i = 0; i < n; ++i)
    if (A.a(0, i) <= 0) return {MatrixClass::not_standard_form, f.faithful, f.rank};

  bool generic = true;
  for (int i = 0; i < n && generic; ++i)
    for (int j = i + 1; j < n && generic; ++j)
      if (A.a(0, i) == A.a(0, j)) generic = false;

  // Per unordered triple {i,j,k}, the six ordered sums d_pq + d_pr + d_qr
  // take the values +-(D1+D2+D3), +-(D1+D2-D3), +-(D1-D2-D3) with
  // D1 = d_ij, D2 = d_ik, D3 = d_jk. The cyclic sums d_pq + d_qr + d_rp of
  // the completely-generic condition take the values +-(D1-D2+D3).
  bool completely = true;
  MinorTable mt(A);
  for (int i = 0; i < n && (generic || completely); ++i)
    for (int j = i + 1; j < n && (generic || completely); ++j)
      for (int k = j + 1; k < n && (generic || completely); ++k) {
        const Int D1 = mt.d(i, j);
        const Int D2 = mt.d(i, k);
        const Int D3 = mt.d(j, k);
        if (D1 + D2 + D3 == 0 || D1 + D2 - D3 == 0 || D1 - D2 - D3 == 0) generic = false;
        if (D1 - D2 + D3 == 0) completely = false;
      }

  if (!generic) return {MatrixClass::degenerate, f.faithful, f.rank};
  if (completely) return {MatrixClass::completely_generic, f.faithful, f.rank};
  return {MatrixClass::generic, f.faithful, f.rank};
}

WeightMatrix replay(const WeightMatrix& A, const BasisChangeLog& log) {
  std::vector<Int> r0, r1;
  for (int c = 0; c < A.cols(); ++c) {
    r0.push_back(A.a(0, c));
    r1.push_back(A.a(1, c));
  }
  for (const BasisMove& m : log.moves) {
    switch (m.kind) {
      case BasisMove::Kind::add_row2_to_row1:
        for (size_t c = 0; c < r0.size(); ++c) r0[c] += m.k * r1[c];
        break;
      case BasisMove::Kind::swap_rows: std::swap(r0, r1); break;
      case BasisMove::Kind::negate_row1:
        for (Int& x : r0) x = -x;
        break;
      case BasisMove::Kind::negate_row2:
        for (Int& x : r1) x = -x;
        break;
      case BasisMove::Kind::flip_columns:
        for (int c : m.columns) {
          r0[c] = -r0[c];
          r1[c] = -r1[c];
        }
        break;
    }
  }
  return WeightMatrix(std::move(r0), std::move(r1));
}

namespace {

// k = 0, 1, -1, 2, -2, ...
Int kth_candidate(int step) { return (step % 2 == 1) ? Int((step + 1) / 2) : Int(-step / 2); }

struct RowOpCandidate {
  WeightMatrix matrix;
  BasisChangeLog log;
};

// Applies row1 += k*row2 followed by the sign flips that make the first row
// positive. Empty when some first-row entry lands on zero.
std::optional<RowOpCandidate> standardize_with_k(const WeightMatrix& A, const Int& k) {
  std::vector<Int> r0, r1;
  std::vector<int> flips;
  for (int c = 0; c < A.cols(); ++c) {
    Int top = A.a(0, c) + k * A.a(1, c);
    if (top == 0) return std::nullopt;
    r0.push_back(top);
    r1.push_back(A.a(1, c));
    if (top < 0) flips.push_back(c);
  }
  BasisChangeLog log;
  if (k != 0) log.moves.push_back({BasisMove::Kind::add_row2_to_row1, k, {}});
  if (!flips.empty()) log.moves.push_back({BasisMove::Kind::flip_columns, Int(0), flips});
  for (int c : flips) {
    r0[c] = -r0[c];
    r1[c] = -r1[c];
  }
  return RowOpCandidate{WeightMatrix(std::move(r0), std::move(r1)), std::move(log)};
}

}  // namespace

StandardFormResult to_standard_form(const WeightMatrix& A) {
  if (faithfulness(A).rank < 2) fail(errc::rank_deficient, "matrix has rank < 2");
  if (A.has_zero_column()) fail(errc::zero_column, "zero column admits no standard form");
  for (int step = 0;; ++step) {
    if (auto cand = standardize_with_k(A, kth_candidate(step)))
      return {std::move(cand->matrix), std::move(cand->log)};
  }
}

namespace {

// Union-find with parity, for the sign-flip consistency constraints.
struct ParityDSU {
  std::vector<int> parent;
  std::vector<int> parity;  // parity of the edge to the parent
  explicit ParityDSU(int n) : parent(n), parity(n, 0) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::pair<int, int> find(int x) {
    if (parent[x] == x) return {x, 0};
    auto [root, p] = find(parent[x]);
    parent[x] = root;
    parity[x] ^= p;
    return {root, parity[x]};
  }
  bool unite(int a, int b, int rel) {  // rel = 0: same sign, 1: opposite
    auto [ra, pa] = find(a);
    auto [rb, pb] = find(b);
    if (ra == rb) return (pa ^ pb) == rel;
    parent[ra] = rb;
    parity[ra] = pa ^ pb ^ rel;
    return true;
  }
};

// Collinearity of (e_i a_i, e_j a_j, e_k a_k) for a sign pattern e, up to a
// global sign. The four classes are indexed by which entry of (e_i,e_j,e_k)
// is negative (3 = none). Class c vanishes iff the matching signed sum of
// minors is zero; both the class structure and the per-triple count of
// vanishing classes are invariant under row operations and sign flips.
struct TripleClasses {
  bool vanish[4];
  int count;
};

TripleClasses triple_classes(const MinorTable& mt, int i, int j, int k) {
  const Int D1 = mt.d(i, j);
  const Int D2 = mt.d(i, k);
  const Int D3 = mt.d(j, k);
  TripleClasses tc{};
  tc.vanish[0] = (-D1 + D2 + D3) == 0;  // (-,+,+)
  tc.vanish[1] = (D1 + D2 + D3) == 0;   // (+,-,+)
  tc.vanish[2] = (D1 + D2 - D3) == 0;   // (+,+,-)
  tc.vanish[3] = (D1 - D2 + D3) == 0;   // (+,+,+): a_i, a_j, a_k collinear
  tc.count = tc.vanish[0] + tc.vanish[1] + tc.vanish[2] + tc.vanish[3];
  return tc;
}

// A generic matrix tolerates at most the (+,+,+) collinearity per triple.
// Sign flips permute the classes, so a triple with one vanishing class
// constrains the flip pattern: the flips must move that class to (+,+,+).
// Two or more vanishing classes, or inconsistent constraints, rule out any
// generic equivalent under row operations and sign flips.
bool genericize_obstructed(const WeightMatrix& A) {
  const int n = A.cols();
  MinorTable mt(A);
  ParityDSU dsu(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        TripleClasses tc = triple_classes(mt, i, j, k);
        if (tc.count >= 2) return true;
        if (tc.count == 0) continue;
        int cls = 0;
        while (!tc.vanish[cls]) ++cls;
        int ei = cls == 0 ? 1 : 0, ej = cls == 1 ? 1 : 0, ek = cls == 2 ? 1 : 0;
        if (!dsu.unite(i, j, ei ^ ej)) return true;
        if (!dsu.unite(j, k, ej ^ ek)) return true;
      }
  return false;
}

}  // namespace

GenericizeResult try_genericize(const WeightMatrix& A, int bound) {
  const Faithfulness f = faithfulness(A);
  if (!f.faithful) fail(errc::not_faithful, "genericize requires a faithful matrix");
  if (classify(A).kind == MatrixClass::not_standard_form)
    fail(errc::not_standard_form, "genericize requires standard form");

  {
    MatrixClass k = classify(A).kind;
    if (k == MatrixClass::generic || k == MatrixClass::completely_generic)
      return {A, BasisChangeLog{}, false};
  }
  if (genericize_obstructed(A)) return {std::nullopt, BasisChangeLog{}, true};

  for (int step = 0; step <= 2 * bound; ++step) {
    Int k = kth_candidate(step);
    auto cand = standardize_with_k(A, k);
    if (!cand) continue;
    MatrixClass cls = classify(cand->matrix).kind;
    if (cls == MatrixClass::generic || cls == MatrixClass::completely_generic)
      return {std::move(cand->matrix), std::move(cand->log), false};
  }
  return {std::nullopt, BasisChangeLog{}, false};
}

namespace {

// Columns i, j admit x_i, x_j > 0 with x_i c_i + x_j c_j = 0 iff the columns
// are nonzero, antiproportional and opposed in sign.
bool pair_feasible(const WeightMatrix& A, int i, int j) {
  if (A.column_is_zero(i) || A.column_is_zero(j)) return false;
  if (A.minor(i, j) != 0) return false;
  for (int r = 0; r < 2; ++r) {
    Int prod = A.a(r, i) * A.a(r, j);
    if (prod > 0) return false;
    if (prod < 0) return true;  // determinant zero makes the other row consistent
  }
  return false;
}

}  // namespace

ShellSupport shell_support(const WeightMatrix& A) {
  const int n = A.cols();
  ShellSupport out;

  // Vertices of { r >= 0, sum r = 1, Ar = 0 } have support of size <= 3, so
  // enumerating singletons, pairs and triples is exhaustive.
  for (int i = 0; i < n; ++i)
    if (A.column_is_zero(i)) out.columns.insert(i);

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (pair_feasible(A, i, j)) {
        out.columns.insert(i);
        out.columns.insert(j);
      }

  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        // kernel vector of the column triple, from the 2x2 minors
        Int v[3] = {A.minor(j, k), -A.minor(i, k), A.minor(i, j)};
        int sign = 0;
        bool consistent = true;
        for (const Int& x : v) {
          if (x == 0) continue;
          int s = sgn(x);
          if (sign == 0) sign = s;
          else if (s != sign) consistent = false;
        }
        if (sign == 0 || !consistent) continue;  // rank <= 1 handled by pairs
        const int idx[3] = {i, j, k};
        for (int m = 0; m < 3; ++m)
          if (v[m] != 0) out.columns.insert(idx[m]);
      }

  out.full = static_cast<int>(out.columns.size()) == n;
  return out;
}

bool pluecker_holds(const WeightMatrix& A, int i0, int i1, int i2, int j) {
  return A.minor(i1, i2) * A.minor(i0, j) - A.minor(i0, i2) * A.minor(i1, j) +
             A.minor(i0, i1) * A.minor(i2, j) ==
         0;
}

}  // namespace t2hilb
