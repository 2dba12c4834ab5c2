#pragma once

#include <optional>

#include "t2hilb/factored.hpp"
#include "t2hilb/series.hpp"
#include "t2hilb/weights.hpp"

namespace t2hilb {

struct HilbertOptions {
  int genericize_bound = 10;
};

// The standard-form generic representative the pipeline actually ran on,
// with the basis changes that produced it from the input.
struct PipelineMatrix {
  WeightMatrix matrix;
  BasisChangeLog log;  // standardization followed by genericization moves
};

PipelineMatrix generic_representative(const WeightMatrix& A, const HilbertOptions& opt = {});

// Exact closed form of the Hilbert series of the degree-graded algebra
// attached to the cotangent lift of A (constant term 1).
HilbertSeries hilbert_on(const WeightMatrix& A, const HilbertOptions& opt = {});

// hilbert_on / (1 - t^2)^2, cancelled into canonical form.
HilbertSeries hilbert_off(const WeightMatrix& A, const HilbertOptions& opt = {});

struct HilbertReport {
  HilbertSeries on_shell;
  HilbertSeries off_shell;
  std::int64_t pole_order = 0;
  LaurentExpansion gammas;
  std::optional<BasisChangeLog> genericized_from;  // present when basis changes were needed
  bool describes_M0 = false;  // shell support of the original matrix is full
};

// Runs the full pipeline and checks the structural facts: pole order 2n - 4,
// gamma_1 = 0, gamma_2 = gamma_3, palindromic canonical numerator.
HilbertReport analyze(const WeightMatrix& A, int M = 3, const HilbertOptions& opt = {});

// Single term (U_{d,s} o U_{d,t})(Phi_ij)|_{s=t} of the sum, computed by the
// sectioning-operator pipeline. Exposed for tests.
UnivariateRational hilbert_term(const WeightMatrix& generic_matrix, int i, int j);

// The same term evaluated as the root-of-unity residue sum directly: by
// character orthogonality it is the generating function of lattice points
// filtered by two congruences mod d_ij, with denominator
// prod_k (1 - t^{|c_k|/gcd(d, a_k, b_k)}). Cheaper than sectioning when the
// expansion degree d * deg Q would explode.
UnivariateRational hilbert_term_residue_sum(const WeightMatrix& generic_matrix, int i, int j);

}  // namespace t2hilb
