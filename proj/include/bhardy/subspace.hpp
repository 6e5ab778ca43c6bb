#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bhardy/hardy.hpp"

namespace bhardy {

// Relative singular-value cutoff for rank decisions.
inline constexpr double kRankTol = 1e-8;
// A rank cut must be backed by at least this gap between kept and dropped.
inline constexpr double kGapRatioMin = 1e3;
// Witness threshold separating genuine invariance from structural non-invariance.
inline constexpr double kNonInvarianceTol = 1e-4;
// Residual bound for returned decompositions.
inline constexpr double kBeurlingTol = 1e-8;

enum class InvarianceAlgebra {
  Full,        // invariance under all powers of B
  Constrained  // invariance under B^2 and B^3 only
};

// A truncated description of the invariant subspace generated by the given
// boundary functions under the chosen algebra.
struct SubspaceSpec {
  BlaschkeProduct blaschke;
  std::vector<BoundaryGrid> generators;
  InvarianceAlgebra algebra = InvarianceAlgebra::Full;
  int m_span = 32;

  SubspaceSpec(BlaschkeProduct b, std::vector<BoundaryGrid> gens, InvarianceAlgebra alg,
               int span = 32);
  std::size_t grid_size() const { return generators.front().size(); }
};

struct OrthonormalFrame {
  std::vector<BoundaryGrid> vectors;
  std::size_t rank() const { return vectors.size(); }
};

struct WanderingResult {
  OrthonormalFrame frame;
  double gap_ratio = 0.0;  // singular-value gap backing the dimension cut
};

struct BeurlingDecomposition {
  int r = 0;
  std::vector<BoundaryGrid> inner_functions;
  BMatrix bmatrix;
  double residual = 0.0;           // max relative generator distance from the span
  double binner_deviation = 0.0;   // pointwise certificate of the B-matrix
};

struct ConstrainedDecomposition {
  int r = 0;
  std::vector<BoundaryGrid> inner_functions;
  int k = 0;
  std::vector<BoundaryGrid> wandering_vectors;
  // 2r x k, row order (J_1, B J_1, J_2, B J_2, ..., J_r, B J_r).
  Eigen::MatrixXcd coefficient_matrix;
  double residual = 0.0;
  double b_invariance_witness = 0.0;
  double dimension_gap_ratio = 0.0;  // gap behind dim(M_1 - B^2 M_1) = 2r
  bool k_equals_2r_minus_1 = false;
};

// The Constrained hypothesis failed: the subspace is invariant under all of
// H^inf(B); callers should use beurling_decompose.
struct FullyInvariant {
  int r = 0;
  int k = 0;
  double b_invariance_witness = 0.0;
};

using ConstrainedOutcome = std::variant<ConstrainedDecomposition, FullyInvariant>;

// Orthonormal frame of span{B^m g_i : m in shift_set} (raw truncated span).
OrthonormalFrame span_frame(const SubspaceSpec& spec, const std::vector<int>& shift_set);

// Frame of M' - B^s M' where M' realizes the Full-algebra closure of the spec.
WanderingResult wandering(const SubspaceSpec& spec, int s);

BeurlingDecomposition beurling_decompose(const SubspaceSpec& spec);
ConstrainedOutcome constrained_decompose(const SubspaceSpec& spec);

struct PNormResidual {
  double p = 2.0;
  double residual = 0.0;
  std::optional<double> metric;  // residual^p, reported for p < 1
};

struct VerificationReport {
  std::vector<double> generator_residuals;  // relative, against the model span
  double unitarity_deviation = 0.0;         // max |(A*A - I)_{ij}|
  double b_invariance_witness = 0.0;
  double orthogonality_residual = 0.0;      // <phi_j, B^{2+m} J_l> leakage
  bool odd_row_nonvanishing = false;
  std::string odd_row_interpretation;
  std::vector<PNormResidual> p_residuals;
};

VerificationReport verify_decomposition(const SubspaceSpec& spec,
                                        const ConstrainedDecomposition& dec,
                                        const std::vector<double>& extra_p = {});
VerificationReport verify_decomposition(const SubspaceSpec& spec, const BeurlingDecomposition& dec,
                                        const std::vector<double>& extra_p = {});
VerificationReport verify_decomposition(const SubspaceSpec& spec, const ConstrainedOutcome& outcome,
                                        const std::vector<double>& extra_p = {});

struct UnitaryMatch {
  Eigen::MatrixXcd unitary;  // r x r with J1_i ~ sum_j U_ij J2_j
  double residual = 0.0;     // max of ||U*U - I|| and the fit residual
};
UnitaryMatch uniqueness_unitary(const BeurlingDecomposition& a, const BeurlingDecomposition& b);

}  // namespace bhardy
