#pragma once

#include <vector>

#include "bhardy/blaschke.hpp"
#include "bhardy/circle.hpp"

namespace bhardy {

// Pointwise tolerance for the B-inner certificates.
inline constexpr double kBInnerTol = 1e-8;

// The largest truncation order with n*(m_max+1) <= grid_size/8.
int truncation_budget(const BlaschkeProduct& b, std::size_t grid_size);

// Components of f under H^2 = sum_j e_{j0} H^2(B): f = sum_j e_{j0} f_j(B).
struct ComponentVector {
  BlaschkeProduct blaschke;
  std::vector<CoefficientSeries> components;  // n series tagged B, length m_max+1

  int truncation_order() const {
    return static_cast<int>(components.front().size()) - 1;
  }
};

// The n x r matrix of component functions of an r-tuple.
struct BMatrix {
  BlaschkeProduct blaschke;
  // entries[j][i] = component j of tuple element i (column-major by tuple index)
  std::vector<std::vector<CoefficientSeries>> columns;  // r columns of n series each

  std::size_t rows() const { return static_cast<std::size_t>(blaschke.degree()); }
  std::size_t cols() const { return columns.size(); }
};

ComponentVector decompose(const BoundaryGrid& f, const BlaschkeProduct& b, int m_max);
BoundaryGrid reconstruct(const ComponentVector& cv, std::size_t grid_size);
// Grid samples of a single component composed with B, i.e. f_j(B(zeta)).
BoundaryGrid component_grid(const ComponentVector& cv, int j, std::size_t grid_size);

BMatrix bmatrix(const std::vector<BoundaryGrid>& tuple, const BlaschkeProduct& b, int m_max);

struct BInnerMatrixCertificate {
  bool b_inner = false;
  double max_deviation = 0.0;  // max over grid of ||A(z)*A(z) - I||, entrywise
};
BInnerMatrixCertificate is_b_inner_matrix(const BMatrix& a, std::size_t grid_size,
                                          double tol = kBInnerTol);

struct BInnerFunctionCertificate {
  bool b_inner = false;
  double pointwise_deviation = 0.0;  // max over grid of |sum_j |psi_j(B)|^2 - 1|
  double gram_deviation = 0.0;       // Gram of {B^m psi : m <= 8} vs identity
};
BInnerFunctionCertificate is_b_inner_function(const BoundaryGrid& psi, const BlaschkeProduct& b,
                                              int m_max, std::size_t grid_size,
                                              double tol = kBInnerTol);

// Ratios ||f_j||_p / ||f||_p; component norms are taken in the H^p of the
// composition variable. Diagnostic only, no threshold.
std::vector<double> component_norm_report(const BoundaryGrid& f, const BlaschkeProduct& b, PNorm p,
                                          int m_max);

// Entrywise deviation of the Gram matrix of {e_{jm} : j < n, m <= m_max} from
// the identity.
double basis_gram_deviation(const BlaschkeProduct& b, int m_max, std::size_t grid_size);

}  // namespace bhardy
