#pragma once

#include <Eigen/Dense>

#include <vector>

#include "bhardy/circle.hpp"

namespace bhardy {

// Roots of a complex polynomial (coefficients by increasing power) via the
// companion matrix. Leading/trailing coefficients below tol*max|c| are trimmed;
// trimmed trailing zeros contribute roots at 0.
std::vector<cd> poly_roots(const std::vector<cd>& coeffs, double trim_tol = 1e-13);

std::vector<cd> poly_multiply(const std::vector<cd>& a, const std::vector<cd>& b);
cd poly_eval(const std::vector<cd>& coeffs, cd z);

// Autocorrelation c_k = sum_j sum_t G(j, t+k) conj(G(j, t)) of a vector
// polynomial (rows = components, cols = powers); on the circle
// sum_j |G_j(w)|^2 = sum_k c_k w^k with c_{-k} = conj(c_k).
// Returns the nonnegative side c_0..c_d.
std::vector<cd> autocorrelation(const Eigen::MatrixXcd& cols);

// Outer polynomial o with |o(w)|^2 = sum_k c_k w^k on |w| = 1: no roots in the
// open disk; boundary roots carry half of their (even) multiplicity.
struct OuterFactor {
  std::vector<cd> coefficients;    // o by increasing power, o(0) real positive
  std::vector<cd> outside_roots;   // |rho| > 1
  std::vector<cd> boundary_roots;  // |rho| = 1, listed with half multiplicity
  double scale = 1.0;              // leading normalization gamma > 0
};
OuterFactor outer_spectral_factor(const std::vector<cd>& autocorr, double boundary_band = 1e-4);

// A column vector of rational functions Lambda = numerator(w) / (gamma *
// prod(w - rho)) with all poles strictly outside the closed disk and
// |Lambda(w)|_{C^n} = 1 a.e. on the circle.
struct InnerColumn {
  Eigen::MatrixXcd numerator;      // rows = components, cols = powers
  std::vector<cd> denominator_roots;
  double scale = 1.0;

  int rows() const { return static_cast<int>(numerator.rows()); }
  Eigen::VectorXcd eval(cd w) const;
  // Taylor coefficients through degree `window` (rows = components).
  Eigen::MatrixXcd taylor(int window) const;
  // Window beyond which Taylor tails fall under tol.
  int needed_window(double tol = 1e-15) const;
};

// Inner part of a vector polynomial: divides the outer spectral factor of the
// autocorrelation out of G, so that span closure{w^m G} = InnerColumn * H^2.
InnerColumn purify(const Eigen::MatrixXcd& component_poly, double boundary_band = 1e-4);

}  // namespace bhardy
