#pragma once

#include <vector>

#include "bhardy/circle.hpp"

namespace bhardy {

struct BlaschkeOptions {
  // Zeros this close to the circle produce boundary peaks the default grid
  // cannot resolve below kGridTol.
  double max_zero_modulus = 0.95;
};

// Finite Blaschke product B(z) = prod (z - a_j) / (1 - conj(a_j) z), a_1 = 0.
class BlaschkeProduct {
 public:
  explicit BlaschkeProduct(std::vector<cd> zeros, BlaschkeOptions options = {});

  int degree() const { return static_cast<int>(zeros_.size()); }
  const std::vector<cd>& zeros() const { return zeros_; }

  cd eval(cd z) const;
  // Product of the first j factors; j = 0 gives 1, j = degree() gives eval.
  cd partial_eval(int j, cd z) const;

  // Boundary samples of B and of the partial product B_j.
  BoundaryGrid boundary(std::size_t grid_size) const;
  BoundaryGrid partial_boundary(int j, std::size_t grid_size) const;

 private:
  std::vector<cd> zeros_;
};

// Index of the Theorem-1 style basis element e_{jm}.
struct BasisIndex {
  int j = 0;  // 0 <= j <= n-1
  int m = 0;  // m >= 0
};

// e_{jm} = (1-|a_{j+1}|^2)^{1/2} (1 - conj(a_{j+1}) z)^{-1} B_j B^m sampled on the grid.
BoundaryGrid basis_element(const BlaschkeProduct& b, BasisIndex idx, std::size_t grid_size);

// Samples of h(w) at the given w-values (Horner).
BoundaryGrid compose(const CoefficientSeries& h, const BoundaryGrid& w_values);
// Samples of h(B(zeta)) on the grid-size roots of unity.
BoundaryGrid compose(const CoefficientSeries& h, const BlaschkeProduct& b, std::size_t grid_size);

}  // namespace bhardy
