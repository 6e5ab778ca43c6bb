#include "bhardy/blaschke.hpp"

#include <cmath>

namespace bhardy {

BlaschkeProduct::BlaschkeProduct(std::vector<cd> zeros, BlaschkeOptions options)
    : zeros_(std::move(zeros)) {
  if (zeros_.empty()) {
    throw ValidationError("BlaschkeProduct: at least one zero required");
  }
  if (std::abs(zeros_.front()) != 0.0) {
    throw ValidationError("BlaschkeProduct: the first zero must be 0");
  }
  for (const cd& a : zeros_) {
    if (!(std::abs(a) < options.max_zero_modulus)) {
      throw ValidationError("BlaschkeProduct: zero modulus " + std::to_string(std::abs(a)) +
                            " exceeds the limit " + std::to_string(options.max_zero_modulus));
    }
  }
}

cd BlaschkeProduct::eval(cd z) const { return partial_eval(degree(), z); }

cd BlaschkeProduct::partial_eval(int j, cd z) const {
  if (j < 0 || j > degree()) {
    throw ValidationError("partial_eval: index out of range");
  }
  if (std::abs(z) > 1.0 + 1e-9) {
    throw ValidationError("BlaschkeProduct: evaluation point outside the closed disk");
  }
  cd acc = 1.0;
  for (int i = 0; i < j; ++i) {
    acc *= (z - zeros_[static_cast<std::size_t>(i)]) /
           (1.0 - std::conj(zeros_[static_cast<std::size_t>(i)]) * z);
  }
  return acc;
}

BoundaryGrid BlaschkeProduct::boundary(std::size_t grid_size) const {
  return partial_boundary(degree(), grid_size);
}

BoundaryGrid BlaschkeProduct::partial_boundary(int j, std::size_t grid_size) const {
  if (j < 0 || j > degree()) {
    throw ValidationError("partial_boundary: index out of range");
  }
  const std::vector<cd> pts = unit_circle(grid_size);
  std::vector<cd> out(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    cd acc = 1.0;
    for (int f = 0; f < j; ++f) {
      acc *= (pts[i] - zeros_[static_cast<std::size_t>(f)]) /
             (1.0 - std::conj(zeros_[static_cast<std::size_t>(f)]) * pts[i]);
    }
    out[i] = acc;
  }
  return BoundaryGrid(std::move(out), /*analytic=*/true);
}

BoundaryGrid basis_element(const BlaschkeProduct& b, BasisIndex idx, std::size_t grid_size) {
  if (idx.j < 0 || idx.j >= b.degree() || idx.m < 0) {
    throw ValidationError("basis_element: index out of range");
  }
  const cd alpha = b.zeros()[static_cast<std::size_t>(idx.j)];
  const double prefactor = std::sqrt(1.0 - std::norm(alpha));
  const std::vector<cd> pts = unit_circle(grid_size);
  const BoundaryGrid bj = b.partial_boundary(idx.j, grid_size);
  const BoundaryGrid bn = b.boundary(grid_size);
  std::vector<cd> out(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    cd v = prefactor / (1.0 - std::conj(alpha) * pts[i]) * bj[i];
    for (int m = 0; m < idx.m; ++m) v *= bn[i];
    out[i] = v;
  }
  return BoundaryGrid(std::move(out), /*analytic=*/true);
}

BoundaryGrid compose(const CoefficientSeries& h, const BoundaryGrid& w_values) {
  std::vector<cd> out(w_values.size());
  for (std::size_t i = 0; i < w_values.size(); ++i) {
    out[i] = h.eval(w_values[i]);
  }
  return BoundaryGrid(std::move(out), w_values.analytic());
}

BoundaryGrid compose(const CoefficientSeries& h, const BlaschkeProduct& b, std::size_t grid_size) {
  return compose(h, b.boundary(grid_size));
}

}  // namespace bhardy
