#include "bhardy/hardy.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace bhardy {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

}  // namespace

int truncation_budget(const BlaschkeProduct& b, std::size_t grid_size) {
  return static_cast<int>(grid_size / (8 * static_cast<std::size_t>(b.degree()))) - 1;
}

ComponentVector decompose(const BoundaryGrid& f, const BlaschkeProduct& b, int m_max) {
  if (!f.analytic()) {
    throw ValidationError("decompose: input grid must be tagged analytic");
  }
  if (m_max < 0) {
    throw ValidationError("decompose: negative truncation order");
  }
  const int n = b.degree();
  if (static_cast<std::size_t>(n) * static_cast<std::size_t>(m_max + 1) > f.size() / 8) {
    throw TruncationArtifactError("decompose: truncation budget exceeded (n*(m_max+1) > N/8)");
  }
  const std::size_t grid_size = f.size();
  const BoundaryGrid bn_conj = conjugate(b.boundary(grid_size));

  ComponentVector cv{b, {}};
  cv.components.reserve(static_cast<std::size_t>(n));
  std::vector<cd> walker(grid_size);
  for (int j = 0; j < n; ++j) {
    // c_{jm} = <f, e_{j0} B^m>: walk f * conj(e_{j0}) * conj(B)^m over m.
    const BoundaryGrid ej0 = basis_element(b, BasisIndex{j, 0}, grid_size);
    for (std::size_t i = 0; i < grid_size; ++i) {
      walker[i] = f[i] * std::conj(ej0[i]);
    }
    std::vector<cd> c(static_cast<std::size_t>(m_max + 1));
    for (int m = 0; m <= m_max; ++m) {
      cd acc = 0.0;
      for (std::size_t i = 0; i < grid_size; ++i) acc += walker[i];
      c[static_cast<std::size_t>(m)] = acc / static_cast<double>(grid_size);
      if (m < m_max) {
        for (std::size_t i = 0; i < grid_size; ++i) walker[i] *= bn_conj[i];
      }
    }
    cv.components.emplace_back(std::move(c), VariableTag::B);
  }
  return cv;
}

BoundaryGrid reconstruct(const ComponentVector& cv, std::size_t grid_size) {
  const BlaschkeProduct& b = cv.blaschke;
  const BoundaryGrid bn = b.boundary(grid_size);
  std::vector<cd> out(grid_size, cd(0.0));
  for (int j = 0; j < b.degree(); ++j) {
    const BoundaryGrid ej0 = basis_element(b, BasisIndex{j, 0}, grid_size);
    const CoefficientSeries& fj = cv.components[static_cast<std::size_t>(j)];
    for (std::size_t i = 0; i < grid_size; ++i) {
      out[i] += ej0[i] * fj.eval(bn[i]);
    }
  }
  return BoundaryGrid(std::move(out), /*analytic=*/true);
}

BoundaryGrid component_grid(const ComponentVector& cv, int j, std::size_t grid_size) {
  if (j < 0 || j >= cv.blaschke.degree()) {
    throw ValidationError("component_grid: index out of range");
  }
  return compose(cv.components[static_cast<std::size_t>(j)], cv.blaschke, grid_size);
}

BMatrix bmatrix(const std::vector<BoundaryGrid>& tuple, const BlaschkeProduct& b, int m_max) {
  if (tuple.empty()) {
    throw ValidationError("bmatrix: empty tuple");
  }
  if (tuple.size() > static_cast<std::size_t>(b.degree())) {
    throw ValidationError("bmatrix: tuple size exceeds the Blaschke degree");
  }
  BMatrix a{b, {}};
  a.columns.reserve(tuple.size());
  for (const BoundaryGrid& g : tuple) {
    a.columns.push_back(decompose(g, b, m_max).components);
  }
  return a;
}

BInnerMatrixCertificate is_b_inner_matrix(const BMatrix& a, std::size_t grid_size, double tol) {
  const int n = static_cast<int>(a.rows());
  const int r = static_cast<int>(a.cols());
  const BoundaryGrid bn = a.blaschke.boundary(grid_size);
  MatrixXcd values(n, r);
  double deviation = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    for (int col = 0; col < r; ++col) {
      for (int row = 0; row < n; ++row) {
        values(row, col) =
            a.columns[static_cast<std::size_t>(col)][static_cast<std::size_t>(row)].eval(bn[i]);
      }
    }
    const MatrixXcd gram = values.adjoint() * values;
    for (int p = 0; p < r; ++p) {
      for (int q = 0; q < r; ++q) {
        const cd expect = (p == q) ? cd(1.0) : cd(0.0);
        deviation = std::max(deviation, std::abs(gram(p, q) - expect));
      }
    }
  }
  return BInnerMatrixCertificate{deviation <= tol, deviation};
}

BInnerFunctionCertificate is_b_inner_function(const BoundaryGrid& psi, const BlaschkeProduct& b,
                                              int m_max, std::size_t grid_size, double tol) {
  const ComponentVector cv = decompose(psi, b, m_max);
  const BoundaryGrid bn = b.boundary(grid_size);

  double pointwise = 0.0;
  for (std::size_t i = 0; i < grid_size; ++i) {
    double sum = 0.0;
    for (const CoefficientSeries& comp : cv.components) {
      sum += std::norm(comp.eval(bn[i]));
    }
    pointwise = std::max(pointwise, std::abs(sum - 1.0));
  }

  constexpr int kGramShifts = 8;
  std::vector<BoundaryGrid> shifts;
  shifts.reserve(kGramShifts + 1);
  shifts.push_back(psi);
  for (int m = 1; m <= kGramShifts; ++m) {
    shifts.push_back(shifts.back() * bn);
  }
  double gram_dev = 0.0;
  for (int p = 0; p <= kGramShifts; ++p) {
    for (int q = 0; q <= kGramShifts; ++q) {
      const cd expect = (p == q) ? cd(1.0) : cd(0.0);
      gram_dev = std::max(gram_dev, std::abs(inner_product(shifts[static_cast<std::size_t>(p)],
                                                           shifts[static_cast<std::size_t>(q)]) -
                                             expect));
    }
  }
  return BInnerFunctionCertificate{pointwise <= tol && gram_dev <= tol, pointwise, gram_dev};
}

double basis_gram_deviation(const BlaschkeProduct& b, int m_max, std::size_t grid_size) {
  const int n = b.degree();
  const BoundaryGrid bn = b.boundary(grid_size);
  const Eigen::Index cols = static_cast<Eigen::Index>(n * (m_max + 1));
  MatrixXcd basis(static_cast<Eigen::Index>(grid_size), cols);
  for (int j = 0; j < n; ++j) {
    const BoundaryGrid ej0 = basis_element(b, BasisIndex{j, 0}, grid_size);
    const Eigen::Index base = static_cast<Eigen::Index>(j * (m_max + 1));
    for (std::size_t i = 0; i < grid_size; ++i) {
      basis(static_cast<Eigen::Index>(i), base) = ej0[i];
    }
    for (int m = 1; m <= m_max; ++m) {
      for (std::size_t i = 0; i < grid_size; ++i) {
        basis(static_cast<Eigen::Index>(i), base + m) =
            basis(static_cast<Eigen::Index>(i), base + m - 1) * bn[i];
      }
    }
  }
  const MatrixXcd gram = basis.adjoint() * basis / static_cast<double>(grid_size);
  double deviation = 0.0;
  for (Eigen::Index p = 0; p < cols; ++p) {
    for (Eigen::Index q = 0; q < cols; ++q) {
      const cd expect = (p == q) ? cd(1.0) : cd(0.0);
      deviation = std::max(deviation, std::abs(gram(p, q) - expect));
    }
  }
  return deviation;
}

std::vector<double> component_norm_report(const BoundaryGrid& f, const BlaschkeProduct& b, PNorm p,
                                          int m_max) {
  const double denom = hp_norm(f, p);
  if (denom <= 0.0) {
    throw ValidationError("component_norm_report: zero input");
  }
  const ComponentVector cv = decompose(f, b, m_max);
  std::vector<double> ratios;
  ratios.reserve(cv.components.size());
  for (const CoefficientSeries& comp : cv.components) {
    CoefficientSeries as_z(comp.coefficients, VariableTag::Z);
    ratios.push_back(hp_norm(synthesize(as_z, f.size()), p) / denom);
  }
  return ratios;
}

}  // namespace bhardy
