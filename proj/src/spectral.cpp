#include "bhardy/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bhardy {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

double max_abs(const std::vector<cd>& c) {
  double m = 0.0;
  for (const cd& v : c) m = std::max(m, std::abs(v));
  return m;
}

// phi(theta) = c_0 + 2 Re sum_{k>=1} c_k e^{i k theta}, with derivatives.
struct TrigPoly {
  std::vector<cd> c;  // nonnegative side

  double value(double theta) const {
    double acc = c[0].real();
    for (std::size_t k = 1; k < c.size(); ++k) {
      acc += 2.0 * (c[k] * std::polar(1.0, theta * static_cast<double>(k))).real();
    }
    return acc;
  }
  double derivative(double theta, int order) const {
    double acc = 0.0;
    for (std::size_t k = 1; k < c.size(); ++k) {
      const double kk = static_cast<double>(k);
      cd term = c[k] * std::polar(1.0, theta * kk);
      for (int d = 0; d < order; ++d) term *= cd(0.0, kk);
      acc += 2.0 * term.real();
    }
    return acc;
  }
};

// Divide p by (w - root); returns quotient, stores the remainder.
std::vector<cd> synthetic_divide(const std::vector<cd>& p, cd root, cd* remainder) {
  if (p.size() <= 1) {
    *remainder = p.empty() ? cd(0.0) : p[0];
    return {};
  }
  std::vector<cd> q(p.size() - 1);
  cd carry = p.back();
  for (std::size_t t = p.size() - 1; t-- > 0;) {
    q[t] = carry;
    carry = p[t] + root * carry;
  }
  *remainder = carry;
  return q;
}

}  // namespace

std::vector<cd> poly_multiply(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<cd> out(a.size() + b.size() - 1, cd(0.0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out[i + j] += a[i] * b[j];
    }
  }
  return out;
}

cd poly_eval(const std::vector<cd>& coeffs, cd z) {
  cd acc = 0.0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * z + *it;
  return acc;
}

std::vector<cd> poly_roots(const std::vector<cd>& coeffs, double trim_tol) {
  const double scale = max_abs(coeffs);
  if (scale == 0.0) {
    throw ValidationError("poly_roots: zero polynomial");
  }
  std::size_t hi = coeffs.size();
  while (hi > 1 && std::abs(coeffs[hi - 1]) <= trim_tol * scale) --hi;
  std::size_t lo = 0;
  while (lo + 1 < hi && std::abs(coeffs[lo]) <= trim_tol * scale) ++lo;

  std::vector<cd> roots(lo, cd(0.0));  // factored powers of w
  const std::size_t deg = hi - 1 - lo;
  if (deg == 0) return roots;

  MatrixXcd companion = MatrixXcd::Zero(static_cast<Eigen::Index>(deg),
                                        static_cast<Eigen::Index>(deg));
  const cd lead = coeffs[hi - 1];
  for (std::size_t i = 0; i + 1 < deg; ++i) {
    companion(static_cast<Eigen::Index>(i + 1), static_cast<Eigen::Index>(i)) = 1.0;
  }
  for (std::size_t i = 0; i < deg; ++i) {
    companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(deg - 1)) =
        -coeffs[lo + i] / lead;
  }
  Eigen::ComplexEigenSolver<MatrixXcd> solver(companion, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("poly_roots: eigenvalue iteration failed");
  }
  for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
    roots.push_back(solver.eigenvalues()(i));
  }
  return roots;
}

std::vector<cd> autocorrelation(const Eigen::MatrixXcd& cols) {
  const Eigen::Index d = cols.cols() - 1;
  std::vector<cd> c(static_cast<std::size_t>(d + 1), cd(0.0));
  for (Eigen::Index k = 0; k <= d; ++k) {
    cd acc = 0.0;
    for (Eigen::Index t = 0; t + k <= d; ++t) {
      acc += (cols.col(t + k).cwiseProduct(cols.col(t).conjugate())).sum();
    }
    c[static_cast<std::size_t>(k)] = acc;
  }
  return c;
}

OuterFactor outer_spectral_factor(const std::vector<cd>& autocorr, double boundary_band) {
  if (autocorr.empty() || max_abs(autocorr) == 0.0) {
    throw ValidationError("outer_spectral_factor: zero symbol");
  }
  TrigPoly phi{autocorr};

  // Trim the Laurent degree so the top coefficient is genuinely nonzero.
  std::size_t d = autocorr.size() - 1;
  const double scale = max_abs(autocorr);
  while (d > 0 && std::abs(autocorr[d]) <= 1e-13 * scale) --d;

  OuterFactor out;
  if (d == 0) {
    if (autocorr[0].real() <= 0.0) {
      throw NumericalError("outer_spectral_factor: symbol not positive");
    }
    out.scale = std::sqrt(autocorr[0].real());
    out.coefficients = {cd(out.scale)};
    return out;
  }

  // Roots of w^d * phi(w), a degree-2d polynomial with conjugate-reciprocal
  // root pairing; boundary roots of phi have even multiplicity.
  std::vector<cd> laurent(2 * d + 1);
  for (std::size_t k = 0; k <= d; ++k) {
    laurent[d + k] = autocorr[k];
    laurent[d - k] = std::conj(autocorr[k]);
  }
  const std::vector<cd> roots = poly_roots(laurent);

  std::vector<cd> outside;
  std::vector<double> boundary_angles;
  std::size_t inside_count = 0;
  for (const cd& rho : roots) {
    const double r = std::abs(rho);
    if (r > 1.0 + boundary_band) {
      outside.push_back(rho);
    } else if (r < 1.0 - boundary_band) {
      ++inside_count;
    } else {
      boundary_angles.push_back(std::arg(rho));
    }
  }
  if (boundary_angles.size() % 2 != 0) {
    throw NumericalError("outer_spectral_factor: odd boundary root count (band too wide or symbol indefinite)");
  }

  // Cluster boundary candidates by angle and polish each location with Newton
  // on phi' (phi >= 0, so boundary roots are minima).
  std::sort(boundary_angles.begin(), boundary_angles.end());
  std::vector<std::pair<double, std::size_t>> clusters;  // angle, total multiplicity
  for (double a : boundary_angles) {
    if (!clusters.empty() &&
        std::abs(std::remainder(a - clusters.back().first, 2.0 * std::numbers::pi)) < 1e-3) {
      auto& last = clusters.back();
      last.first += (a - last.first) / static_cast<double>(last.second + 1);
      ++last.second;
    } else {
      clusters.emplace_back(a, 1);
    }
  }
  for (auto& [angle, mult] : clusters) {
    if (mult % 2 != 0) {
      throw NumericalError("outer_spectral_factor: boundary cluster with odd multiplicity");
    }
    double theta = angle;
    for (int it = 0; it < 60; ++it) {
      const double g = phi.derivative(theta, 1);
      const double h = phi.derivative(theta, 2);
      if (h <= 0.0) break;
      const double step = g / h;
      theta -= step;
      if (std::abs(step) < 1e-15) break;
    }
    if (std::abs(phi.value(theta)) > 1e-8 * scale) {
      throw NumericalError("outer_spectral_factor: boundary candidate is not a zero of the symbol");
    }
    angle = theta;
  }

  std::size_t boundary_half = 0;
  for (const auto& [angle, mult] : clusters) {
    for (std::size_t i = 0; i < mult / 2; ++i) {
      out.boundary_roots.push_back(std::polar(1.0, angle));
    }
    boundary_half += mult / 2;
  }
  if (inside_count != outside.size()) {
    throw NumericalError("outer_spectral_factor: inside/outside root pairing failed");
  }
  out.outside_roots = std::move(outside);

  // Normalize so |o|^2 = phi; fix gamma at the sample angle farthest from roots.
  std::vector<cd> all_kept = out.outside_roots;
  all_kept.insert(all_kept.end(), out.boundary_roots.begin(), out.boundary_roots.end());
  double best_theta = 0.0, best_dist = -1.0;
  for (int s = 0; s < 32; ++s) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(s) + 0.37) / 32.0;
    double dist = std::numeric_limits<double>::infinity();
    for (const cd& rho : all_kept) {
      dist = std::min(dist, std::abs(std::polar(1.0, theta) - rho));
    }
    if (dist > best_dist) {
      best_dist = dist;
      best_theta = theta;
    }
  }
  const cd zeta = std::polar(1.0, best_theta);
  double denom = 1.0;
  for (const cd& rho : all_kept) denom *= std::norm(zeta - rho);
  const double phi_val = phi.value(best_theta);
  if (!(phi_val > 0.0) || denom <= 0.0) {
    throw NumericalError("outer_spectral_factor: could not normalize the factor");
  }
  out.scale = std::sqrt(phi_val / denom);

  out.coefficients = {cd(out.scale)};
  for (const cd& rho : all_kept) {
    out.coefficients = poly_multiply(out.coefficients, {-rho, cd(1.0)});
  }
  // Convention: o(0) real and positive.
  const cd at_zero = poly_eval(out.coefficients, cd(0.0));
  if (std::abs(at_zero) > 0.0) {
    const cd phase = at_zero / std::abs(at_zero);
    for (cd& coeff : out.coefficients) coeff /= phase;
  }

  // Certify |o|^2 = phi at interleaved sample angles.
  for (int s = 0; s < 17; ++s) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(s) + 0.21) / 17.0;
    const double lhs = std::norm(poly_eval(out.coefficients, std::polar(1.0, theta)));
    const double rhs = phi.value(theta);
    if (std::abs(lhs - rhs) > 1e-8 * std::max(1.0, scale)) {
      throw NumericalError("outer_spectral_factor: factor certificate failed");
    }
  }
  return out;
}

Eigen::VectorXcd InnerColumn::eval(cd w) const {
  VectorXcd num(numerator.rows());
  for (Eigen::Index j = 0; j < numerator.rows(); ++j) {
    cd acc = 0.0;
    for (Eigen::Index t = numerator.cols(); t-- > 0;) {
      acc = acc * w + numerator(j, t);
    }
    num(j) = acc;
  }
  cd den = scale;
  for (const cd& rho : denominator_roots) den *= (w - rho);
  return num / den;
}

int InnerColumn::needed_window(double tol) const {
  double rate = 0.0;  // max |1/rho|
  for (const cd& rho : denominator_roots) rate = std::max(rate, 1.0 / std::abs(rho));
  int window = static_cast<int>(numerator.cols()) + 8;
  if (rate > 0.0) {
    const double extra = std::log(tol) / std::log(rate);
    if (!(extra > 0.0) || extra > 16384.0) {
      throw TruncationArtifactError(
          "InnerColumn: denominator root too close to the circle for a certified window");
    }
    window += static_cast<int>(extra) + 8;
  }
  return window;
}

Eigen::MatrixXcd InnerColumn::taylor(int window) const {
  MatrixXcd out = MatrixXcd::Zero(numerator.rows(), window + 1);
  const Eigen::Index copy = std::min<Eigen::Index>(numerator.cols(), window + 1);
  out.leftCols(copy) = numerator.leftCols(copy) / scale;
  for (const cd& rho : denominator_roots) {
    // Divide the series by (w - rho): r_t = (r_{t-1} - p_t) / rho.
    for (Eigen::Index j = 0; j < out.rows(); ++j) {
      cd prev = 0.0;
      for (Eigen::Index t = 0; t <= window; ++t) {
        const cd val = (prev - out(j, t)) / rho;
        out(j, t) = val;
        prev = val;
      }
    }
  }
  return out;
}

InnerColumn purify(const Eigen::MatrixXcd& component_poly, double boundary_band) {
  // Trim trailing columns of numerical dust.
  const double scale = component_poly.cwiseAbs().maxCoeff();
  if (scale <= 0.0) {
    throw ValidationError("purify: zero generator");
  }
  Eigen::Index cols = component_poly.cols();
  while (cols > 1 && component_poly.col(cols - 1).cwiseAbs().maxCoeff() <= 1e-12 * scale) --cols;
  MatrixXcd g = component_poly.leftCols(cols);

  const OuterFactor outer = outer_spectral_factor(autocorrelation(g), boundary_band);

  InnerColumn lambda;
  lambda.scale = outer.scale;
  lambda.denominator_roots = outer.outside_roots;

  // Boundary factors divide the numerator exactly (every component vanishes
  // where the modulus symbol does).
  std::vector<std::vector<cd>> rows(static_cast<std::size_t>(g.rows()));
  for (Eigen::Index j = 0; j < g.rows(); ++j) {
    rows[static_cast<std::size_t>(j)].assign(g.row(j).begin(), g.row(j).end());
  }
  for (const cd& b : outer.boundary_roots) {
    for (auto& row : rows) {
      cd remainder;
      row = synthetic_divide(row, b, &remainder);
      if (std::abs(remainder) > 1e-7 * scale) {
        throw NumericalError("purify: boundary factor does not divide the generator");
      }
      if (row.empty()) row = {cd(0.0)};
    }
  }
  Eigen::Index num_cols = 0;
  for (const auto& row : rows) {
    num_cols = std::max<Eigen::Index>(num_cols, static_cast<Eigen::Index>(row.size()));
  }
  lambda.numerator = MatrixXcd::Zero(g.rows(), num_cols);
  for (Eigen::Index j = 0; j < g.rows(); ++j) {
    const auto& row = rows[static_cast<std::size_t>(j)];
    for (std::size_t t = 0; t < row.size(); ++t) {
      lambda.numerator(j, static_cast<Eigen::Index>(t)) = row[t];
    }
  }

  // Certify |Lambda| = 1 on the circle.
  for (int s = 0; s < 23; ++s) {
    const double theta = 2.0 * std::numbers::pi * (static_cast<double>(s) + 0.41) / 23.0;
    const double norm = lambda.eval(std::polar(1.0, theta)).norm();
    if (std::abs(norm - 1.0) > 1e-7) {
      throw NumericalError("purify: inner certificate failed (|Lambda| != 1 on the circle)");
    }
  }
  return lambda;
}

}  // namespace bhardy
