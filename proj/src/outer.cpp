#include "bhardy/outer.hpp"

#include <algorithm>
#include <cmath>

#include "bhardy/hardy.hpp"

namespace bhardy {

namespace {

// exp(-(u + i*conj(u))) for real grid data u.
BoundaryGrid exp_minus_analytic_completion(const BoundaryGrid& u) {
  const BoundaryGrid conj_u = harmonic_conjugate(u);
  std::vector<cd> out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    out[i] = std::exp(-cd(u[i].real(), conj_u[i].real()));
  }
  return BoundaryGrid(std::move(out), /*analytic=*/true);
}

// Evaluate an analytic grid at arbitrary points via its Taylor coefficients.
CoefficientSeries taylor_of(const BoundaryGrid& g, double tol = 1e-14) {
  const LaurentSpectrum spectrum = analyze(g);
  std::vector<cd> coeffs(static_cast<std::size_t>(spectrum.max_index()) + 1);
  for (int k = 0; k <= spectrum.max_index(); ++k) {
    coeffs[static_cast<std::size_t>(k)] = spectrum.at(k);
  }
  return CoefficientSeries(std::move(coeffs), VariableTag::Z).trimmed(tol);
}

}  // namespace

BoundaryGrid outer_from_log_modulus(const OuterSpec& spec) {
  BoundaryGrid out = exp_minus_analytic_completion(spec.u);
  const double leak = analyze(out).max_abs_negative();
  if (leak > 1e-8) {
    throw NumericalError("outer_from_log_modulus: analyticity leak " + std::to_string(leak) +
                         " (log-modulus data too rough for the grid)");
  }
  return out;
}

BoundaryGrid taming_factor(const BoundaryGrid& k, double divisor) {
  if (!(divisor > 0.0)) {
    throw ValidationError("taming_factor: divisor must be positive");
  }
  std::vector<cd> s(k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    s[i] = std::sqrt(std::abs(k[i])) / divisor;
  }
  return exp_minus_analytic_completion(BoundaryGrid(std::move(s)));
}

BoundaryGrid hinf_multiplier(const BoundaryGrid& f, const BlaschkeProduct& b, int s, double divisor,
                             int m_max) {
  if (!f.analytic()) {
    throw ValidationError("hinf_multiplier: input must be analytic");
  }
  if (s != 1 && s != 2) {
    throw ValidationError("hinf_multiplier: composition power must be 1 or 2");
  }
  const std::size_t n_grid = f.size();
  const ComponentVector cv = decompose(f, b, m_max);

  // B^s sampled on the grid.
  BoundaryGrid bs = b.boundary(n_grid);
  for (int i = 1; i < s; ++i) bs = bs * b.boundary(n_grid);

  BoundaryGrid h = BoundaryGrid::constant(1.0, n_grid);
  for (const CoefficientSeries& comp : cv.components) {
    // Component data on its own circle drives the taming exponent.
    const CoefficientSeries as_z(comp.coefficients, VariableTag::Z);
    const BoundaryGrid k = synthesize(as_z, n_grid);
    const BoundaryGrid q = taming_factor(k, divisor);
    h = h * compose(taylor_of(q), bs);
  }
  h.set_analytic(true);
  return h;
}

Lemma3Report lemma3_sequence(const std::vector<BoundaryGrid>& f_seq, const BoundaryGrid& f,
                             PNorm p) {
  if (f_seq.empty()) {
    throw ValidationError("lemma3_sequence: empty sequence");
  }
  double prev = std::numeric_limits<double>::infinity();
  for (const BoundaryGrid& fl : f_seq) {
    const double dist = l2_norm(fl - f);
    if (dist > prev + 1e-12) {
      throw ValidationError("lemma3_sequence: H^2 distances must be non-increasing");
    }
    prev = dist;
  }
  if (prev > 1e-6) {
    throw ValidationError("lemma3_sequence: sequence does not reach the 1e-6 H^2 neighborhood");
  }

  const BlaschkeProduct identity({cd(0.0)});
  const int m_max = truncation_budget(identity, f.size());
  Lemma3Report report;
  for (std::size_t l = 0; l < f_seq.size(); ++l) {
    BoundaryGrid g =
        hinf_multiplier(f_seq[l], identity, /*s=*/1, static_cast<double>(l + 1), m_max);
    report.product_errors.push_back(hp_norm(g * f_seq[l] - f, p));
    report.sup_multiplier.push_back(hp_norm(g, PNorm::infinity()));
    report.max_dist_to_one.push_back(
        hp_norm(g - BoundaryGrid::constant(1.0, f.size()), PNorm::infinity()));
    report.multipliers.push_back(std::move(g));
  }
  return report;
}

}  // namespace bhardy
