#pragma once

#include <vector>

#include "bhardy/blaschke.hpp"
#include "bhardy/circle.hpp"

namespace bhardy {

// Boundary log-modulus data: the target outer function has |O| = e^{-u}.
struct OuterSpec {
  BoundaryGrid u;  // real-valued within kGridTol
};

// O = exp(-(u + i*conj(u))); zero-free, analytic, |O| = e^{-u} on the grid.
BoundaryGrid outer_from_log_modulus(const OuterSpec& spec);

// q = exp((-|k|^{1/2} - i*conj(|k|^{1/2})) / divisor); |q| <= 1 everywhere and
// q -> 1 pointwise as the divisor grows.
BoundaryGrid taming_factor(const BoundaryGrid& k, double divisor);

// Multiplier h = prod_j q_j(B^s) built from the components of f over B; |h| <= 1
// and h*f stays bounded while h -> 1 as the divisor grows.
BoundaryGrid hinf_multiplier(const BoundaryGrid& f, const BlaschkeProduct& b, int s, double divisor,
                             int m_max);

struct Lemma3Report {
  std::vector<BoundaryGrid> multipliers;
  std::vector<double> product_errors;   // ||g_l f_l - f||_p per step
  std::vector<double> sup_multiplier;   // grid max of |g_l|
  std::vector<double> max_dist_to_one;  // grid max of |g_l - 1|
};

// Multipliers g_l for an H^2-convergent sequence, with per-step diagnostics.
Lemma3Report lemma3_sequence(const std::vector<BoundaryGrid>& f_seq, const BoundaryGrid& f,
                             PNorm p);

}  // namespace bhardy
