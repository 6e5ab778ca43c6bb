#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <vector>

#include "bhardy/errors.hpp"

namespace bhardy {

using cd = std::complex<double>;

// Absolute tolerance on Fourier coefficients of boundary data.
inline constexpr double kGridTol = 1e-10;
inline constexpr std::size_t kDefaultGridSize = 8192;
inline constexpr int kDefaultTruncationOrder = 16;

// An L^p exponent in (0, inf].
struct PNorm {
  double p;

  explicit PNorm(double exponent) : p(exponent) {
    if (!(exponent > 0.0)) {
      throw ValidationError("PNorm: exponent must be positive");
    }
  }
  static PNorm infinity() { return PNorm(std::numeric_limits<double>::infinity()); }
  bool is_infinite() const { return std::isinf(p); }
};

enum class VariableTag { Z, B };

// Truncated Taylor coefficients, either in z or in powers of a Blaschke product.
struct CoefficientSeries {
  std::vector<cd> coefficients;  // index = power
  VariableTag tag = VariableTag::Z;

  CoefficientSeries() = default;
  CoefficientSeries(std::vector<cd> c, VariableTag t) : coefficients(std::move(c)), tag(t) {}

  std::size_t size() const { return coefficients.size(); }
  int degree() const { return static_cast<int>(coefficients.size()) - 1; }
  cd eval(cd w) const;  // Horner
  // Drops trailing coefficients with |c| <= tol.
  CoefficientSeries trimmed(double tol = kGridTol) const;
};

// Samples of a boundary function on the N-th roots of unity, N a power of two.
class BoundaryGrid {
 public:
  explicit BoundaryGrid(std::vector<cd> samples, bool analytic = false);

  std::size_t size() const { return samples_.size(); }
  const std::vector<cd>& samples() const { return samples_; }
  std::vector<cd>& samples() { return samples_; }
  cd operator[](std::size_t i) const { return samples_[i]; }
  bool analytic() const { return analytic_; }
  void set_analytic(bool flag) { analytic_ = flag; }

  static BoundaryGrid constant(cd value, std::size_t n, bool analytic = true);

 private:
  std::vector<cd> samples_;
  bool analytic_ = false;
};

// The N-th roots of unity, sample i = exp(2*pi*i*i/N).
std::vector<cd> unit_circle(std::size_t n);

// In-place radix-2 FFT; sign = -1 gives X_k = sum_i x_i exp(-2*pi*i*k*i/N).
void fft(std::vector<cd>& data, int sign);

// Full Laurent coefficient list for indices -N/2 .. N/2-1.
class LaurentSpectrum {
 public:
  explicit LaurentSpectrum(std::vector<cd> fft_order);

  std::size_t size() const { return coeff_.size(); }
  int min_index() const { return -static_cast<int>(coeff_.size()) / 2; }
  int max_index() const { return static_cast<int>(coeff_.size()) / 2 - 1; }
  cd at(int k) const;
  // Largest |coefficient| over strictly negative indices.
  double max_abs_negative() const;
  const std::vector<cd>& fft_order() const { return coeff_; }

 private:
  std::vector<cd> coeff_;  // coeff_[i] is index i for i < N/2, else i - N
};

BoundaryGrid synthesize(const CoefficientSeries& series, std::size_t grid_size);
LaurentSpectrum analyze(const BoundaryGrid& grid);

// <f,g> = (1/N) sum f_i conj(g_i), the discrete realization of int f conj(g) dm.
cd inner_product(const BoundaryGrid& f, const BoundaryGrid& g);
double l2_norm(const BoundaryGrid& f);
double hp_norm(const BoundaryGrid& f, PNorm p);
// ||f||_p^p, the metric quantity for 0 < p < 1.
double hp_metric(const BoundaryGrid& f, PNorm p);

BoundaryGrid riesz_projection(const BoundaryGrid& grid);
// Fourier multiplier -i*sgn(k); zero mean; input must be real within kGridTol.
BoundaryGrid harmonic_conjugate(const BoundaryGrid& u);
CoefficientSeries fejer_mean(const CoefficientSeries& series, std::size_t degree);

// Pointwise grid arithmetic (sizes must match).
BoundaryGrid operator+(const BoundaryGrid& a, const BoundaryGrid& b);
BoundaryGrid operator-(const BoundaryGrid& a, const BoundaryGrid& b);
BoundaryGrid operator*(const BoundaryGrid& a, const BoundaryGrid& b);
BoundaryGrid operator*(cd scale, const BoundaryGrid& a);
BoundaryGrid conjugate(const BoundaryGrid& a);

}  // namespace bhardy
