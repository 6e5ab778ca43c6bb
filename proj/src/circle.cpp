#include "bhardy/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace bhardy {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

void require_same_size(const BoundaryGrid& a, const BoundaryGrid& b) {
  if (a.size() != b.size()) {
    throw ValidationError("grid size mismatch: " + std::to_string(a.size()) + " vs " +
                          std::to_string(b.size()));
  }
}

}  // namespace

cd CoefficientSeries::eval(cd w) const {
  cd acc = 0.0;
  for (auto it = coefficients.rbegin(); it != coefficients.rend(); ++it) {
    acc = acc * w + *it;
  }
  return acc;
}

CoefficientSeries CoefficientSeries::trimmed(double tol) const {
  std::size_t keep = coefficients.size();
  while (keep > 0 && std::abs(coefficients[keep - 1]) <= tol) --keep;
  return CoefficientSeries(std::vector<cd>(coefficients.begin(), coefficients.begin() + keep), tag);
}

BoundaryGrid::BoundaryGrid(std::vector<cd> samples, bool analytic)
    : samples_(std::move(samples)), analytic_(analytic) {
  if (samples_.size() < 16 || !is_power_of_two(samples_.size())) {
    throw ValidationError("BoundaryGrid: size must be a power of two and at least 16");
  }
}

BoundaryGrid BoundaryGrid::constant(cd value, std::size_t n, bool analytic) {
  return BoundaryGrid(std::vector<cd>(n, value), analytic);
}

std::vector<cd> unit_circle(std::size_t n) {
  std::vector<cd> pts(n);
  const double step = 2.0 * std::numbers::pi / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts[i] = std::polar(1.0, step * static_cast<double>(i));
  }
  return pts;
}

void fft(std::vector<cd>& data, int sign) {
  const std::size_t n = data.size();
  if (!is_power_of_two(n)) {
    throw ValidationError("fft: length must be a power of two");
  }
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = static_cast<double>(sign) * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cd wlen = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      cd w = 1.0;
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cd u = data[i + k];
        const cd v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
}

LaurentSpectrum::LaurentSpectrum(std::vector<cd> fft_order) : coeff_(std::move(fft_order)) {
  if (!is_power_of_two(coeff_.size())) {
    throw ValidationError("LaurentSpectrum: length must be a power of two");
  }
}

cd LaurentSpectrum::at(int k) const {
  const int n = static_cast<int>(coeff_.size());
  if (k < -n / 2 || k >= n / 2) {
    throw ValidationError("LaurentSpectrum: index out of range");
  }
  return coeff_[static_cast<std::size_t>(k >= 0 ? k : k + n)];
}

double LaurentSpectrum::max_abs_negative() const {
  const int n = static_cast<int>(coeff_.size());
  double m = 0.0;
  for (int k = n / 2; k < n; ++k) {
    m = std::max(m, std::abs(coeff_[static_cast<std::size_t>(k)]));
  }
  return m;
}

BoundaryGrid synthesize(const CoefficientSeries& series, std::size_t grid_size) {
  if (series.tag != VariableTag::Z) {
    throw ValidationError("synthesize: series must be tagged in the variable z");
  }
  if (series.size() > grid_size) {
    throw ValidationError("synthesize: series of length " + std::to_string(series.size()) +
                          " does not fit grid of size " + std::to_string(grid_size));
  }
  std::vector<cd> buf(grid_size, cd(0.0));
  std::copy(series.coefficients.begin(), series.coefficients.end(), buf.begin());
  fft(buf, +1);  // samples_i = sum_k c_k exp(+2 pi i k i / N)
  return BoundaryGrid(std::move(buf), /*analytic=*/true);
}

LaurentSpectrum analyze(const BoundaryGrid& grid) {
  std::vector<cd> buf = grid.samples();
  fft(buf, -1);
  const double inv = 1.0 / static_cast<double>(buf.size());
  for (auto& c : buf) c *= inv;
  return LaurentSpectrum(std::move(buf));
}

cd inner_product(const BoundaryGrid& f, const BoundaryGrid& g) {
  require_same_size(f, g);
  cd acc = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    acc += f[i] * std::conj(g[i]);
  }
  return acc / static_cast<double>(f.size());
}

double l2_norm(const BoundaryGrid& f) {
  double acc = 0.0;
  for (const cd& v : f.samples()) acc += std::norm(v);
  return std::sqrt(acc / static_cast<double>(f.size()));
}

double hp_norm(const BoundaryGrid& f, PNorm p) {
  if (p.is_infinite()) {
    double m = 0.0;
    for (const cd& v : f.samples()) m = std::max(m, std::abs(v));
    return m;
  }
  double acc = 0.0;
  for (const cd& v : f.samples()) acc += std::pow(std::abs(v), p.p);
  return std::pow(acc / static_cast<double>(f.size()), 1.0 / p.p);
}

double hp_metric(const BoundaryGrid& f, PNorm p) {
  if (p.is_infinite()) return hp_norm(f, p);
  return std::pow(hp_norm(f, p), p.p);
}

BoundaryGrid riesz_projection(const BoundaryGrid& grid) {
  std::vector<cd> buf = grid.samples();
  fft(buf, -1);
  const std::size_t n = buf.size();
  const double inv = 1.0 / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    buf[k] = (k < n / 2) ? buf[k] * inv : cd(0.0);
  }
  fft(buf, +1);
  return BoundaryGrid(std::move(buf), /*analytic=*/true);
}

BoundaryGrid harmonic_conjugate(const BoundaryGrid& u) {
  double sup = 0.0;
  for (const cd& v : u.samples()) sup = std::max(sup, std::abs(v));
  for (const cd& v : u.samples()) {
    if (std::abs(v.imag()) > kGridTol * std::max(1.0, sup)) {
      throw ValidationError("harmonic_conjugate: input must be real-valued");
    }
  }
  std::vector<cd> buf = u.samples();
  fft(buf, -1);
  const std::size_t n = buf.size();
  const double inv = 1.0 / static_cast<double>(n);
  const cd minus_i(0.0, -1.0);
  buf[0] = 0.0;          // zero mean convention
  buf[n / 2] = 0.0;      // Nyquist bin has no conjugate partner
  for (std::size_t k = 1; k < n / 2; ++k) {
    buf[k] *= minus_i * inv;
    buf[n - k] *= -minus_i * inv;
  }
  fft(buf, +1);
  for (auto& v : buf) v = cd(v.real(), 0.0);
  return BoundaryGrid(std::move(buf), /*analytic=*/false);
}

CoefficientSeries fejer_mean(const CoefficientSeries& series, std::size_t degree) {
  std::vector<cd> out(std::min(series.size(), degree + 1));
  for (std::size_t m = 0; m < out.size(); ++m) {
    out[m] = series.coefficients[m] *
             (1.0 - static_cast<double>(m) / static_cast<double>(degree + 1));
  }
  return CoefficientSeries(std::move(out), series.tag);
}

BoundaryGrid operator+(const BoundaryGrid& a, const BoundaryGrid& b) {
  require_same_size(a, b);
  std::vector<cd> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return BoundaryGrid(std::move(out), a.analytic() && b.analytic());
}

BoundaryGrid operator-(const BoundaryGrid& a, const BoundaryGrid& b) {
  require_same_size(a, b);
  std::vector<cd> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return BoundaryGrid(std::move(out), a.analytic() && b.analytic());
}

BoundaryGrid operator*(const BoundaryGrid& a, const BoundaryGrid& b) {
  require_same_size(a, b);
  std::vector<cd> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
  return BoundaryGrid(std::move(out), a.analytic() && b.analytic());
}

BoundaryGrid operator*(cd scale, const BoundaryGrid& a) {
  std::vector<cd> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = scale * a[i];
  return BoundaryGrid(std::move(out), a.analytic());
}

BoundaryGrid conjugate(const BoundaryGrid& a) {
  std::vector<cd> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::conj(a[i]);
  return BoundaryGrid(std::move(out), /*analytic=*/false);
}

}  // namespace bhardy
