#include "bidomain/fourier.hpp"

#include <cmath>

namespace bidomain {

FourierGrid::FourierGrid(int k_max, int m_phys) : k_max_(k_max), m_phys_(m_phys) {
  if (k_max < 1) throw ValidationError("fourier grid: k_max must be at least 1");
  if (m_phys < 4 * k_max + 1) {
    throw ValidationError("fourier grid: m_phys must be at least 4*k_max + 1 (got m_phys=" +
                          std::to_string(m_phys) + ", k_max=" + std::to_string(k_max) + ")");
  }
  cos_.resize(static_cast<std::size_t>(m_phys));
  sin_.resize(static_cast<std::size_t>(m_phys));
  for (int k = 0; k < m_phys; ++k) {
    const double ang = kTwoPi * static_cast<double>(k) / m_phys;
    cos_[static_cast<std::size_t>(k)] = std::cos(ang);
    sin_[static_cast<std::size_t>(k)] = std::sin(ang);
  }
}

SpectralField::SpectralField(int k_max) : k_max_(k_max) {
  if (k_max < 0) throw InputError("spectral field: k_max must be nonnegative");
  c_.assign(static_cast<std::size_t>(2 * k_max + 1), {0.0, 0.0});
}

double SpectralField::conjugate_defect() const {
  double worst = 0.0;
  for (int n = 0; n <= k_max_; ++n) {
    const std::complex<double> d = at(-n) - std::conj(at(n));
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

double SpectralField::max_abs() const {
  double worst = 0.0;
  for (const auto& z : c_) worst = std::max(worst, std::abs(z));
  return worst;
}

double SpectralField::max_abs_nonzero_mode() const {
  double worst = 0.0;
  for (int n = 1; n <= k_max_; ++n) {
    worst = std::max(worst, std::abs(at(n)));
    worst = std::max(worst, std::abs(at(-n)));
  }
  return worst;
}

bool SpectralField::all_finite() const {
  for (const auto& z : c_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

SpectralField analyze(const std::vector<double>& samples, const FourierGrid& grid) {
  const int m = grid.m_phys();
  if (static_cast<int>(samples.size()) != m) {
    throw InputError("analyze: expected " + std::to_string(m) + " samples, got " +
                     std::to_string(samples.size()));
  }
  SpectralField field(grid.k_max());

  double mean = 0.0;
  for (int j = 0; j < m; ++j) mean += samples[static_cast<std::size_t>(j)];
  mean /= m;
  field.at(0) = {mean, 0.0};

  // sum_j e^{-i n theta_j} vanishes for 0 < n < m, so the mean can be split
  // off exactly; the oscillatory sums then see zero-mean data.
  const double f0 = samples[0];
  for (int n = 1; n <= grid.k_max(); ++n) {
    double re = 0.0;
    double im = 0.0;
    for (int j = 1; j < m; ++j) {
      const double d = samples[static_cast<std::size_t>(j)] - f0;
      const long long idx = static_cast<long long>(n) * j;
      re += d * grid.cos_tab(idx);
      im -= d * grid.sin_tab(idx);
    }
    field.at(n) = {re / m, im / m};
    field.at(-n) = std::conj(field.at(n));
  }
  return field;
}

std::vector<double> synthesize(const SpectralField& field, const FourierGrid& grid,
                               double symmetry_tol) {
  if (field.k_max() > grid.k_max()) {
    throw InputError("synthesize: field retains more modes than the grid");
  }
  const double scale = std::max(1.0, field.max_abs());
  if (field.conjugate_defect() > symmetry_tol * scale) {
    throw ValidationError("synthesize: field is not conjugate symmetric; cannot produce a real field");
  }

  const int m = grid.m_phys();
  std::vector<double> out(static_cast<std::size_t>(m));
  const double c0 = field.at(0).real();
  for (int j = 0; j < m; ++j) {
    double acc = c0;
    for (int n = 1; n <= field.k_max(); ++n) {
      const std::complex<double> cn = field.at(n);
      const long long idx = static_cast<long long>(n) * j;
      acc += 2.0 * (cn.real() * grid.cos_tab(idx) - cn.imag() * grid.sin_tab(idx));
    }
    out[static_cast<std::size_t>(j)] = acc;
  }
  return out;
}

double l2_norm_on_sigma(const SpectralField& field, const Geometry& geom) {
  double sum = 0.0;
  for (int n = -field.k_max(); n <= field.k_max(); ++n) sum += std::norm(field.at(n));
  return std::sqrt(kTwoPi * geom.rho * sum);
}

double circle_integral(const std::vector<double>& samples, const Geometry& geom) {
  if (samples.empty()) throw InputError("circle_integral: no samples");
  double sum = 0.0;
  for (const double v : samples) sum += v;
  return kTwoPi * geom.rho * sum / static_cast<double>(samples.size());
}

}  // namespace bidomain
