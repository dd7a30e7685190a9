#pragma once

#include <complex>
#include <vector>

#include "bidomain/errors.hpp"
#include "bidomain/geometry.hpp"

namespace bidomain {

// Uniform angular grid theta_j = 2*pi*j / m_phys together with the retained
// mode band |n| <= k_max. The grid keeps m_phys >= 4*k_max + 1 so that the
// pointwise cubic of a band-limited field is alias-free after truncation.
class FourierGrid {
 public:
  FourierGrid(int k_max, int m_phys);
  explicit FourierGrid(int k_max) : FourierGrid(k_max, 4 * k_max + 1) {}

  int k_max() const { return k_max_; }
  int m_phys() const { return m_phys_; }
  double theta(int j) const { return kTwoPi * static_cast<double>(j) / m_phys_; }

  // cos/sin(2*pi*idx/m) looked up by idx mod m; exact index arithmetic keeps
  // transforms reproducible.
  double cos_tab(long long idx) const { return cos_[static_cast<std::size_t>(mod(idx))]; }
  double sin_tab(long long idx) const { return sin_[static_cast<std::size_t>(mod(idx))]; }

 private:
  long long mod(long long idx) const {
    long long r = idx % m_phys_;
    return r < 0 ? r + m_phys_ : r;
  }

  int k_max_;
  int m_phys_;
  std::vector<double> cos_;
  std::vector<double> sin_;
};

// Complex Fourier coefficients c_n for |n| <= k_max of a field on the
// interface circle, stored in ascending n. Real fields satisfy
// c_{-n} = conj(c_n).
class SpectralField {
 public:
  explicit SpectralField(int k_max);

  int k_max() const { return k_max_; }

  std::complex<double>& at(int n) { return c_[index(n)]; }
  const std::complex<double>& at(int n) const { return c_[index(n)]; }

  // Largest deviation from conjugate symmetry, max_n |c_{-n} - conj(c_n)|.
  double conjugate_defect() const;
  double max_abs() const;
  // Largest coefficient magnitude over 1 <= |n| <= k_max.
  double max_abs_nonzero_mode() const;
  bool all_finite() const;

 private:
  std::size_t index(int n) const {
    if (n < -k_max_ || n > k_max_) throw InputError("spectral field: mode index out of range");
    return static_cast<std::size_t>(n + k_max_);
  }

  int k_max_;
  std::vector<std::complex<double>> c_;
};

// Trigonometric interpolation coefficients c_n = (1/m) sum_j f_j e^{-i n theta_j}
// for |n| <= grid.k_max(). The mean is split off before the oscillatory sums,
// which is exact for |n| < m_phys and keeps exactly-constant inputs free of
// spurious high-mode content.
SpectralField analyze(const std::vector<double>& samples, const FourierGrid& grid);

// Evaluates sum_n c_n e^{i n theta_j} for a conjugate-symmetric field and
// returns the (exactly real) samples. Fields with fewer modes than the grid
// retains are permitted.
std::vector<double> synthesize(const SpectralField& field, const FourierGrid& grid,
                               double symmetry_tol = 1e-10);

// L2(interface) norm sqrt(2*pi*rho * sum |c_n|^2).
double l2_norm_on_sigma(const SpectralField& field, const Geometry& geom);

// integral over the interface of a sampled function, (2*pi*rho/m) * sum_j g_j.
// Exact for trigonometric polynomials of degree < m.
double circle_integral(const std::vector<double>& samples, const Geometry& geom);

}  // namespace bidomain
