#pragma once

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bidomain/fourier.hpp"
#include "bidomain/geometry.hpp"
#include "bidomain/kinetics.hpp"

namespace bidomain {

// Time discretizations: first-order splitting, and the two-step second-order
// backward-difference variant bootstrapped by one splitting step. Both treat
// the 2x2 mode blocks implicitly and the cubic terms explicitly.
enum class Scheme { imex_euler, sbdf2 };

Scheme scheme_from_name(const std::string& name);
const char* scheme_name(Scheme s);

// Interface forcing: a fixed coefficient profile, optionally modulated by a
// piecewise-linear factor in time (constant extrapolation outside the knots).
class Forcing {
 public:
  Forcing() = default;  // identically zero
  explicit Forcing(SpectralField base);
  Forcing(SpectralField base, std::vector<std::pair<double, double>> knots);

  bool is_zero() const { return !base_.has_value(); }
  int k_max() const { return base_ ? base_->k_max() : 0; }
  double modulation(double t) const;
  std::complex<double> mode(int n, double t) const;

 private:
  std::optional<SpectralField> base_;
  std::vector<std::pair<double, double>> knots_;
};

// Coefficients of (a+1)v^2 - v^3 for a band-limited v, evaluated pointwise on
// the angular grid and truncated back to the band of v. The grid must retain
// at least the band of v; its sample count then exceeds four times the band,
// so the truncated coefficients carry no aliasing error at all.
SpectralField nonlinearity(const SpectralField& v_hat, const KineticsParams& p,
                           const FourierGrid& grid);

struct SimState {
  double t;
  SpectralField v_hat;
  SpectralField w_hat;
};

struct IntegratorOptions {
  Scheme scheme = Scheme::sbdf2;
  double dt = 0.0;
  double blowup_threshold = 1e12;
};

// Marches the coupled mode system
//   d/dt (v_n, w_n) + [[mu_n + a, 1], [-c, b]] (v_n, w_n) = (Phi_n(t) + F_n(v), 0).
// Only modes n >= 0 are solved; negative modes are mirrored by conjugation,
// so conjugate symmetry (and exact zero of untouched modes) is preserved
// bitwise. Throws BlowupError when the state exceeds the blow-up threshold
// or stops being finite.
class Integrator {
 public:
  Integrator(std::vector<double> mu, const KineticsParams& p, Forcing forcing,
             FourierGrid grid, IntegratorOptions opt);

  void set_state(const SpectralField& v0, const SpectralField& w0);
  const SimState& state() const { return state_; }
  int k_max() const { return static_cast<int>(mu_.size()) - 1; }
  long long steps_taken() const { return steps_; }

  void step();

 private:
  std::vector<double> mu_;
  KineticsParams params_;
  Forcing forcing_;
  FourierGrid grid_;
  IntegratorOptions opt_;
  SimState state_;
  SpectralField prev_v_, prev_w_, prev_rhs_v_;  // one-step history for the two-step scheme
  bool have_prev_ = false;
  long long steps_ = 0;
};

struct SimRunConfig {
  Scheme scheme = Scheme::sbdf2;
  double dt = 0.0;
  double t_end = 0.0;
  int stride = 1;  // emit every stride-th step (plus the initial and final states)
  double blowup_threshold = 1e12;
};

struct Trajectory {
  std::vector<SimState> samples;
  double dt = 0.0;
  int stride = 1;
  Scheme scheme = Scheme::sbdf2;
};

Trajectory simulate(const std::vector<double>& mu, const KineticsParams& p,
                    const Forcing& forcing, const FourierGrid& grid, const SpectralField& v0,
                    const SpectralField& w0, const SimRunConfig& cfg);

// Discrete energy bookkeeping along a trajectory. With
//   psi = 1/2 |v|^2 + 1/(2c) |w|^2   (squared L2 norms on the interface),
// the mode-truncated dynamics satisfies exactly
//   d/dt psi + dissipation = drive,
//   dissipation = sum (a + mu_|n|) |v_n|^2 * 2*pi*rho + int v^4 + (b/c)|w|^2,
//   drive = <Phi, v> + (a+1) int v^3,
// so the reported residual (3-point finite differences in time for d/dt psi)
// converges at the order of the time scheme.
struct EnergyRecord {
  double t;
  double psi;
  double dissipation;
  double drive;
  double residual;
};

std::vector<EnergyRecord> energy_balance(const Trajectory& traj, const KineticsParams& p,
                                         const std::vector<double>& mu, const Geometry& geom,
                                         const FourierGrid& grid, const Forcing& forcing);

// A-priori envelope test: with c0 = min_n (a + mu_n)/sqrt(1+n^2),
//   psi(t) <= exp((a+1)^2 t) [ psi(0) + 1/(2 c0) int_0^t |Phi(s)|^2_* ds ],
// where |Phi|^2_* = 2*pi*rho sum (1+n^2)^{-1/2} |Phi_n|^2. The time integral
// is taken by the trapezoid rule on the emitted samples.
struct GrowthEnvelopeReport {
  double c0;
  bool satisfied;
  double max_ratio;        // max over samples of psi / envelope
  double first_violation;  // time of the first violation, NaN if none
  std::vector<double> t;
  std::vector<double> psi;
  std::vector<double> envelope;
};

GrowthEnvelopeReport growth_envelope_check(const Trajectory& traj, const KineticsParams& p,
                                           const std::vector<double>& mu, const Geometry& geom,
                                           const Forcing& forcing, double slack = 1e-8);

// Least-squares slope of ln(y) against t; y must be positive throughout.
double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y);

}  // namespace bidomain
