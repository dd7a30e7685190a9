#pragma once

#include <complex>
#include <optional>
#include <utility>
#include <vector>

#include "bidomain/kinetics.hpp"

namespace bidomain {

// Closed-form lower bound on the decay rate of the linearization at the
// origin, uniform over all transfer eigenvalues mu >= 0:
//   min{ b, (a+b)/2, (c+ab)/(a+b) }.
double origin_decay_bound(const KineticsParams& p);

// Roots of z^2 - p z + q = 0, ordered by descending real part (positive
// imaginary part first for a conjugate pair). The larger-magnitude root keeps
// the full sum p +- sqrt(disc); the other comes from the product, which
// avoids the cancellation of the textbook formula.
std::pair<std::complex<double>, std::complex<double>> quadratic_roots(double p, double q);

// Characteristic data z^2 - p z + q of one 2x2 mode block of the linearized
// interface evolution.
struct ModePolynomial {
  double p;
  double q;
};

// Block at the origin: p = mu + a + b, q = c + b (mu + a).
ModePolynomial origin_pq(double mu, const KineticsParams& p);

// Block at a rest state with potential v_star, expressed through the
// nullcline stiffness s = N'(v_star): p = mu + s + b - c/b, q = b (mu + s).
// At v_star = 0 this reduces to origin_pq.
ModePolynomial equilibrium_pq(double mu, double v_star, const KineticsParams& p);

struct EigenRecord {
  double mu;
  std::complex<double> lambda1;  // larger real part; +Im member of a pair
  std::complex<double> lambda2;
  bool complex_pair;
};

struct SpectrumReport {
  std::vector<EigenRecord> records;
  double essential_point;  // b, the accumulation value of the recovery branch
  double spectral_bound;   // min real part over the records and the essential point
  double decay_bound;      // closed-form origin bound; NaN for shifted rest states
};

SpectrumReport origin_spectrum(const std::vector<double>& mu, const KineticsParams& p);
SpectrumReport equilibrium_spectrum(const std::vector<double>& mu, double v_star,
                                    const KineticsParams& p);

// Eigenvector (1, c/(b - lambda)) of a mode block for eigenvalue lambda; the
// relation comes from the recovery row and holds at every rest state.
// Degenerate when lambda collides with b.
struct EigenDirection {
  double mu;
  std::complex<double> lambda;
  std::complex<double> v_amp;
  std::complex<double> w_amp;
};

EigenDirection eigen_direction(double mu, std::complex<double> lambda,
                               const KineticsParams& p);

// Distance from x to the transfer-eigenvalue set {mu_n}, extended past the
// last listed mode by the large-n asymptote mu ~ mu_last + slope * steps.
double dtn_set_distance(double x, const std::vector<double>& mu, double tail_slope);

// Spectral clearances deciding whether the linearization can touch the
// imaginary axis. A zero eigenvalue requires a transfer eigenvalue at -s; a
// purely imaginary pair requires one at -s + (c - b^2)/b together with
// q = c - b^2 > 0, so the shifted test only binds for c > b^2. The verdict
// under the opposite sign reading is reported as well so the two conventions
// can be compared side by side.
struct HyperbolicityReport {
  double shift;       // (c - b^2)/b
  double dist_base;   // distance of -s to the transfer set
  double dist_shift;  // distance of -s + shift
  bool base_clear;
  bool shift_clear;
  bool hyperbolic_shift_when_positive;  // shifted test armed only for c > b^2
  bool hyperbolic_shift_when_negative;  // shifted test armed only for c < b^2
};

struct EquilibriumAssessment {
  const char* name;    // "origin", "upper", "lower"
  double v;
  double w;
  double stiffness;    // s = N'(v)
  bool stable;
  double decay_margin;  // min real part of the scanned spectrum when stable, NaN otherwise
  double growth_rate;   // positive growth exponent of the worst mode when unstable, NaN otherwise
  HyperbolicityReport hyperbolicity;
};

struct StabilityReport {
  double discriminant;
  EquilibriumAssessment origin;
  std::optional<EquilibriumAssessment> upper;
  std::optional<EquilibriumAssessment> lower;
};

// Classifies every rest state against the given transfer eigenvalues.
// Refuses a degenerate pair: at the fold the verdict is not robust.
StabilityReport classify(const KineticsParams& p, const std::vector<double>& mu,
                         double tail_slope, double tol_setdist = 1e-6);

}  // namespace bidomain
