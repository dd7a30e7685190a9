#include "bidomain/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "bidomain/errors.hpp"

namespace bidomain {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmtg(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

SpectrumReport build_spectrum(const std::vector<double>& mu, const KineticsParams& kp,
                              double v_star, double decay_bound) {
  SpectrumReport rep;
  rep.essential_point = kp.b;
  rep.decay_bound = decay_bound;
  double bound = kp.b;
  rep.records.reserve(mu.size());
  for (const double m : mu) {
    const ModePolynomial blk = equilibrium_pq(m, v_star, kp);
    const auto [l1, l2] = quadratic_roots(blk.p, blk.q);
    rep.records.push_back({m, l1, l2, blk.p * blk.p - 4.0 * blk.q < 0.0});
    bound = std::min(bound, std::min(l1.real(), l2.real()));
  }
  rep.spectral_bound = bound;
  return rep;
}

}  // namespace

double origin_decay_bound(const KineticsParams& p) {
  return std::min({p.b, 0.5 * (p.a + p.b), (p.c + p.a * p.b) / (p.a + p.b)});
}

std::pair<std::complex<double>, std::complex<double>> quadratic_roots(double p, double q) {
  const double disc = p * p - 4.0 * q;
  if (disc < 0.0) {
    const double omega = 0.5 * std::sqrt(-disc);
    return {{0.5 * p, omega}, {0.5 * p, -omega}};
  }
  const double s = std::sqrt(disc);
  double r1 = 0.5 * (p + std::copysign(s, p));
  double r2 = r1 != 0.0 ? q / r1 : 0.0;
  if (r1 < r2) std::swap(r1, r2);
  return {{r1, 0.0}, {r2, 0.0}};
}

ModePolynomial origin_pq(double mu, const KineticsParams& p) {
  return {mu + p.a + p.b, p.c + p.b * (mu + p.a)};
}

ModePolynomial equilibrium_pq(double mu, double v_star, const KineticsParams& p) {
  const double s = nullcline_cubic(v_star, p).slope;
  return {mu + s + p.b - p.c / p.b, p.b * (mu + s)};
}

SpectrumReport origin_spectrum(const std::vector<double>& mu, const KineticsParams& p) {
  return build_spectrum(mu, p, 0.0, origin_decay_bound(p));
}

SpectrumReport equilibrium_spectrum(const std::vector<double>& mu, double v_star,
                                    const KineticsParams& p) {
  return build_spectrum(mu, p, v_star, kNaN);
}

EigenDirection eigen_direction(double mu, std::complex<double> lambda,
                               const KineticsParams& p) {
  const std::complex<double> denom = std::complex<double>(p.b, 0.0) - lambda;
  if (std::abs(denom) < 1e-12) {
    throw NumericalError(
        "eigen direction: eigenvalue coincides with the recovery rate b; the recovery row "
        "no longer determines the direction");
  }
  return {mu, lambda, {1.0, 0.0}, p.c / denom};
}

double dtn_set_distance(double x, const std::vector<double>& mu, double tail_slope) {
  if (mu.empty()) throw InputError("set distance: no transfer eigenvalues given");
  if (!(tail_slope > 0.0)) throw InputError("set distance: tail slope must be positive");
  double best = std::numeric_limits<double>::infinity();
  for (const double m : mu) best = std::min(best, std::abs(x - m));
  const double last = *std::max_element(mu.begin(), mu.end());
  if (x > last) {
    // Continue the set past the listed modes along its linear asymptote.
    const double steps = std::max(1.0, std::round((x - last) / tail_slope));
    best = std::min(best, std::abs(x - (last + steps * tail_slope)));
  }
  return best;
}

StabilityReport classify(const KineticsParams& p, const std::vector<double>& mu,
                         double tail_slope, double tol_setdist) {
  if (mu.empty()) throw InputError("classification: need at least one transfer eigenvalue");
  const EquilibriumSet eq = equilibria(p);
  if (eq.has_nontrivial && eq.degenerate) {
    throw ValidationError("classification: the rest-state pair is degenerate (discriminant = " +
                          fmtg(eq.discriminant) +
                          "); verdicts at a fold are not robust and are refused");
  }

  const double shift = (p.c - p.b * p.b) / p.b;
  const auto assess = [&](const char* name, double v, double w) {
    EquilibriumAssessment a;
    a.name = name;
    a.v = v;
    a.w = w;
    a.stiffness = nullcline_cubic(v, p).slope;

    const ModePolynomial blk = equilibrium_pq(0.0, v, p);
    const auto [l1, l2] = quadratic_roots(blk.p, blk.q);
    const double worst = std::min(l1.real(), l2.real());
    a.stable = worst > 0.0;
    const SpectrumReport spec = equilibrium_spectrum(mu, v, p);
    a.decay_margin = a.stable ? spec.spectral_bound : kNaN;
    a.growth_rate = a.stable ? kNaN : -worst;

    HyperbolicityReport& h = a.hyperbolicity;
    h.shift = shift;
    h.dist_base = dtn_set_distance(-a.stiffness, mu, tail_slope);
    h.dist_shift = dtn_set_distance(-a.stiffness + shift, mu, tail_slope);
    h.base_clear = h.dist_base > tol_setdist;
    h.shift_clear = h.dist_shift > tol_setdist;
    h.hyperbolic_shift_when_positive = h.base_clear && (shift <= 0.0 || h.shift_clear);
    h.hyperbolic_shift_when_negative = h.base_clear && (shift >= 0.0 || h.shift_clear);
    return a;
  };

  StabilityReport rep;
  rep.discriminant = eq.discriminant;
  rep.origin = assess("origin", 0.0, 0.0);
  if (eq.has_nontrivial) {
    rep.upper = assess("upper", eq.plus.v, eq.plus.w);
    rep.lower = assess("lower", eq.minus.v, eq.minus.w);
  }
  return rep;
}

}  // namespace bidomain
