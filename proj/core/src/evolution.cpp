#include "bidomain/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "bidomain/errors.hpp"

namespace bidomain {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string fmtg(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Derivative at x of the quadratic through three samples; tolerates
// nonuniform spacing (the final emitted sample may sit off-stride).
double lagrange3_deriv(double x0, double x1, double x2, double f0, double f1, double f2,
                       double x) {
  return f0 * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
         f1 * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
         f2 * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
}

double interface_energy(const SimState& s, double ring, double c) {
  const int k = s.v_hat.k_max();
  double sum_v = 0.0;
  double sum_w = 0.0;
  for (int n = -k; n <= k; ++n) {
    sum_v += std::norm(s.v_hat.at(n));
    sum_w += std::norm(s.w_hat.at(n));
  }
  return 0.5 * ring * sum_v + ring * sum_w / (2.0 * c);
}

}  // namespace

Scheme scheme_from_name(const std::string& name) {
  if (name == "imex-euler") return Scheme::imex_euler;
  if (name == "sbdf2") return Scheme::sbdf2;
  throw InputError("unknown time scheme '" + name + "' (expected imex-euler or sbdf2)");
}

const char* scheme_name(Scheme s) {
  return s == Scheme::imex_euler ? "imex-euler" : "sbdf2";
}

Forcing::Forcing(SpectralField base) : base_(std::move(base)) {
  if (base_->conjugate_defect() > 1e-10 * std::max(1.0, base_->max_abs())) {
    throw ValidationError("forcing: coefficients are not conjugate symmetric");
  }
}

Forcing::Forcing(SpectralField base, std::vector<std::pair<double, double>> knots)
    : Forcing(std::move(base)) {
  if (knots.empty()) throw InputError("forcing: an empty modulation table is ambiguous");
  for (std::size_t i = 1; i < knots.size(); ++i) {
    if (!(knots[i].first > knots[i - 1].first)) {
      throw InputError("forcing: modulation times must be strictly increasing");
    }
  }
  knots_ = std::move(knots);
}

double Forcing::modulation(double t) const {
  if (knots_.empty()) return 1.0;
  if (t <= knots_.front().first) return knots_.front().second;
  if (t >= knots_.back().first) return knots_.back().second;
  std::size_t hi = 1;
  while (knots_[hi].first < t) ++hi;
  const auto& [t0, f0] = knots_[hi - 1];
  const auto& [t1, f1] = knots_[hi];
  return f0 + (t - t0) / (t1 - t0) * (f1 - f0);
}

std::complex<double> Forcing::mode(int n, double t) const {
  if (!base_ || std::abs(n) > base_->k_max()) return {0.0, 0.0};
  return base_->at(n) * modulation(t);
}

SpectralField nonlinearity(const SpectralField& v_hat, const KineticsParams& p,
                           const FourierGrid& grid) {
  if (grid.k_max() < v_hat.k_max()) {
    throw InputError("nonlinearity: the angular grid retains fewer modes than the state");
  }
  const std::vector<double> v = synthesize(v_hat, grid);
  std::vector<double> g(v.size());
  const double ap1 = p.a + 1.0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const double v2 = v[j] * v[j];
    g[j] = ap1 * v2 - v2 * v[j];
  }
  const SpectralField full = analyze(g, grid);
  SpectralField out(v_hat.k_max());
  for (int n = -v_hat.k_max(); n <= v_hat.k_max(); ++n) out.at(n) = full.at(n);
  return out;
}

namespace {
int state_modes(const std::vector<double>& mu) {
  if (mu.empty()) throw InputError("integrator: need at least the n = 0 transfer eigenvalue");
  return static_cast<int>(mu.size()) - 1;
}
}  // namespace

Integrator::Integrator(std::vector<double> mu, const KineticsParams& p, Forcing forcing,
                       FourierGrid grid, IntegratorOptions opt)
    : mu_(std::move(mu)),
      params_(p),
      forcing_(std::move(forcing)),
      grid_(std::move(grid)),
      opt_(opt),
      state_{0.0, SpectralField(state_modes(mu_)), SpectralField(state_modes(mu_))},
      prev_v_(state_modes(mu_)),
      prev_w_(state_modes(mu_)),
      prev_rhs_v_(state_modes(mu_)) {
  if (!(opt_.dt > 0.0)) throw InputError("integrator: dt must be positive");
  if (!(opt_.blowup_threshold > 0.0)) {
    throw InputError("integrator: blow-up threshold must be positive");
  }
  if (grid_.k_max() < k_max()) {
    throw InputError("integrator: the angular grid must retain every evolved mode");
  }
  for (const double m : mu_) {
    if (!std::isfinite(m)) throw InputError("integrator: transfer eigenvalues must be finite");
  }
}

void Integrator::set_state(const SpectralField& v0, const SpectralField& w0) {
  if (v0.k_max() != k_max() || w0.k_max() != k_max()) {
    throw InputError("integrator: initial state must carry exactly the configured modes");
  }
  if (v0.conjugate_defect() > 1e-10 * std::max(1.0, v0.max_abs()) ||
      w0.conjugate_defect() > 1e-10 * std::max(1.0, w0.max_abs())) {
    throw ValidationError("integrator: initial coefficients are not conjugate symmetric");
  }
  state_ = {0.0, v0, w0};
  have_prev_ = false;
  steps_ = 0;
}

void Integrator::step() {
  const int K = k_max();
  const double dt = opt_.dt;

  // Explicit part: dealiased cubic terms plus the drive, v-rows only.
  const SpectralField cubic = nonlinearity(state_.v_hat, params_, grid_);
  SpectralField rhs_v(K);
  for (int n = 0; n <= K; ++n) {
    rhs_v.at(n) = cubic.at(n) + forcing_.mode(n, state_.t);
    if (n > 0) rhs_v.at(-n) = std::conj(rhs_v.at(n));
  }

  const bool two_step = opt_.scheme == Scheme::sbdf2 && have_prev_;
  const double alpha = two_step ? 1.5 : 1.0;
  SpectralField new_v(K);
  SpectralField new_w(K);
  for (int n = 0; n <= K; ++n) {
    std::complex<double> rv;
    std::complex<double> rw;
    if (two_step) {
      rv = 2.0 * state_.v_hat.at(n) - 0.5 * prev_v_.at(n) +
           dt * (2.0 * rhs_v.at(n) - prev_rhs_v_.at(n));
      rw = 2.0 * state_.w_hat.at(n) - 0.5 * prev_w_.at(n);
    } else {
      rv = state_.v_hat.at(n) + dt * rhs_v.at(n);
      rw = state_.w_hat.at(n);
    }
    // Closed-form solve of (alpha I + dt A_n); the determinant is a sum of
    // positive terms, so the block is never singular.
    const double m11 = alpha + dt * (mu_[static_cast<std::size_t>(n)] + params_.a);
    const double m22 = alpha + dt * params_.b;
    const double det = m11 * m22 + dt * dt * params_.c;
    const std::complex<double> zv = (m22 * rv - dt * rw) / det;
    const std::complex<double> zw = (m11 * rw + dt * params_.c * rv) / det;
    new_v.at(n) = zv;
    new_w.at(n) = zw;
    if (n > 0) {
      new_v.at(-n) = std::conj(zv);
      new_w.at(-n) = std::conj(zw);
    }
  }

  const double t_next = static_cast<double>(steps_ + 1) * dt;
  if (!new_v.all_finite() || !new_w.all_finite() ||
      new_v.max_abs() > opt_.blowup_threshold || new_w.max_abs() > opt_.blowup_threshold) {
    throw BlowupError("time integration blew up (coefficients beyond " +
                          fmtg(opt_.blowup_threshold) + ")",
                      t_next);
  }

  prev_v_ = state_.v_hat;
  prev_w_ = state_.w_hat;
  prev_rhs_v_ = rhs_v;
  have_prev_ = true;
  ++steps_;
  state_.v_hat = std::move(new_v);
  state_.w_hat = std::move(new_w);
  state_.t = static_cast<double>(steps_) * dt;
}

Trajectory simulate(const std::vector<double>& mu, const KineticsParams& p,
                    const Forcing& forcing, const FourierGrid& grid, const SpectralField& v0,
                    const SpectralField& w0, const SimRunConfig& cfg) {
  if (!(cfg.t_end > 0.0)) throw InputError("simulate: t_end must be positive");
  if (cfg.stride < 1) throw InputError("simulate: stride must be at least 1");
  Integrator integ(mu, p, forcing, grid, {cfg.scheme, cfg.dt, cfg.blowup_threshold});
  integ.set_state(v0, w0);

  const long long nsteps = std::llround(cfg.t_end / cfg.dt);
  if (nsteps < 1) throw InputError("simulate: t_end is shorter than one step");

  Trajectory traj;
  traj.dt = cfg.dt;
  traj.stride = cfg.stride;
  traj.scheme = cfg.scheme;
  traj.samples.reserve(static_cast<std::size_t>(nsteps / cfg.stride) + 2);
  traj.samples.push_back(integ.state());
  for (long long k = 1; k <= nsteps; ++k) {
    integ.step();
    if (k % cfg.stride == 0 || k == nsteps) traj.samples.push_back(integ.state());
  }
  return traj;
}

std::vector<EnergyRecord> energy_balance(const Trajectory& traj, const KineticsParams& p,
                                         const std::vector<double>& mu, const Geometry& geom,
                                         const FourierGrid& grid, const Forcing& forcing) {
  if (traj.samples.size() < 3) {
    throw InputError("energy balance: need at least three emitted samples");
  }
  const int K = traj.samples.front().v_hat.k_max();
  if (static_cast<int>(mu.size()) < K + 1) {
    throw InputError("energy balance: transfer eigenvalues do not cover the state band");
  }
  const double ring = kTwoPi * geom.rho;

  std::vector<EnergyRecord> out(traj.samples.size());
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const SimState& s = traj.samples[i];
    double sum_w = 0.0;
    double sum_weighted_v = 0.0;
    for (int n = -K; n <= K; ++n) {
      sum_weighted_v +=
          (p.a + mu[static_cast<std::size_t>(std::abs(n))]) * std::norm(s.v_hat.at(n));
      sum_w += std::norm(s.w_hat.at(n));
    }
    // The cubic moments are plain sample means: the band of v^4 still fits
    // strictly under the sample count, so both integrals are exact.
    const std::vector<double> v = synthesize(s.v_hat, grid);
    double m3 = 0.0;
    double m4 = 0.0;
    for (const double x : v) {
      const double x2 = x * x;
      m3 += x2 * x;
      m4 += x2 * x2;
    }
    const double int_v3 = ring * m3 / static_cast<double>(v.size());
    const double int_v4 = ring * m4 / static_cast<double>(v.size());

    double drive_forcing = 0.0;
    if (!forcing.is_zero()) {
      std::complex<double> acc = {0.0, 0.0};
      for (int n = -K; n <= K; ++n) acc += forcing.mode(n, s.t) * std::conj(s.v_hat.at(n));
      drive_forcing = ring * acc.real();
    }

    EnergyRecord& rec = out[i];
    rec.t = s.t;
    rec.psi = interface_energy(s, ring, p.c);
    rec.dissipation = ring * sum_weighted_v + int_v4 + (p.b / p.c) * ring * sum_w;
    rec.drive = drive_forcing + (p.a + 1.0) * int_v3;
  }

  const std::size_t last = out.size() - 1;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::size_t lo = i == 0 ? 0 : (i == last ? last - 2 : i - 1);
    const EnergyRecord& r0 = out[lo];
    const EnergyRecord& r1 = out[lo + 1];
    const EnergyRecord& r2 = out[lo + 2];
    const double dpsi =
        lagrange3_deriv(r0.t, r1.t, r2.t, r0.psi, r1.psi, r2.psi, out[i].t);
    out[i].residual = dpsi + out[i].dissipation - out[i].drive;
  }
  return out;
}

GrowthEnvelopeReport growth_envelope_check(const Trajectory& traj, const KineticsParams& p,
                                           const std::vector<double>& mu, const Geometry& geom,
                                           const Forcing& forcing, double slack) {
  if (traj.samples.empty()) throw InputError("envelope check: empty trajectory");
  const int K = traj.samples.front().v_hat.k_max();
  if (static_cast<int>(mu.size()) < K + 1) {
    throw InputError("envelope check: transfer eigenvalues do not cover the state band");
  }
  const double ring = kTwoPi * geom.rho;

  GrowthEnvelopeReport rep;
  rep.c0 = std::numeric_limits<double>::infinity();
  for (int n = 0; n <= K; ++n) {
    const double weight = std::sqrt(1.0 + static_cast<double>(n) * n);
    rep.c0 = std::min(rep.c0, (p.a + mu[static_cast<std::size_t>(n)]) / weight);
  }

  const double rate = (p.a + 1.0) * (p.a + 1.0);
  const double psi0 = interface_energy(traj.samples.front(), ring, p.c);
  double integral = 0.0;
  double prev_t = 0.0;
  double prev_weight_norm = 0.0;
  rep.satisfied = true;
  rep.max_ratio = 0.0;
  rep.first_violation = kNaN;
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const SimState& s = traj.samples[i];
    double weight_norm = 0.0;
    if (!forcing.is_zero()) {
      for (int n = -K; n <= K; ++n) {
        const double w = 1.0 / std::sqrt(1.0 + static_cast<double>(n) * n);
        weight_norm += w * std::norm(forcing.mode(n, s.t));
      }
      weight_norm *= ring;
    }
    if (i > 0) integral += 0.5 * (s.t - prev_t) * (weight_norm + prev_weight_norm);
    prev_t = s.t;
    prev_weight_norm = weight_norm;

    const double psi = interface_energy(s, ring, p.c);
    const double envelope = std::exp(rate * s.t) * (psi0 + integral / (2.0 * rep.c0));
    rep.t.push_back(s.t);
    rep.psi.push_back(psi);
    rep.envelope.push_back(envelope);
    const double ratio = psi / std::max(envelope, std::numeric_limits<double>::min());
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (ratio > 1.0 + slack && rep.satisfied) {
      rep.satisfied = false;
      rep.first_violation = s.t;
    }
  }
  return rep;
}

double fit_log_slope(const std::vector<double>& t, const std::vector<double>& y) {
  if (t.size() != y.size()) throw InputError("log-slope fit: length mismatch");
  if (t.size() < 2) throw InputError("log-slope fit: need at least two samples");
  double mean_t = 0.0;
  double mean_ly = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(y[i] > 0.0)) throw InputError("log-slope fit: values must be positive");
    mean_t += t[i];
    mean_ly += std::log(y[i]);
  }
  mean_t /= static_cast<double>(t.size());
  mean_ly /= static_cast<double>(t.size());
  double num = 0.0;
  double den = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    const double dt = t[i] - mean_t;
    num += dt * (std::log(y[i]) - mean_ly);
    den += dt * dt;
  }
  if (!(den > 0.0)) throw InputError("log-slope fit: degenerate time window");
  return num / den;
}

}  // namespace bidomain
