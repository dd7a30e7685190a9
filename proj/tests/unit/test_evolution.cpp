#include <cmath>
#include <complex>
#include <vector>

#include "bidomain/errors.hpp"
#include "bidomain/evolution.hpp"
#include "bidomain/reference.hpp"
#include "doctest.h"

using namespace bidomain;

namespace {

const KineticsParams kStd(0.1, 1.0, 0.01);
const Geometry kGeom(1.0, 2.0);
const std::vector<double> kMu{0.0, 0.375, 0.9375, 1.4765625};

SpectralField cos_theta_field(int k_max, double amplitude) {
  SpectralField f(k_max);
  f.at(1) = {0.5 * amplitude, 0.0};
  f.at(-1) = {0.5 * amplitude, 0.0};
  return f;
}

double run_mode0_sbdf2(double v0, double dt, double t_end) {
  SpectralField v(0), w(0);
  v.at(0) = {v0, 0.0};
  SimRunConfig cfg;
  cfg.dt = dt;
  cfg.t_end = t_end;
  cfg.stride = 1 << 20;  // final state only
  const Trajectory traj = simulate({0.0}, kStd, Forcing(), FourierGrid(1), v, w, cfg);
  return traj.samples.back().v_hat.at(0).real();
}

}  // namespace

TEST_CASE("scheme names round trip") {
  CHECK(scheme_from_name("imex-euler") == Scheme::imex_euler);
  CHECK(scheme_from_name("sbdf2") == Scheme::sbdf2);
  CHECK(scheme_from_name(scheme_name(Scheme::imex_euler)) == Scheme::imex_euler);
  CHECK(scheme_from_name(scheme_name(Scheme::sbdf2)) == Scheme::sbdf2);
  CHECK_THROWS_AS(scheme_from_name("leapfrog"), InputError);
}

TEST_CASE("forcing modulation interpolates and clamps") {
  const Forcing none;
  CHECK(none.is_zero());
  CHECK(none.modulation(3.0) == 1.0);
  CHECK(none.mode(2, 1.0) == std::complex<double>(0.0, 0.0));

  SpectralField base(1);
  base.at(1) = {0.25, 0.0};
  base.at(-1) = {0.25, 0.0};
  const Forcing steady(base);
  CHECK_FALSE(steady.is_zero());
  CHECK(steady.modulation(7.0) == 1.0);
  CHECK(steady.mode(1, 7.0) == std::complex<double>(0.25, 0.0));

  const Forcing ramp(base, {{0.0, 0.0}, {1.0, 2.0}, {3.0, 2.0}});
  CHECK(ramp.modulation(-5.0) == 0.0);
  CHECK(ramp.modulation(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ramp.modulation(2.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(ramp.modulation(10.0) == 2.0);
  CHECK(ramp.mode(1, 0.5).real() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(ramp.mode(1, -5.0) == std::complex<double>(0.0, 0.0));
  CHECK(ramp.mode(2, 0.5) == std::complex<double>(0.0, 0.0));

  SpectralField crooked(1);
  crooked.at(1) = {0.3, 0.1};
  crooked.at(-1) = {0.3, 0.1};
  CHECK_THROWS_AS(Forcing{crooked}, ValidationError);
  CHECK_THROWS_AS(Forcing(base, {}), InputError);
  CHECK_THROWS_AS(Forcing(base, {{1.0, 0.0}, {1.0, 1.0}}), InputError);
}

TEST_CASE("cubic nonlinearity of a pure cosine") {
  // (a+1)v^2 - v^3 for v = cos(theta) reduces by product formulas to
  // (a+1)/2 + (a+1)/2 cos(2 theta) - 3/4 cos(theta) - 1/4 cos(3 theta).
  const SpectralField v = cos_theta_field(3, 1.0);
  const SpectralField g = nonlinearity(v, kStd, FourierGrid(3));
  CHECK(std::abs(g.at(0) - std::complex<double>(0.55, 0.0)) <= 1e-14);
  CHECK(std::abs(g.at(1) - std::complex<double>(-0.375, 0.0)) <= 1e-14);
  CHECK(std::abs(g.at(2) - std::complex<double>(0.275, 0.0)) <= 1e-14);
  CHECK(std::abs(g.at(3) - std::complex<double>(-0.125, 0.0)) <= 1e-14);
  for (int n = 1; n <= 3; ++n) CHECK(g.at(-n) == std::conj(g.at(n)));
  CHECK_THROWS_AS(nonlinearity(v, kStd, FourierGrid(2)), InputError);
}

TEST_CASE("constant states never leak into higher modes") {
  for (const Scheme scheme : {Scheme::imex_euler, Scheme::sbdf2}) {
    SpectralField v(2), w(2);
    v.at(0) = {0.7310585786300049, 0.0};
    w.at(0) = {0.25, 0.0};
    IntegratorOptions opt;
    opt.scheme = scheme;
    opt.dt = 0.01;
    Integrator integ({0.0, 0.375, 0.9375}, kStd, Forcing(), FourierGrid(2), opt);
    integ.set_state(v, w);
    for (int k = 0; k < 50; ++k) integ.step();
    CHECK(integ.state().v_hat.max_abs_nonzero_mode() == 0.0);
    CHECK(integ.state().w_hat.max_abs_nonzero_mode() == 0.0);
    CHECK(integ.state().v_hat.at(0).imag() == 0.0);
  }
}

TEST_CASE("mode-0 march agrees with an independent reference") {
  const std::vector<OdePoint> ref = rk4_kinetics(0.4, 0.0, 0.0, kStd, 1e-3, 10000);
  CHECK(ref.size() == 10001);
  CHECK(ref.back().t == doctest::Approx(10.0).epsilon(1e-12));
  const double got = run_mode0_sbdf2(0.4, 1e-3, 10.0);
  CHECK(std::abs(got - ref.back().v) <= 1e-4);
}

TEST_CASE("two-step scheme converges at second order") {
  const std::vector<OdePoint> ref = rk4_kinetics(0.4, 0.0, 0.0, kStd, 1e-5, 100000);
  const double exact = ref.back().v;  // t = 1
  const double e_coarse = std::abs(run_mode0_sbdf2(0.4, 4e-3, 1.0) - exact);
  const double e_fine = std::abs(run_mode0_sbdf2(0.4, 2e-3, 1.0) - exact);
  CHECK(e_coarse / e_fine > 3.0);
  CHECK(e_coarse / e_fine < 5.0);
}

TEST_CASE("equilibria are fixed points of both schemes") {
  const EquilibriumSet eq = equilibria(kStd);
  for (const Scheme scheme : {Scheme::imex_euler, Scheme::sbdf2}) {
    SpectralField v(1), w(1);
    v.at(0) = {eq.minus.v, 0.0};
    w.at(0) = {eq.minus.w, 0.0};
    IntegratorOptions opt;
    opt.scheme = scheme;
    opt.dt = 1e-3;
    Integrator integ({0.0, 0.375}, kStd, Forcing(), FourierGrid(1), opt);
    integ.set_state(v, w);
    for (int k = 0; k < 1000; ++k) integ.step();
    CHECK(std::abs(integ.state().v_hat.at(0).real() - eq.minus.v) <= 1e-12);
    CHECK(std::abs(integ.state().w_hat.at(0).real() - eq.minus.w) <= 1e-12);
  }
}

TEST_CASE("blow-up detection leaves the last good state intact") {
  SpectralField v(1), w(1);
  v.at(0) = {3.0, 0.0};
  IntegratorOptions opt;
  opt.scheme = Scheme::imex_euler;
  opt.dt = 0.1;
  opt.blowup_threshold = 0.5;
  Integrator integ({0.0, 0.375}, kStd, Forcing(), FourierGrid(1), opt);
  integ.set_state(v, w);
  CHECK_THROWS_AS(integ.step(), BlowupError);
  CHECK(integ.steps_taken() == 0);
  CHECK(integ.state().t == 0.0);
  CHECK(integ.state().v_hat.at(0).real() == 3.0);
  try {
    integ.step();
  } catch (const BlowupError& e) {
    CHECK(e.t == doctest::Approx(0.1).epsilon(1e-15));
  }
}

TEST_CASE("trajectory sampling emits the initial, strided, and final states") {
  SpectralField v(1), w(1);
  v.at(0) = {0.2, 0.0};
  SimRunConfig cfg;
  cfg.dt = 0.1;
  cfg.t_end = 1.0;
  cfg.stride = 3;
  const Trajectory traj = simulate({0.0, 0.375}, kStd, Forcing(), FourierGrid(1), v, w, cfg);
  REQUIRE(traj.samples.size() == 5);
  const double expect[] = {0.0, 0.3, 0.6, 0.9, 1.0};
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    CHECK(traj.samples[i].t == doctest::Approx(expect[i]).epsilon(1e-12));
  }
  CHECK_THROWS_AS(simulate({0.0}, kStd, Forcing(), FourierGrid(1), SpectralField(0),
                           SpectralField(0), SimRunConfig{}),
                  InputError);
}

TEST_CASE("energy bookkeeping closes along a decaying run") {
  const SpectralField v0 = cos_theta_field(3, 0.1);
  const SpectralField w0(3);
  SimRunConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.stride = 10;
  const FourierGrid grid(3);
  const Trajectory traj = simulate(kMu, kStd, Forcing(), grid, v0, w0, cfg);

  const std::vector<EnergyRecord> recs = energy_balance(traj, kStd, kMu, kGeom, grid, Forcing());
  REQUIRE(recs.size() == traj.samples.size());
  CHECK(recs.back().psi < recs.front().psi);
  for (const EnergyRecord& r : recs) {
    CHECK(std::isfinite(r.residual));
    CHECK(std::abs(r.residual) <= 1e-5);
    CHECK(r.dissipation > 0.0);
  }
}

TEST_CASE("a-priori envelope holds with room to spare on decay") {
  const SpectralField v0 = cos_theta_field(3, 0.1);
  const SpectralField w0(3);
  SimRunConfig cfg;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.stride = 10;
  const Trajectory traj = simulate(kMu, kStd, Forcing(), FourierGrid(3), v0, w0, cfg);

  const GrowthEnvelopeReport rep = growth_envelope_check(traj, kStd, kMu, kGeom, Forcing());
  CHECK(rep.c0 == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(rep.satisfied);
  // The ratio is exactly 1 at t = 0 and decays from there.
  CHECK(rep.max_ratio <= 1.0);
  CHECK(std::isnan(rep.first_violation));
  CHECK(rep.t.size() == traj.samples.size());
}

TEST_CASE("log-slope fit recovers a pure exponential rate") {
  std::vector<double> t, y;
  for (int i = 0; i <= 10; ++i) {
    t.push_back(0.1 * i);
    y.push_back(3.0 * std::exp(-2.0 * 0.1 * i));
  }
  CHECK(fit_log_slope(t, y) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_AS(fit_log_slope({0.0, 1.0}, {1.0}), InputError);
  CHECK_THROWS_AS(fit_log_slope({0.0}, {1.0}), InputError);
  CHECK_THROWS_AS(fit_log_slope({0.0, 1.0}, {1.0, -1.0}), InputError);
  CHECK_THROWS_AS(fit_log_slope({1.0, 1.0}, {1.0, 1.0}), InputError);
}

TEST_CASE("integrator rejects inconsistent configurations") {
  IntegratorOptions opt;
  opt.dt = 0.0;
  CHECK_THROWS_AS(Integrator({0.0}, kStd, Forcing(), FourierGrid(1), opt), InputError);
  opt.dt = 0.1;
  CHECK_THROWS_AS(Integrator({}, kStd, Forcing(), FourierGrid(1), opt), InputError);
  CHECK_THROWS_AS(Integrator({0.0, 0.375, 0.9375}, kStd, Forcing(), FourierGrid(1), opt),
                  InputError);

  Integrator integ({0.0, 0.375}, kStd, Forcing(), FourierGrid(1), opt);
  CHECK_THROWS_AS(integ.set_state(SpectralField(2), SpectralField(2)), InputError);
  SpectralField bad(1), w(1);
  bad.at(1) = {0.3, 0.1};
  bad.at(-1) = {0.3, 0.1};
  CHECK_THROWS_AS(integ.set_state(bad, w), ValidationError);
}
