#include <cmath>
#include <vector>

#include "bidomain/errors.hpp"
#include "bidomain/dtn.hpp"
#include "bidomain/transmission.hpp"
#include "doctest.h"

using namespace bidomain;

namespace {

const Geometry kGeom(1.0, 2.0);
const ConductivityProfile kUnit = ConductivityProfile::constants(1.0, 1.0);

double mu_error(int n, const ConductivityProfile& cond, int nodes, double si, double se) {
  const RadialGrid grid = RadialGrid::uniform(kGeom, nodes, nodes);
  const ModeSpectrum spec = assemble_dtn(kGeom, cond, n, grid);
  return std::abs(spec.mu[static_cast<std::size_t>(n)] -
                  dtn_mu_closed_form(n, kGeom, si, se));
}

}  // namespace

TEST_CASE("numeric transfer eigenvalues match the separable solution") {
  const RadialGrid grid = RadialGrid::uniform(kGeom, 400, 400);
  const ModeSpectrum spec = assemble_dtn(kGeom, kUnit, 8, grid);
  REQUIRE(spec.k_max() == 8);
  CHECK(std::abs(spec.mu[0]) <= 1e-10);
  // The discretization error scales with mode number, so gauge it against
  // the eigenvalue magnitude.
  for (int n = 1; n <= 8; ++n) {
    const double exact = dtn_mu_closed_form(n, kGeom, 1.0, 1.0);
    const double err = std::abs(spec.mu[static_cast<std::size_t>(n)] - exact);
    CHECK(err / std::max(1.0, exact) <= 5e-4);
  }

  const ConductivityProfile contrast = ConductivityProfile::constants(2.0, 1.0);
  const ModeSpectrum spec2 = assemble_dtn(kGeom, contrast, 3, grid);
  for (int n = 1; n <= 3; ++n) {
    const double exact = dtn_mu_closed_form(n, kGeom, 2.0, 1.0);
    const double err = std::abs(spec2.mu[static_cast<std::size_t>(n)] - exact);
    CHECK(err / std::max(1.0, exact) <= 5e-4);
  }
}

TEST_CASE("eigenvalue error shrinks at second order") {
  const double coarse = mu_error(3, kUnit, 100, 1.0, 1.0);
  const double fine = mu_error(3, kUnit, 200, 1.0, 1.0);
  CHECK(coarse / fine > 3.0);
  CHECK(coarse / fine < 5.0);
}

TEST_CASE("unit jump solve reproduces the separable profiles") {
  const RadialGrid grid = RadialGrid::uniform(kGeom, 400, 400);
  const SourceData none = SourceData::zero(grid);

  const ModeSolution sol = solve_mode(1, kGeom, kUnit, 1.0, none, grid);
  // Interior: u_i = -(3/8) r.  Annulus: u_e = r/8 + 1/(2r).
  for (std::size_t j = 0; j < grid.nodes_i.size(); ++j) {
    CHECK(std::abs(sol.u_i[j] + 0.375 * grid.nodes_i[j]) <= 1e-4);
  }
  for (std::size_t j = 0; j < grid.nodes_e.size(); ++j) {
    const double r = grid.nodes_e[j];
    CHECK(std::abs(sol.u_e[j] - (0.125 * r + 0.5 / r)) <= 1e-4);
  }
  CHECK(sol.u_e.front() - sol.u_i.back() == 1.0);
  CHECK(sol.flux_sigma == doctest::Approx(-0.375).epsilon(1e-4));
  CHECK(sol.flux_inner == doctest::Approx(-0.375).epsilon(1e-4));
  CHECK(sol.flux_outer == doctest::Approx(-0.375).epsilon(1e-4));
}

TEST_CASE("mode-0 jump solve carries no flux and has zero mean") {
  const RadialGrid grid = RadialGrid::uniform(kGeom, 200, 200);
  const SourceData none = SourceData::zero(grid);
  const ModeSolution sol = solve_mode(0, kGeom, kUnit, 1.0, none, grid);
  CHECK(std::abs(sol.flux_sigma) <= 1e-10);
  CHECK(std::abs(sol.mean_value) <= 1e-12);
  CHECK(sol.u_e.front() - sol.u_i.back() == 1.0);
}

TEST_CASE("solvability bookkeeping for mode-0 sources") {
  const RadialGrid grid = RadialGrid::uniform(kGeom, 64, 64);

  SourceData ok(grid);
  ok.phi_vol_i[0] = std::vector<double>(grid.nodes_i.size(), 1.0);
  ok.phi_vol_e[0] = std::vector<double>(grid.nodes_e.size(), 1.0);
  ok.phi_bdry[0] = -1.0;  // r_out * phi_bdry cancels the volume integral r_out^2/2
  CHECK(std::abs(check_compatibility(ok, kGeom)) <= 1e-12);
  const ModeSolution sol = solve_mode(0, kGeom, kUnit, 0.0, ok, grid);
  CHECK(std::abs(sol.mean_value) <= 1e-12);
  CHECK_NOTHROW(compute_forcing(kGeom, kUnit, ok, 2, grid));

  SourceData bad = ok;
  bad.phi_bdry[0] = 1.0;
  CHECK(check_compatibility(bad, kGeom) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK_THROWS_AS(solve_mode(0, kGeom, kUnit, 0.0, bad, grid), ValidationError);
  CHECK_THROWS_AS(compute_forcing(kGeom, kUnit, bad, 2, grid), ValidationError);
}

TEST_CASE("interface source induces the hand-solved forcing") {
  const RadialGrid grid = RadialGrid::uniform(kGeom, 400, 400);
  SourceData src(grid);
  src.phi_sigma[1] = 1.0;

  const std::vector<double> phi = compute_forcing(kGeom, kUnit, src, 3, grid);
  REQUIRE(phi.size() == 4);
  CHECK(phi[0] == 0.0);  // untouched modes stay exactly zero
  CHECK(phi[2] == 0.0);
  CHECK(phi[3] == 0.0);
  CHECK(phi[1] == doctest::Approx(-0.125).epsilon(1e-4));

  const ModeSolution sol = solve_mode(1, kGeom, kUnit, 0.0, src, grid);
  CHECK(sol.flux_inner == doctest::Approx(0.625).epsilon(1e-4));
  CHECK(sol.flux_outer == doctest::Approx(-0.375).epsilon(1e-4));
  CHECK(sol.u_e.front() == sol.u_i.back());
}

TEST_CASE("potential reconstruction honors the prescribed jump") {
  const RadialGrid grid = RadialGrid::uniform(kGeom, 200, 200);
  const FourierGrid fgrid(4);
  SpectralField v(1);
  v.at(1) = {0.5, 0.0};
  v.at(-1) = {0.5, 0.0};  // samples are cos(theta)

  const SourceData none = SourceData::zero(grid);
  const PotentialField field = reconstruct_potential(v, none, kGeom, kUnit, grid, fgrid);
  REQUIRE(field.theta.size() == static_cast<std::size_t>(fgrid.m_phys()));
  REQUIRE(field.u_i.size() == grid.nodes_i.size());
  REQUIRE(field.u_e.size() == grid.nodes_e.size());

  for (std::size_t j = 0; j < field.theta.size(); ++j) {
    const double jump = field.u_e.front()[j] - field.u_i.back()[j];
    CHECK(std::abs(jump - std::cos(field.theta[j])) <= 1e-12);
  }
  for (std::size_t jr = 0; jr < grid.nodes_i.size(); ++jr) {
    for (std::size_t jt = 0; jt < field.theta.size(); ++jt) {
      const double expect = -0.375 * grid.nodes_i[jr] * std::cos(field.theta[jt]);
      CHECK(std::abs(field.u_i[jr][jt] - expect) <= 1e-4);
    }
  }
}

TEST_CASE("transmission solves reject malformed input") {
  const RadialGrid grid = RadialGrid::uniform(kGeom, 32, 32);
  const SourceData none = SourceData::zero(grid);
  CHECK_THROWS_AS(solve_mode(-1, kGeom, kUnit, 0.0, none, grid), InputError);
  CHECK_THROWS_AS(assemble_dtn(kGeom, kUnit, -1, grid), InputError);
  CHECK_THROWS_AS(compute_forcing(kGeom, kUnit, none, -2, grid), InputError);

  const Geometry other(1.0, 3.0);
  CHECK_THROWS_AS(solve_mode(1, other, kUnit, 0.0, none, grid), ValidationError);

  SourceData short_profile(grid);
  short_profile.phi_vol_i[1] = std::vector<double>(grid.nodes_i.size() - 1, 1.0);
  CHECK_THROWS_AS(solve_mode(1, kGeom, kUnit, 0.0, short_profile, grid), InputError);
}
