#pragma once

#include <map>
#include <vector>

#include "bidomain/fourier.hpp"
#include "bidomain/geometry.hpp"
#include "bidomain/radial_grid.hpp"

namespace bidomain {

// Modal source data for the transmission problem. Entries are Fourier
// coefficient values per mode index n >= 0 (a real even field cos(n theta)
// of unit amplitude has coefficient 1/2 at n). Absent modes are zero.
// Volume profiles are sampled on the grid nodes, one value per node and phase.
struct SourceData {
  RadialGrid grid;
  std::map<int, std::vector<double>> phi_vol_i;  // per-mode inner radial profile
  std::map<int, std::vector<double>> phi_vol_e;  // per-mode outer radial profile
  std::map<int, double> phi_bdry;                // outer-boundary conormal flux
  std::map<int, double> phi_sigma;               // interface flux jump source

  explicit SourceData(RadialGrid g) : grid(std::move(g)) {}
  static SourceData zero(const RadialGrid& g) { return SourceData(g); }

  bool mode_is_zero(int n) const {
    return phi_vol_i.find(n) == phi_vol_i.end() && phi_vol_e.find(n) == phi_vol_e.end() &&
           phi_bdry.find(n) == phi_bdry.end() && phi_sigma.find(n) == phi_sigma.end();
  }
  bool all_zero() const {
    return phi_vol_i.empty() && phi_vol_e.empty() && phi_bdry.empty() && phi_sigma.empty();
  }
};

// Radial solution of one angular mode of the transmission problem.
struct ModeSolution {
  std::vector<double> u_i;  // values on grid.nodes_i
  std::vector<double> u_e;  // values on grid.nodes_e
  double flux_inner;        // sigma_i u_i'(rho-), one-sided second-order stencil
  double flux_outer;        // sigma_e u_e'(rho+), one-sided second-order stencil
  double flux_sigma;        // algebraic mean of the one-sided values
  double mean_value;        // area mean over the whole cell (zero for n >= 1)
};

// Dirichlet-to-Neumann eigenvalues mu_0..mu_{k_max} of the numeric solver.
struct ModeSpectrum {
  std::vector<double> mu;
  int k_max() const { return static_cast<int>(mu.size()) - 1; }
};

// Solves the mode-n radial two-point problem
//   -(1/r) (r sigma u')' + (n^2/r^2) sigma u = phi_vol     on each phase,
//   u_e(rho) - u_i(rho) = v_n,
//   sigma_e u_e'(rho) - sigma_i u_i'(rho) = -phi_sigma_n,
//   sigma_e u_e'(r_out) = phi_bdry_n,
//   u_i(0) = 0 (n >= 1)   or   u_i'(0) = 0 with area mean zero (n = 0),
// with flux-form second-order finite volumes, sigma sampled at cell midpoints.
// The mode-0 nullspace (constants) is removed by a mean-zero constraint row
// solved together with the system, and mode-0 data must be compatible.
ModeSolution solve_mode(int n, const Geometry& geom, const ConductivityProfile& cond,
                        double v_n, const SourceData& sources, const RadialGrid& grid,
                        double tol_compat = 1e-10);

// mu_n = -flux_sigma of the unit-jump, zero-source solve, for n = 0..k_max.
// Fails if mu_0 strays from 0 beyond tol_mu or any mu_n is visibly negative.
ModeSpectrum assemble_dtn(const Geometry& geom, const ConductivityProfile& cond, int k_max,
                          const RadialGrid& grid, double tol_mu = 1e-8);

// Forcing functional induced by the sources: Phi_n = -flux_sigma of the
// zero-jump solve, for n = 0..k_max. Mode-0 data must be compatible.
std::vector<double> compute_forcing(const Geometry& geom, const ConductivityProfile& cond,
                                    const SourceData& sources, int k_max,
                                    const RadialGrid& grid, double tol_compat = 1e-10);

// Signed residual of the solvability condition
//   int_cell phi_vol + int_boundary phi_bdry + int_interface phi_sigma = 0.
// Only mode 0 contributes; the quadrature is the same one the solver uses for
// its right-hand sides, so a config passing this check is solvable to roundoff.
double check_compatibility(const SourceData& sources, const Geometry& geom);

// Two-phase potential on the (r, theta) product grid.
struct PotentialField {
  std::vector<double> theta;               // angular nodes
  std::vector<double> r_i, r_e;            // radial nodes per phase
  std::vector<std::vector<double>> u_i;    // [radial][angular]
  std::vector<std::vector<double>> u_e;    // [radial][angular]
};

// Reconstructs the potential with prescribed interface jump v (spectral
// coefficients) and sources: the jump of the result reproduces synthesize(v)
// to roundoff and the area mean vanishes.
PotentialField reconstruct_potential(const SpectralField& v, const SourceData& sources,
                                     const Geometry& geom, const ConductivityProfile& cond,
                                     const RadialGrid& grid, const FourierGrid& fgrid);

}  // namespace bidomain
