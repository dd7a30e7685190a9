#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bidomain/evolution.hpp"
#include "bidomain/fourier.hpp"
#include "bidomain/geometry.hpp"
#include "bidomain/kinetics.hpp"
#include "bidomain/radial_grid.hpp"
#include "bidomain/transmission.hpp"

namespace bidomain::tools {

// Observed-rate verification window for the simulate command.
struct RateCheck {
  std::string kind;       // "decay" or "growth"
  double fit_t0 = 0.0;    // decay: fit ln(norm) on [fit_t0, fit_t1]
  double fit_t1 = 0.0;
  double delta_min = 0.0;  // growth: fit while the deviation norm sits in
  double delta_max = 0.0;  // [delta_min, delta_max], before saturation
  double expect = 0.0;
  double rtol = 0.05;
};

// Optional pass/fail verifications, one flat [checks] section. Absent keys
// disable the corresponding check.
struct Checks {
  bool richardson = false;
  std::optional<double> dtn_scaled_err;
  std::optional<int> slope_n;
  double slope_rtol = 0.01;

  std::optional<bool> expect_compatible;
  std::optional<int> forcing_mode;
  std::optional<double> forcing_expect;
  double forcing_atol = 1e-4;

  std::optional<bool> expect_pair;
  std::optional<double> v_plus_expect, v_minus_expect;
  std::optional<double> stiff_plus_expect, stiff_minus_expect;
  double eq_rtol = 1e-10;

  std::optional<double> spectral_bound_expect;
  double spectral_bound_rtol = 1e-10;

  std::optional<std::string> expect_origin, expect_upper, expect_lower;
  std::string growth_target = "lower";
  std::optional<double> growth_expect;
  double growth_rtol = 0.01;
  std::optional<bool> expect_hyperbolic;

  std::optional<RateCheck> rate;

  std::vector<double> dt_list;
  double order_min = 1.8;
  double order_max = 2.2;
  std::optional<double> residual_max;
  bool envelope = false;
  std::optional<double> ode_tol;
  double ode_mu = 0.0;
  double ode_dt_ref = 1e-5;

  std::optional<int> sweep_count;
  double sweep_mu_max = 25.0;
  unsigned long long seed = 1;
};

// Initial interface state for time marching.
struct InitialSpec {
  std::string kind = "zero";  // zero | constant | harmonics | random | equilibrium
  double cv = 0.0, cw = 0.0;                      // constant: v, w
  std::vector<std::pair<int, double>> harmonics;  // cosine amplitudes per mode
  double amplitude = 0.0;                         // random
  std::string which = "lower";                    // equilibrium branch
};

// Typed view of one experiment description. load() gathers every problem in
// the file into a single ConfigError; the accessors below materialize core
// objects and name any entries still missing for the requested command.
struct ExperimentConfig {
  std::optional<double> rho, r_out;

  std::optional<double> sigma_i_const, sigma_e_const;
  std::vector<std::pair<double, double>> sigma_i_table, sigma_e_table;

  std::optional<int> k_max_opt, m_phys_opt, nodes_i_opt, nodes_e_opt;

  std::optional<double> a, b, c;

  std::map<int, double> src_sigma, src_bdry, src_vol_i, src_vol_e;

  std::string scheme = "sbdf2";
  std::optional<double> dt, t_end;
  int stride = 1;
  double blowup_threshold = 1e12;
  InitialSpec initial;
  double perturb = 0.0;
  std::vector<std::pair<int, double>> forcing_modes;
  std::vector<std::pair<double, double>> forcing_time;
  std::string mu_source = "closed";

  double tol_mu = 1e-8;
  double tol_compat = 1e-10;
  double tol_setdist = 1e-6;

  Checks checks;

  std::string out_dir = "out";
  std::string prefix;

  static ExperimentConfig load(const std::string& path);

  Geometry geometry() const;
  ConductivityProfile conductivity() const;
  bool has_radial_grid() const { return nodes_i_opt && nodes_e_opt; }
  RadialGrid radial_grid(const Geometry& geom) const;
  KineticsParams kinetics() const;
  int k_max() const;
  FourierGrid fourier_grid() const;

  // Transfer eigenvalues mu_0..mu_k and the asymptotic spacing, either from
  // the separable solution (constant conductivities) or the radial solver.
  std::pair<std::vector<double>, double> mu_values(const Geometry& geom,
                                                   const ConductivityProfile& cond) const;

  SourceData sources(const RadialGrid& grid) const;
  Forcing forcing() const;
  std::pair<SpectralField, SpectralField> initial_state(const KineticsParams& kp, int k) const;
  SimRunConfig run_config() const;

  // <out_dir>/<prefix>_<kind>.csv, creating out_dir on first use.
  std::string out_path(const std::string& kind) const;
};

// Parses sums like "0.1*cos(1theta) - 0.25*cos(3theta) + 0.05" into
// (mode, cosine amplitude) pairs; a bare number is the mode-0 term.
std::vector<std::pair<int, double>> parse_harmonics(const std::string& expr,
                                                    const std::string& key,
                                                    std::vector<std::string>& issues);

}  // namespace bidomain::tools
