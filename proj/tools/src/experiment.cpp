#include "experiment.hpp"

#include <cstdlib>
#include <filesystem>
#include <random>

#include "bidomain/dtn.hpp"
#include "bidomain/errors.hpp"
#include "bidomain/spectral_analysis.hpp"
#include "ini.hpp"

namespace bidomain::tools {
namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t from = 0;
  while (true) {
    const auto at = s.find(sep, from);
    if (at == std::string::npos) {
      out.push_back(trim(s.substr(from)));
      return out;
    }
    out.push_back(trim(s.substr(from, at - from)));
    from = at + 1;
  }
}

std::optional<double> to_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const double x = std::strtod(s.c_str(), &end);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return x;
}

std::optional<long long> to_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  char* end = nullptr;
  const long long x = std::strtoll(s.c_str(), &end, 10);
  if (end != s.c_str() + s.size()) return std::nullopt;
  return x;
}

// Gathers typed values out of an Ini, recording one issue per defect.
class Reader {
 public:
  Reader(const Ini& ini, std::vector<std::string>& issues) : ini_(ini), issues_(issues) {}

  void number(const char* sec, const char* key, std::optional<double>& out) {
    if (const auto raw = ini_.take(sec, key)) {
      if (const auto x = to_double(*raw)) {
        out = *x;
      } else {
        bad(sec, key, *raw, "not a number");
      }
    }
  }

  void number_or(const char* sec, const char* key, double& out) {
    std::optional<double> v;
    number(sec, key, v);
    if (v) out = *v;
  }

  void integer(const char* sec, const char* key, std::optional<int>& out) {
    if (const auto raw = ini_.take(sec, key)) {
      if (const auto x = to_int(*raw)) {
        out = static_cast<int>(*x);
      } else {
        bad(sec, key, *raw, "not an integer");
      }
    }
  }

  void integer_or(const char* sec, const char* key, int& out) {
    std::optional<int> v;
    integer(sec, key, v);
    if (v) out = *v;
  }

  void unsigned_or(const char* sec, const char* key, unsigned long long& out) {
    if (const auto raw = ini_.take(sec, key)) {
      if (const auto x = to_int(*raw); x && *x >= 0) {
        out = static_cast<unsigned long long>(*x);
      } else {
        bad(sec, key, *raw, "not a nonnegative integer");
      }
    }
  }

  void text_or(const char* sec, const char* key, std::string& out) {
    if (const auto raw = ini_.take(sec, key)) out = *raw;
  }

  void text(const char* sec, const char* key, std::optional<std::string>& out) {
    if (const auto raw = ini_.take(sec, key)) out = *raw;
  }

  void flag(const char* sec, const char* key, std::optional<bool>& out) {
    if (const auto raw = ini_.take(sec, key)) {
      if (*raw == "true" || *raw == "on" || *raw == "1") {
        out = true;
      } else if (*raw == "false" || *raw == "off" || *raw == "0") {
        out = false;
      } else {
        bad(sec, key, *raw, "expected true/false");
      }
    }
  }

  void flag_or(const char* sec, const char* key, bool& out) {
    std::optional<bool> v;
    flag(sec, key, v);
    if (v) out = *v;
  }

  // "n:value, n:value" with integer modes.
  void mode_list(const char* sec, const char* key, std::map<int, double>& out) {
    const auto raw = ini_.take(sec, key);
    if (!raw) return;
    for (const std::string& item : split(*raw, ',')) {
      if (item.empty()) continue;
      const auto colon = item.find(':');
      const auto n = colon == std::string::npos ? std::nullopt : to_int(item.substr(0, colon));
      const auto v =
          colon == std::string::npos
              ? std::nullopt
              : to_double(trim(item.substr(colon + 1)));
      if (!n || !v || *n < 0) {
        bad(sec, key, item, "expected 'mode:value' with a nonnegative mode");
        continue;
      }
      if (!out.emplace(static_cast<int>(*n), *v).second) {
        bad(sec, key, item, "mode listed twice");
      }
    }
  }

  // "x:y, x:y" with real abscissae, kept in file order.
  void pair_list(const char* sec, const char* key,
                 std::vector<std::pair<double, double>>& out) {
    const auto raw = ini_.take(sec, key);
    if (!raw) return;
    for (const std::string& item : split(*raw, ',')) {
      if (item.empty()) continue;
      const auto colon = item.find(':');
      const auto x = colon == std::string::npos ? std::nullopt : to_double(item.substr(0, colon));
      const auto y =
          colon == std::string::npos
              ? std::nullopt
              : to_double(trim(item.substr(colon + 1)));
      if (!x || !y) {
        bad(sec, key, item, "expected 'x:y'");
        continue;
      }
      out.emplace_back(*x, *y);
    }
  }

  void number_list(const char* sec, const char* key, std::vector<double>& out) {
    const auto raw = ini_.take(sec, key);
    if (!raw) return;
    for (const std::string& item : split(*raw, ',')) {
      if (item.empty()) continue;
      if (const auto x = to_double(item)) {
        out.push_back(*x);
      } else {
        bad(sec, key, item, "not a number");
      }
    }
  }

  void bad(const char* sec, const char* key, const std::string& raw, const char* why) {
    issues_.push_back(std::string(sec) + "." + key + " = '" + raw + "': " + why);
  }

 private:
  const Ini& ini_;
  std::vector<std::string>& issues_;
};

void require(const std::vector<std::string>& missing) {
  if (!missing.empty()) {
    std::vector<std::string> msgs;
    msgs.reserve(missing.size());
    for (const std::string& key : missing) msgs.push_back("missing required entry " + key);
    throw ConfigError(msgs);
  }
}

}  // namespace

std::vector<std::pair<int, double>> parse_harmonics(const std::string& expr,
                                                    const std::string& key,
                                                    std::vector<std::string>& issues) {
  std::map<int, double> acc;
  std::size_t p = 0;
  const auto skip_ws = [&] {
    while (p < expr.size() && (expr[p] == ' ' || expr[p] == '\t')) ++p;
  };
  const auto fail = [&](const char* why) {
    issues.push_back(key + " = '" + expr + "': " + why);
    return std::vector<std::pair<int, double>>{};
  };

  bool first = true;
  while (true) {
    skip_ws();
    if (p == expr.size()) {
      if (first) return fail("empty expression");
      break;
    }
    double sign = 1.0;
    if (expr[p] == '+' || expr[p] == '-') {
      if (first && expr[p] == '+') return fail("leading '+' is not a term");
      sign = expr[p] == '-' ? -1.0 : 1.0;
      ++p;
      skip_ws();
    } else if (!first) {
      return fail("terms must be joined by '+' or '-'");
    }
    first = false;

    double coef = 1.0;
    bool have_number = false;
    if (expr.compare(p, 4, "cos(") != 0) {
      char* end = nullptr;
      coef = std::strtod(expr.c_str() + p, &end);
      if (end == expr.c_str() + p) return fail("expected a coefficient or cos(...)");
      p = static_cast<std::size_t>(end - expr.c_str());
      have_number = true;
      skip_ws();
      if (p < expr.size() && expr[p] == '*') {
        ++p;
        skip_ws();
      } else if (p == expr.size() || expr[p] == '+' || expr[p] == '-') {
        acc[0] += sign * coef;  // bare constant term
        continue;
      }
    }
    if (expr.compare(p, 4, "cos(") != 0) {
      return fail(have_number ? "expected cos(...) after '*'" : "expected a term");
    }
    p += 4;
    skip_ws();
    char* end = nullptr;
    const long long n = std::strtoll(expr.c_str() + p, &end, 10);
    if (end == expr.c_str() + p || n < 0) return fail("expected a nonnegative mode number");
    p = static_cast<std::size_t>(end - expr.c_str());
    skip_ws();
    if (expr.compare(p, 5, "theta") != 0) return fail("expected 'theta' after the mode number");
    p += 5;
    skip_ws();
    if (p == expr.size() || expr[p] != ')') return fail("missing ')'");
    ++p;
    acc[static_cast<int>(n)] += sign * coef;
  }
  return {acc.begin(), acc.end()};
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::vector<std::string> issues;
  const Ini ini = Ini::parse_file(path, issues);
  ExperimentConfig cfg;
  Reader rd(ini, issues);

  rd.number("geometry", "rho", cfg.rho);
  rd.number("geometry", "r_out", cfg.r_out);
  if (cfg.rho && !(*cfg.rho > 0.0)) {
    issues.push_back("geometry.rho = " + std::to_string(*cfg.rho) + ": must be positive");
  }
  if (cfg.rho && cfg.r_out && !(*cfg.r_out > *cfg.rho)) {
    issues.push_back("geometry.r_out must exceed geometry.rho");
  }

  rd.number("conductivity", "sigma_i", cfg.sigma_i_const);
  rd.number("conductivity", "sigma_e", cfg.sigma_e_const);
  rd.pair_list("conductivity", "sigma_i_table", cfg.sigma_i_table);
  rd.pair_list("conductivity", "sigma_e_table", cfg.sigma_e_table);
  if (cfg.sigma_i_const && !cfg.sigma_i_table.empty()) {
    issues.push_back("conductivity: sigma_i and sigma_i_table are mutually exclusive");
  }
  if (cfg.sigma_e_const && !cfg.sigma_e_table.empty()) {
    issues.push_back("conductivity: sigma_e and sigma_e_table are mutually exclusive");
  }
  for (const auto* p : {&cfg.sigma_i_const, &cfg.sigma_e_const}) {
    if (*p && !(**p > 0.0)) {
      issues.push_back(std::string("conductivity.sigma_") +
                       (p == &cfg.sigma_i_const ? "i" : "e") + " must be positive");
    }
  }

  rd.integer("grid", "k_max", cfg.k_max_opt);
  rd.integer("grid", "m_phys", cfg.m_phys_opt);
  rd.integer("grid", "nodes_i", cfg.nodes_i_opt);
  rd.integer("grid", "nodes_e", cfg.nodes_e_opt);
  if (cfg.k_max_opt && *cfg.k_max_opt < 1) {
    issues.push_back("grid.k_max = " + std::to_string(*cfg.k_max_opt) + ": must be at least 1");
  }

  rd.number("kinetics", "a", cfg.a);
  rd.number("kinetics", "b", cfg.b);
  rd.number("kinetics", "c", cfg.c);
  if (cfg.a && !(*cfg.a > 0.0 && *cfg.a < 1.0)) {
    issues.push_back("kinetics.a = " + std::to_string(*cfg.a) + ": must satisfy 0 < a < 1");
  }
  if (cfg.b && !(*cfg.b > 0.0)) {
    issues.push_back("kinetics.b = " + std::to_string(*cfg.b) + ": must be positive");
  }
  if (cfg.c && !(*cfg.c > 0.0)) {
    issues.push_back("kinetics.c = " + std::to_string(*cfg.c) + ": must be positive");
  }

  rd.mode_list("sources", "phi_sigma", cfg.src_sigma);
  rd.mode_list("sources", "phi_bdry", cfg.src_bdry);
  rd.mode_list("sources", "phi_vol_i", cfg.src_vol_i);
  rd.mode_list("sources", "phi_vol_e", cfg.src_vol_e);

  rd.text_or("simulation", "scheme", cfg.scheme);
  rd.number("simulation", "dt", cfg.dt);
  rd.number("simulation", "t_end", cfg.t_end);
  rd.integer_or("simulation", "stride", cfg.stride);
  rd.number_or("simulation", "blowup_threshold", cfg.blowup_threshold);
  rd.number_or("simulation", "perturb", cfg.perturb);
  rd.text_or("simulation", "mu_source", cfg.mu_source);
  if (cfg.mu_source != "closed" && cfg.mu_source != "numeric") {
    issues.push_back("simulation.mu_source = '" + cfg.mu_source +
                     "': expected closed or numeric");
  }

  std::optional<std::string> initial_raw;
  rd.text("simulation", "initial", initial_raw);
  if (initial_raw) {
    const auto colon = initial_raw->find(':');
    const std::string kind = trim(initial_raw->substr(0, colon));
    const std::string args =
        colon == std::string::npos ? "" : trim(initial_raw->substr(colon + 1));
    cfg.initial.kind = kind;
    if (kind == "zero") {
      if (!args.empty()) issues.push_back("simulation.initial: zero takes no arguments");
    } else if (kind == "constant") {
      const auto parts = split(args, ',');
      const auto v = parts.empty() ? std::nullopt : to_double(parts[0]);
      if (!v || parts.size() > 2) {
        issues.push_back("simulation.initial = '" + *initial_raw +
                         "': expected constant:v[,w]");
      } else {
        cfg.initial.cv = *v;
        if (parts.size() == 2) {
          if (const auto w = to_double(parts[1])) {
            cfg.initial.cw = *w;
          } else {
            issues.push_back("simulation.initial: recovery value is not a number");
          }
        }
      }
    } else if (kind == "harmonics") {
      cfg.initial.harmonics = parse_harmonics(args, "simulation.initial", issues);
    } else if (kind == "random") {
      if (const auto amp = to_double(args)) {
        cfg.initial.amplitude = *amp;
      } else {
        issues.push_back("simulation.initial = '" + *initial_raw + "': expected random:amplitude");
      }
    } else if (kind == "equilibrium") {
      if (args == "origin" || args == "upper" || args == "lower") {
        cfg.initial.which = args;
      } else {
        issues.push_back("simulation.initial = '" + *initial_raw +
                         "': expected equilibrium:origin|upper|lower");
      }
    } else {
      issues.push_back("simulation.initial = '" + *initial_raw +
                       "': unknown kind (zero|constant|harmonics|random|equilibrium)");
    }
  }

  std::optional<std::string> forcing_raw;
  rd.text("simulation", "forcing", forcing_raw);
  if (forcing_raw) {
    cfg.forcing_modes = parse_harmonics(*forcing_raw, "simulation.forcing", issues);
  }
  rd.pair_list("simulation", "forcing_time", cfg.forcing_time);
  for (std::size_t i = 1; i < cfg.forcing_time.size(); ++i) {
    if (!(cfg.forcing_time[i].first > cfg.forcing_time[i - 1].first)) {
      issues.push_back("simulation.forcing_time: knot times must be strictly increasing");
      break;
    }
  }

  rd.number_or("tolerances", "tol_mu", cfg.tol_mu);
  rd.number_or("tolerances", "tol_compat", cfg.tol_compat);
  rd.number_or("tolerances", "tol_setdist", cfg.tol_setdist);

  Checks& ck = cfg.checks;
  rd.flag_or("checks", "richardson", ck.richardson);
  rd.number("checks", "dtn_scaled_err", ck.dtn_scaled_err);
  rd.integer("checks", "slope_n", ck.slope_n);
  rd.number_or("checks", "slope_rtol", ck.slope_rtol);
  rd.flag("checks", "expect_compatible", ck.expect_compatible);
  rd.integer("checks", "forcing_mode", ck.forcing_mode);
  rd.number("checks", "forcing_expect", ck.forcing_expect);
  rd.number_or("checks", "forcing_atol", ck.forcing_atol);
  rd.flag("checks", "expect_pair", ck.expect_pair);
  rd.number("checks", "v_plus_expect", ck.v_plus_expect);
  rd.number("checks", "v_minus_expect", ck.v_minus_expect);
  rd.number("checks", "stiff_plus_expect", ck.stiff_plus_expect);
  rd.number("checks", "stiff_minus_expect", ck.stiff_minus_expect);
  rd.number_or("checks", "eq_rtol", ck.eq_rtol);
  rd.number("checks", "spectral_bound_expect", ck.spectral_bound_expect);
  rd.number_or("checks", "spectral_bound_rtol", ck.spectral_bound_rtol);
  rd.text("checks", "expect_origin", ck.expect_origin);
  rd.text("checks", "expect_upper", ck.expect_upper);
  rd.text("checks", "expect_lower", ck.expect_lower);
  rd.text_or("checks", "growth_target", ck.growth_target);
  rd.number("checks", "growth_expect", ck.growth_expect);
  rd.number_or("checks", "growth_rtol", ck.growth_rtol);
  rd.flag("checks", "expect_hyperbolic", ck.expect_hyperbolic);
  for (const auto* e : {&ck.expect_origin, &ck.expect_upper, &ck.expect_lower}) {
    if (*e && **e != "stable" && **e != "unstable" && **e != "absent") {
      issues.push_back("checks.expect_*: expected stable|unstable|absent, got '" + **e + "'");
    }
  }

  std::optional<std::string> rate_kind;
  rd.text("checks", "rate_check", rate_kind);
  if (rate_kind) {
    RateCheck rc;
    rc.kind = *rate_kind;
    if (rc.kind != "decay" && rc.kind != "growth") {
      issues.push_back("checks.rate_check = '" + rc.kind + "': expected decay or growth");
    }
    std::optional<double> t0, t1, dmin, dmax, expect;
    rd.number("checks", "rate_fit_t0", t0);
    rd.number("checks", "rate_fit_t1", t1);
    rd.number("checks", "rate_delta_min", dmin);
    rd.number("checks", "rate_delta_max", dmax);
    rd.number("checks", "rate_expect", expect);
    rd.number_or("checks", "rate_rtol", rc.rtol);
    if (!expect) {
      issues.push_back("checks.rate_expect is required when rate_check is set");
    } else {
      rc.expect = *expect;
    }
    if (rc.kind == "decay") {
      if (!t0 || !t1 || !(*t1 > *t0)) {
        issues.push_back("checks.rate_fit_t0/rate_fit_t1: decay fits need a window t0 < t1");
      } else {
        rc.fit_t0 = *t0;
        rc.fit_t1 = *t1;
      }
    }
    if (rc.kind == "growth") {
      if (!dmin || !dmax || !(*dmin > 0.0) || !(*dmax > *dmin)) {
        issues.push_back(
            "checks.rate_delta_min/rate_delta_max: growth fits need 0 < delta_min < delta_max");
      } else {
        rc.delta_min = *dmin;
        rc.delta_max = *dmax;
      }
    }
    ck.rate = rc;
  }

  rd.number_list("checks", "dt_list", ck.dt_list);
  rd.number_or("checks", "order_min", ck.order_min);
  rd.number_or("checks", "order_max", ck.order_max);
  rd.number("checks", "residual_max", ck.residual_max);
  rd.flag_or("checks", "envelope", ck.envelope);
  rd.number("checks", "ode_tol", ck.ode_tol);
  rd.number_or("checks", "ode_mu", ck.ode_mu);
  rd.number_or("checks", "ode_dt_ref", ck.ode_dt_ref);
  rd.integer("checks", "sweep_count", ck.sweep_count);
  rd.number_or("checks", "sweep_mu_max", ck.sweep_mu_max);
  rd.unsigned_or("checks", "seed", ck.seed);

  rd.text_or("output", "dir", cfg.out_dir);
  rd.text_or("output", "prefix", cfg.prefix);

  for (const std::string& leftover : ini.unconsumed()) issues.push_back(leftover);
  if (!issues.empty()) throw ConfigError(issues);
  return cfg;
}

Geometry ExperimentConfig::geometry() const {
  std::vector<std::string> missing;
  if (!rho) missing.push_back("geometry.rho");
  if (!r_out) missing.push_back("geometry.r_out");
  require(missing);
  return {*rho, *r_out};
}

ConductivityProfile ExperimentConfig::conductivity() const {
  std::vector<std::string> missing;
  if (!sigma_i_const && sigma_i_table.empty()) missing.push_back("conductivity.sigma_i");
  if (!sigma_e_const && sigma_e_table.empty()) missing.push_back("conductivity.sigma_e");
  require(missing);
  return {sigma_i_const ? RadialCoefficient::constant(*sigma_i_const)
                        : RadialCoefficient::table(sigma_i_table),
          sigma_e_const ? RadialCoefficient::constant(*sigma_e_const)
                        : RadialCoefficient::table(sigma_e_table)};
}

RadialGrid ExperimentConfig::radial_grid(const Geometry& geom) const {
  std::vector<std::string> missing;
  if (!nodes_i_opt) missing.push_back("grid.nodes_i");
  if (!nodes_e_opt) missing.push_back("grid.nodes_e");
  require(missing);
  return RadialGrid::uniform(geom, *nodes_i_opt, *nodes_e_opt);
}

KineticsParams ExperimentConfig::kinetics() const {
  std::vector<std::string> missing;
  if (!a) missing.push_back("kinetics.a");
  if (!b) missing.push_back("kinetics.b");
  if (!c) missing.push_back("kinetics.c");
  require(missing);
  return {*a, *b, *c};
}

int ExperimentConfig::k_max() const {
  if (!k_max_opt) require({"grid.k_max"});
  return *k_max_opt;
}

FourierGrid ExperimentConfig::fourier_grid() const {
  const int k = k_max();
  return m_phys_opt ? FourierGrid(k, *m_phys_opt) : FourierGrid(k);
}

std::pair<std::vector<double>, double> ExperimentConfig::mu_values(
    const Geometry& geom, const ConductivityProfile& cond) const {
  const int k = k_max();
  if (mu_source == "closed") {
    if (!cond.is_constant()) {
      throw ConfigError({"simulation.mu_source = closed needs constant conductivities; "
                         "radial tables require mu_source = numeric"});
    }
    const double si = cond.sigma_i.value();
    const double se = cond.sigma_e.value();
    std::vector<double> mu(static_cast<std::size_t>(k) + 1);
    for (int n = 0; n <= k; ++n) {
      mu[static_cast<std::size_t>(n)] = dtn_mu_closed_form(n, geom, si, se);
    }
    return {std::move(mu), dtn_slope(geom, si, se)};
  }
  const RadialGrid grid = radial_grid(geom);
  ModeSpectrum spec = assemble_dtn(geom, cond, std::max(k, 2), grid, tol_mu);
  const std::size_t last = spec.mu.size() - 1;
  const double slope = spec.mu[last] - spec.mu[last - 1];
  spec.mu.resize(static_cast<std::size_t>(k) + 1);
  return {std::move(spec.mu), slope};
}

SourceData ExperimentConfig::sources(const RadialGrid& grid) const {
  SourceData data(grid);
  for (const auto& [n, value] : src_sigma) data.phi_sigma[n] = value;
  for (const auto& [n, value] : src_bdry) data.phi_bdry[n] = value;
  for (const auto& [n, value] : src_vol_i) {
    data.phi_vol_i[n] = std::vector<double>(grid.nodes_i.size(), value);
  }
  for (const auto& [n, value] : src_vol_e) {
    data.phi_vol_e[n] = std::vector<double>(grid.nodes_e.size(), value);
  }
  return data;
}

Forcing ExperimentConfig::forcing() const {
  if (forcing_modes.empty()) return {};
  int band = 1;
  for (const auto& [n, amp] : forcing_modes) band = std::max(band, n);
  SpectralField base(band);
  for (const auto& [n, amp] : forcing_modes) {
    if (n == 0) {
      base.at(0) += amp;
    } else {
      base.at(n) += 0.5 * amp;
      base.at(-n) += 0.5 * amp;
    }
  }
  if (forcing_time.empty()) return Forcing(base);
  return {base, forcing_time};
}

std::pair<SpectralField, SpectralField> ExperimentConfig::initial_state(
    const KineticsParams& kp, int k) const {
  SpectralField v(k), w(k);
  if (initial.kind == "zero") return {v, w};
  if (initial.kind == "constant") {
    v.at(0) = {initial.cv, 0.0};
    w.at(0) = {initial.cw, 0.0};
    return {v, w};
  }
  if (initial.kind == "harmonics") {
    for (const auto& [n, amp] : initial.harmonics) {
      if (n > k) {
        throw ConfigError({"simulation.initial: harmonic mode " + std::to_string(n) +
                           " exceeds grid.k_max = " + std::to_string(k)});
      }
      if (n == 0) {
        v.at(0) += amp;
      } else {
        v.at(n) += 0.5 * amp;
        v.at(-n) += 0.5 * amp;
      }
    }
    return {v, w};
  }
  if (initial.kind == "random") {
    // Deterministic draw: mode 0 first, then (re, im) per ascending mode.
    std::mt19937_64 rng(checks.seed);
    const auto unit = [&rng] {
      return 2.0 * (static_cast<double>(rng()) / 18446744073709551616.0) - 1.0;
    };
    v.at(0) = {initial.amplitude * unit(), 0.0};
    for (int n = 1; n <= k; ++n) {
      const std::complex<double> z(initial.amplitude * unit(), initial.amplitude * unit());
      v.at(n) = z;
      v.at(-n) = std::conj(z);
    }
    return {v, w};
  }
  if (initial.kind == "equilibrium") {
    const EquilibriumSet eq = equilibria(kp);
    Equilibrium e{0.0, 0.0};
    if (initial.which != "origin") {
      if (!eq.has_nontrivial) {
        throw ConfigError({"simulation.initial: the kinetics admit no nontrivial equilibria"});
      }
      e = initial.which == "upper" ? eq.plus : eq.minus;
    }
    v.at(0) = {e.v, 0.0};
    w.at(0) = {e.w, 0.0};
    if (perturb != 0.0) {
      // Nudge along the slowest mode-0 eigendirection (the unstable one at a
      // saddle), so the departure rate is observable immediately.
      const ModePolynomial blk = equilibrium_pq(0.0, e.v, kp);
      const auto [l1, l2] = quadratic_roots(blk.p, blk.q);
      const std::complex<double> slow = l1.real() < l2.real() ? l1 : l2;
      const EigenDirection dir = eigen_direction(0.0, slow, kp);
      v.at(0) += perturb * dir.v_amp.real();
      w.at(0) += perturb * dir.w_amp.real();
    }
    return {v, w};
  }
  throw ConfigError({"simulation.initial: unknown kind '" + initial.kind + "'"});
}

SimRunConfig ExperimentConfig::run_config() const {
  std::vector<std::string> missing;
  if (!dt) missing.push_back("simulation.dt");
  if (!t_end) missing.push_back("simulation.t_end");
  require(missing);
  SimRunConfig rc;
  rc.scheme = scheme_from_name(scheme);
  rc.dt = *dt;
  rc.t_end = *t_end;
  rc.stride = stride;
  rc.blowup_threshold = blowup_threshold;
  return rc;
}

std::string ExperimentConfig::out_path(const std::string& kind) const {
  std::filesystem::create_directories(out_dir);
  return (std::filesystem::path(out_dir) / (prefix + "_" + kind + ".csv")).string();
}

}  // namespace bidomain::tools
