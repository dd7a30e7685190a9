#include "bidomain/transmission.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <optional>
#include <string>
#include <utility>

#include "bidomain/errors.hpp"

namespace bidomain {
namespace {

std::string fmtg(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

// Derivative at x of the quadratic through (x0,f0), (x1,f1), (x2,f2).
double lagrange3_deriv(double x0, double x1, double x2, double f0, double f1, double f2,
                       double x) {
  return f0 * (2.0 * x - x1 - x2) / ((x0 - x1) * (x0 - x2)) +
         f1 * (2.0 * x - x0 - x2) / ((x1 - x0) * (x1 - x2)) +
         f2 * (2.0 * x - x0 - x1) / ((x2 - x0) * (x2 - x1));
}

// Exact integral of r over the control cell of node j (half cells at the
// phase endpoints). These weights telescope to (b^2 - a^2)/2 over a phase,
// which keeps the discrete solvability condition aligned with the continuum
// one.
double cell_weight(const std::vector<double>& nodes, std::size_t j) {
  const double lo = j == 0 ? nodes.front() : 0.5 * (nodes[j - 1] + nodes[j]);
  const double hi = j + 1 == nodes.size() ? nodes.back() : 0.5 * (nodes[j] + nodes[j + 1]);
  return 0.5 * (hi * hi - lo * lo);
}

double cell_width(const std::vector<double>& nodes, std::size_t j) {
  const double lo = j == 0 ? nodes.front() : 0.5 * (nodes[j - 1] + nodes[j]);
  const double hi = j + 1 == nodes.size() ? nodes.back() : 0.5 * (nodes[j] + nodes[j + 1]);
  return hi - lo;
}

const std::vector<double>* profile_for(const std::map<int, std::vector<double>>& m, int n,
                                       std::size_t want, const char* which) {
  const auto it = m.find(n);
  if (it == m.end()) return nullptr;
  if (it->second.size() != want) {
    throw InputError(std::string(which) + " profile for mode " + std::to_string(n) + " has " +
                     std::to_string(it->second.size()) + " samples but the grid has " +
                     std::to_string(want) + " nodes");
  }
  return &it->second;
}

double scalar_for(const std::map<int, double>& m, int n) {
  const auto it = m.find(n);
  return it == m.end() ? 0.0 : it->second;
}

struct CompatResidual {
  double residual;
  double scale;  // largest contribution magnitude, floored at one
};

CompatResidual mode0_residual(const RadialGrid& grid, const std::vector<double>* vol_i,
                              const std::vector<double>* vol_e, double phi_b, double phi_s) {
  const double interface_term = grid.rho() * phi_s;
  const double boundary_term = grid.r_out() * phi_b;
  double vol = 0.0;
  double vol_abs = 0.0;
  if (vol_i != nullptr) {
    for (std::size_t j = 0; j < grid.nodes_i.size(); ++j) {
      const double term = cell_weight(grid.nodes_i, j) * (*vol_i)[j];
      vol += term;
      vol_abs += std::abs(term);
    }
  }
  if (vol_e != nullptr) {
    for (std::size_t j = 0; j < grid.nodes_e.size(); ++j) {
      const double term = cell_weight(grid.nodes_e, j) * (*vol_e)[j];
      vol += term;
      vol_abs += std::abs(term);
    }
  }
  CompatResidual out;
  out.residual = vol + interface_term + boundary_term;
  out.scale = std::max({1.0, vol_abs, std::abs(interface_term), std::abs(boundary_term)});
  return out;
}

}  // namespace

ModeSolution solve_mode(int n, const Geometry& geom, const ConductivityProfile& cond,
                        double v_n, const SourceData& sources, const RadialGrid& grid,
                        double tol_compat) {
  if (n < 0) throw InputError("transmission: mode index must be nonnegative");
  grid.require_matches(geom);

  const std::vector<double>& ri = grid.nodes_i;
  const std::vector<double>& re = grid.nodes_e;
  const int ni = static_cast<int>(ri.size());
  const int ne = static_cast<int>(re.size());
  const int ntot = ni + ne - 1;  // u_e(rho) is eliminated through the jump
  const double rho = geom.rho;
  const double r_out = geom.r_out;

  const std::vector<double>* pvi =
      profile_for(sources.phi_vol_i, n, ri.size(), "transmission: inner volume source");
  const std::vector<double>* pve =
      profile_for(sources.phi_vol_e, n, re.size(), "transmission: outer volume source");
  const double phi_b = scalar_for(sources.phi_bdry, n);
  const double phi_s = scalar_for(sources.phi_sigma, n);
  const auto vol_i = [&](int j) { return pvi ? (*pvi)[static_cast<std::size_t>(j)] : 0.0; };
  const auto vol_e = [&](int j) { return pve ? (*pve)[static_cast<std::size_t>(j)] : 0.0; };

  // Interval transmissibilities r*sigma/dr at interval midpoints.
  std::vector<double> ti(static_cast<std::size_t>(ni - 1));
  std::vector<double> te(static_cast<std::size_t>(ne - 1));
  for (int j = 0; j + 1 < ni; ++j) {
    const double mid = 0.5 * (ri[j] + ri[j + 1]);
    ti[static_cast<std::size_t>(j)] = mid * cond.sigma_i(mid) / (ri[j + 1] - ri[j]);
  }
  for (int j = 0; j + 1 < ne; ++j) {
    const double mid = 0.5 * (re[j] + re[j + 1]);
    te[static_cast<std::size_t>(j)] = mid * cond.sigma_e(mid) / (re[j + 1] - re[j]);
  }

  // Per-cell quadrature weights (exact integrals of r) and the n^2/r mass.
  std::vector<double> qwi(ri.size()), qwe(re.size());
  std::vector<double> mi(ri.size(), 0.0), me(re.size(), 0.0);
  const double nn = static_cast<double>(n) * static_cast<double>(n);
  for (std::size_t j = 0; j < ri.size(); ++j) {
    qwi[j] = cell_weight(ri, j);
    if (n >= 1 && j >= 1) mi[j] = nn / ri[j] * cond.sigma_i(ri[j]) * cell_width(ri, j);
  }
  for (std::size_t j = 0; j < re.size(); ++j) {
    qwe[j] = cell_weight(re, j);
    if (n >= 1) me[j] = nn / re[j] * cond.sigma_e(re[j]) * cell_width(re, j);
  }

  std::vector<double> sub(static_cast<std::size_t>(ntot), 0.0);
  std::vector<double> dia(static_cast<std::size_t>(ntot), 0.0);
  std::vector<double> sup(static_cast<std::size_t>(ntot), 0.0);
  std::vector<double> rhs(static_cast<std::size_t>(ntot), 0.0);

  if (n == 0) {
    // Center cell [0, (r_0+r_1)/2]; no flux enters at r = 0.
    dia[0] = ti[0];
    sup[0] = -ti[0];
    rhs[0] = qwi[0] * vol_i(0);
  } else {
    // u ~ r^n near the axis, so the center value is pinned to zero.
    dia[0] = 1.0;
  }
  for (int j = 1; j + 1 < ni; ++j) {
    const auto u = static_cast<std::size_t>(j);
    sub[u] = -ti[u - 1];
    dia[u] = ti[u - 1] + ti[u] + mi[u];
    sup[u] = -ti[u];
    rhs[u] = qwi[u] * vol_i(j);
  }
  {
    // Interface control volume: the union of the half cells on both sides of
    // rho, with u_e(rho) = u_i(rho) + v_n substituted and the prescribed flux
    // jump entering as rho * phi_sigma.
    const auto j = static_cast<std::size_t>(ni - 1);
    sub[j] = -ti[j - 1];
    dia[j] = ti[j - 1] + te[0] + mi[j] + me[0];
    sup[j] = -te[0];
    rhs[j] = rho * phi_s + qwi[j] * vol_i(ni - 1) + qwe[0] * vol_e(0) - (te[0] + me[0]) * v_n;
  }
  for (int j = 1; j + 1 < ne; ++j) {
    const auto g = static_cast<std::size_t>(ni - 1 + j);
    const auto u = static_cast<std::size_t>(j);
    sub[g] = -te[u - 1];
    dia[g] = te[u - 1] + te[u] + me[u];
    sup[g] = -te[u];
    rhs[g] = qwe[u] * vol_e(j);
  }
  {
    // Outer half cell; the conormal boundary flux enters as r_out * phi_bdry.
    const auto g = static_cast<std::size_t>(ntot - 1);
    const auto u = static_cast<std::size_t>(ne - 1);
    sub[g] = -te[u - 1];
    dia[g] = te[u - 1] + me[u];
    rhs[g] = r_out * phi_b + qwe[u] * vol_e(ne - 1);
  }
  // The eliminated u_e(rho) shifts the first row it appears in.
  rhs[static_cast<std::size_t>(ni)] += te[0] * v_n;

  std::vector<double> x(static_cast<std::size_t>(ntot), 0.0);
  if (n >= 1) {
    // The n^2/r mass makes the system strictly diagonally dominant, so the
    // two-sweep tridiagonal elimination needs no pivoting.
    std::vector<double> d(dia);
    std::vector<double> r(rhs);
    for (int j = 1; j < ntot; ++j) {
      const auto u = static_cast<std::size_t>(j);
      const double m = sub[u] / d[u - 1];
      d[u] -= m * sup[u - 1];
      r[u] -= m * r[u - 1];
    }
    x[static_cast<std::size_t>(ntot - 1)] =
        r[static_cast<std::size_t>(ntot - 1)] / d[static_cast<std::size_t>(ntot - 1)];
    for (int j = ntot - 2; j >= 0; --j) {
      const auto u = static_cast<std::size_t>(j);
      x[u] = (r[u] - sup[u] * x[u + 1]) / d[u];
    }
  } else {
    const CompatResidual compat = mode0_residual(grid, pvi, pve, phi_b, phi_s);
    if (std::abs(compat.residual) > tol_compat * compat.scale) {
      throw ValidationError(
          "transmission: mode-0 sources violate the solvability condition "
          "(volume + boundary + interface integrals must cancel); residual = " +
          fmtg(compat.residual));
    }
    // The pure-flux problem fixes u only up to an additive constant, so the
    // weighted-mean row is appended as a Lagrange multiplier and eliminated
    // alongside the subdiagonal; fill-in stays confined to the border.
    std::vector<double> bord(static_cast<std::size_t>(ntot));
    for (int j = 0; j + 1 < ni; ++j) bord[static_cast<std::size_t>(j)] = qwi[static_cast<std::size_t>(j)];
    bord[static_cast<std::size_t>(ni - 1)] = qwi[static_cast<std::size_t>(ni - 1)] + qwe[0];
    for (int j = 1; j < ne; ++j) {
      bord[static_cast<std::size_t>(ni - 1 + j)] = qwe[static_cast<std::size_t>(j)];
    }

    std::vector<double> d(dia);
    std::vector<double> r(rhs);
    std::vector<double> bcol(bord);
    std::vector<double> brow(bord);
    double corner = 0.0;
    double rb = -qwe[0] * v_n;  // mean of the full field vanishes
    for (int j = 0; j + 1 < ntot; ++j) {
      const auto u = static_cast<std::size_t>(j);
      const double piv = d[u];
      if (!(std::abs(piv) > 0.0)) {
        throw NumericalError("transmission: zero pivot in the mean-constrained solve");
      }
      const double ms = sub[u + 1] / piv;
      d[u + 1] -= ms * sup[u];
      bcol[u + 1] -= ms * bcol[u];
      r[u + 1] -= ms * r[u];
      const double mb = brow[u] / piv;
      brow[u + 1] -= mb * sup[u];
      corner -= mb * bcol[u];
      rb -= mb * r[u];
    }
    const auto last = static_cast<std::size_t>(ntot - 1);
    double a11 = d[last];
    double a12 = bcol[last];
    double b1 = r[last];
    double a21 = brow[last];
    double a22 = corner;
    double b2 = rb;
    if (std::abs(a21) > std::abs(a11)) {
      std::swap(a11, a21);
      std::swap(a12, a22);
      std::swap(b1, b2);
    }
    const double m = a21 / a11;
    const double s22 = a22 - m * a12;
    if (!(std::abs(s22) > 0.0) || !std::isfinite(s22)) {
      throw NumericalError("transmission: mean-constrained solve is singular");
    }
    const double lambda = (b2 - m * b1) / s22;
    x[last] = (b1 - a12 * lambda) / a11;
    for (int j = ntot - 2; j >= 0; --j) {
      const auto u = static_cast<std::size_t>(j);
      x[u] = (r[u] - sup[u] * x[u + 1] - bcol[u] * lambda) / d[u];
    }
  }

  for (const double value : x) {
    if (!std::isfinite(value)) {
      throw NumericalError("transmission: solve produced non-finite values");
    }
  }

  ModeSolution out;
  out.u_i.assign(ri.size(), 0.0);
  for (int j = 0; j < ni; ++j) out.u_i[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(j)];
  out.u_e.assign(re.size(), 0.0);
  out.u_e[0] = x[static_cast<std::size_t>(ni - 1)] + v_n;
  for (int j = 1; j < ne; ++j) {
    out.u_e[static_cast<std::size_t>(j)] = x[static_cast<std::size_t>(ni - 1 + j)];
  }

  out.flux_inner = cond.sigma_i(rho) * lagrange3_deriv(ri[ni - 3], ri[ni - 2], ri[ni - 1],
                                                       out.u_i[ni - 3], out.u_i[ni - 2],
                                                       out.u_i[ni - 1], rho);
  out.flux_outer = cond.sigma_e(rho) *
                   lagrange3_deriv(re[0], re[1], re[2], out.u_e[0], out.u_e[1], out.u_e[2], rho);
  out.flux_sigma = 0.5 * (out.flux_inner + out.flux_outer);

  if (n == 0) {
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < ri.size(); ++j) {
      num += qwi[j] * out.u_i[j];
      den += qwi[j];
    }
    for (std::size_t j = 0; j < re.size(); ++j) {
      num += qwe[j] * out.u_e[j];
      den += qwe[j];
    }
    out.mean_value = num / den;
  } else {
    out.mean_value = 0.0;
  }
  return out;
}

ModeSpectrum assemble_dtn(const Geometry& geom, const ConductivityProfile& cond, int k_max,
                          const RadialGrid& grid, double tol_mu) {
  if (k_max < 0) throw InputError("dtn: k_max must be nonnegative");
  const SourceData none = SourceData::zero(grid);
  ModeSpectrum spec;
  spec.mu.resize(static_cast<std::size_t>(k_max) + 1);
  for (int n = 0; n <= k_max; ++n) {
    spec.mu[static_cast<std::size_t>(n)] = -solve_mode(n, geom, cond, 1.0, none, grid).flux_sigma;
  }
  if (std::abs(spec.mu[0]) > tol_mu) {
    throw NumericalError("dtn: the mode-0 eigenvalue must vanish (constants carry no flux); got " +
                         fmtg(spec.mu[0]));
  }
  for (int n = 1; n <= k_max; ++n) {
    if (spec.mu[static_cast<std::size_t>(n)] < -tol_mu) {
      throw NumericalError("dtn: eigenvalue for mode " + std::to_string(n) +
                           " is negative: " + fmtg(spec.mu[static_cast<std::size_t>(n)]));
    }
  }
  return spec;
}

std::vector<double> compute_forcing(const Geometry& geom, const ConductivityProfile& cond,
                                    const SourceData& sources, int k_max,
                                    const RadialGrid& grid, double tol_compat) {
  if (k_max < 0) throw InputError("forcing: k_max must be nonnegative");
  std::vector<double> phi(static_cast<std::size_t>(k_max) + 1, 0.0);
  for (int n = 0; n <= k_max; ++n) {
    if (sources.mode_is_zero(n)) continue;  // exact zero, no solve
    phi[static_cast<std::size_t>(n)] =
        -solve_mode(n, geom, cond, 0.0, sources, grid, tol_compat).flux_sigma;
  }
  return phi;
}

double check_compatibility(const SourceData& sources, const Geometry& geom) {
  sources.grid.require_matches(geom);
  const std::vector<double>* pvi = profile_for(sources.phi_vol_i, 0, sources.grid.nodes_i.size(),
                                               "compatibility: inner volume source");
  const std::vector<double>* pve = profile_for(sources.phi_vol_e, 0, sources.grid.nodes_e.size(),
                                               "compatibility: outer volume source");
  return mode0_residual(sources.grid, pvi, pve, scalar_for(sources.phi_bdry, 0),
                        scalar_for(sources.phi_sigma, 0))
      .residual;
}

PotentialField reconstruct_potential(const SpectralField& v, const SourceData& sources,
                                     const Geometry& geom, const ConductivityProfile& cond,
                                     const RadialGrid& grid, const FourierGrid& fgrid) {
  if (v.k_max() > fgrid.k_max()) {
    throw InputError("reconstruction: the jump field retains more modes than the angular grid");
  }
  if (v.conjugate_defect() > 1e-10 * std::max(1.0, v.max_abs())) {
    throw ValidationError(
        "reconstruction: jump coefficients are not conjugate symmetric; the potential would "
        "not be real");
  }

  const int m = fgrid.m_phys();
  PotentialField out;
  out.theta.resize(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) out.theta[static_cast<std::size_t>(j)] = fgrid.theta(j);
  out.r_i = grid.nodes_i;
  out.r_e = grid.nodes_e;
  out.u_i.assign(grid.nodes_i.size(), std::vector<double>(static_cast<std::size_t>(m), 0.0));
  out.u_e.assign(grid.nodes_e.size(), std::vector<double>(static_cast<std::size_t>(m), 0.0));

  const SourceData none = SourceData::zero(grid);
  for (int n = 0; n <= v.k_max(); ++n) {
    const std::complex<double> vn = v.at(n);
    const bool with_jump = vn != std::complex<double>(0.0, 0.0);
    const bool with_src = !sources.mode_is_zero(n);
    if (!with_jump && !with_src) continue;
    std::optional<ModeSolution> jump;
    std::optional<ModeSolution> src;
    if (with_jump) jump = solve_mode(n, geom, cond, 1.0, none, grid);
    if (with_src) src = solve_mode(n, geom, cond, 0.0, sources, grid);

    const auto add_phase = [&](std::vector<std::vector<double>>& dst,
                               const std::vector<double>* jp, const std::vector<double>* sp) {
      for (std::size_t i = 0; i < dst.size(); ++i) {
        const std::complex<double> u =
            (sp ? (*sp)[i] : 0.0) + vn * (jp ? (*jp)[i] : 0.0);
        std::vector<double>& row = dst[i];
        if (n == 0) {
          for (int j = 0; j < m; ++j) row[static_cast<std::size_t>(j)] += u.real();
        } else {
          for (int j = 0; j < m; ++j) {
            const long long idx = static_cast<long long>(n) * j;
            row[static_cast<std::size_t>(j)] +=
                2.0 * (u.real() * fgrid.cos_tab(idx) - u.imag() * fgrid.sin_tab(idx));
          }
        }
      }
    };
    add_phase(out.u_i, jump ? &jump->u_i : nullptr, src ? &src->u_i : nullptr);
    add_phase(out.u_e, jump ? &jump->u_e : nullptr, src ? &src->u_e : nullptr);
  }
  return out;
}

}  // namespace bidomain
