#pragma once

#include "bidomain/geometry.hpp"

namespace bidomain {

// Closed-form Dirichlet-to-Neumann eigenvalue for mode n on the
// concentric-circle geometry with constant per-phase conductivities:
//
//   mu_n = n / ( rho * [ 1/sigma_i + (r_out^{2n} + rho^{2n})
//                                   / (sigma_e (r_out^{2n} - rho^{2n})) ] ),
//
// evaluated through the ratio (rho/r_out)^{2n} so large n cannot overflow.
// mu_0 = 0: a jump that is constant along the interface drives no current.
double dtn_mu_closed_form(int n, const Geometry& geom, double sigma_i, double sigma_e);

// Large-n growth rate of the spectrum: mu_n / n -> sigma_i*sigma_e /
// (rho*(sigma_i + sigma_e)). For variable conductivity pass the interface
// values; the principal symbol only sees sigma at r = rho.
double dtn_slope(const Geometry& geom, double sigma_i, double sigma_e);

}  // namespace bidomain
