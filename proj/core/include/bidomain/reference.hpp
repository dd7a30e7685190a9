#pragma once

#include <vector>

#include "bidomain/kinetics.hpp"

namespace bidomain {

struct OdePoint {
  double t;
  double v;
  double w;
};

// Classical fourth-order Runge-Kutta march of the single-mode system
//   v' = -mu v + f(v, w),   w' = g(v, w),
// used as an independent reference for the spectral time steppers. Returns
// every step including the initial point.
std::vector<OdePoint> rk4_kinetics(double v0, double w0, double mu, const KineticsParams& p,
                                   double dt, long long nsteps);

}  // namespace bidomain
