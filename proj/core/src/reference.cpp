#include "bidomain/reference.hpp"

#include "bidomain/errors.hpp"

namespace bidomain {

std::vector<OdePoint> rk4_kinetics(double v0, double w0, double mu, const KineticsParams& p,
                                   double dt, long long nsteps) {
  if (!(dt > 0.0)) throw InputError("rk4: dt must be positive");
  if (nsteps < 1) throw InputError("rk4: need at least one step");

  const auto rhs = [&](double v, double w, double& dv, double& dw) {
    const KineticsRate r = fhn_rhs(v, w, p);
    dv = -mu * v + r.dv;
    dw = r.dw;
  };

  std::vector<OdePoint> out;
  out.reserve(static_cast<std::size_t>(nsteps) + 1);
  double v = v0;
  double w = w0;
  out.push_back({0.0, v, w});
  for (long long k = 0; k < nsteps; ++k) {
    double k1v, k1w, k2v, k2w, k3v, k3w, k4v, k4w;
    rhs(v, w, k1v, k1w);
    rhs(v + 0.5 * dt * k1v, w + 0.5 * dt * k1w, k2v, k2w);
    rhs(v + 0.5 * dt * k2v, w + 0.5 * dt * k2w, k3v, k3w);
    rhs(v + dt * k3v, w + dt * k3w, k4v, k4w);
    v += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    w += dt / 6.0 * (k1w + 2.0 * k2w + 2.0 * k3w + k4w);
    out.push_back({static_cast<double>(k + 1) * dt, v, w});
  }
  return out;
}

}  // namespace bidomain
