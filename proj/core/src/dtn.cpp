#include "bidomain/dtn.hpp"

#include <cmath>
#include <string>

namespace bidomain {

namespace {
void require_positive_sigmas(double sigma_i, double sigma_e) {
  if (!(sigma_i > 0.0) || !(sigma_e > 0.0)) {
    throw ValidationError("dtn: conductivities must be positive, got sigma_i=" +
                          std::to_string(sigma_i) + ", sigma_e=" + std::to_string(sigma_e));
  }
}
}  // namespace

double dtn_mu_closed_form(int n, const Geometry& geom, double sigma_i, double sigma_e) {
  if (n < 0) throw InputError("dtn: mode index must be nonnegative, got " + std::to_string(n));
  require_positive_sigmas(sigma_i, sigma_e);
  if (n == 0) return 0.0;

  // (r_out^{2n} + rho^{2n}) / (r_out^{2n} - rho^{2n}) = (1 + q) / (1 - q)
  // with q = (rho/r_out)^{2n} in (0, 1); q underflows harmlessly for large n.
  const double q = std::pow(geom.rho / geom.r_out, 2.0 * n);
  const double annulus_ratio = (1.0 + q) / (1.0 - q);
  const double denom = geom.rho * (1.0 / sigma_i + annulus_ratio / sigma_e);
  return static_cast<double>(n) / denom;
}

double dtn_slope(const Geometry& geom, double sigma_i, double sigma_e) {
  require_positive_sigmas(sigma_i, sigma_e);
  return sigma_i * sigma_e / (geom.rho * (sigma_i + sigma_e));
}

}  // namespace bidomain
