#pragma once

#include <utility>
#include <vector>

#include "bidomain/errors.hpp"

namespace bidomain {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

// Concentric-circle cell geometry: the inner phase is the disk r < rho, the
// outer phase the annulus rho < r < r_out, the membrane interface the circle
// r = rho, and the outer boundary the circle r = r_out.
struct Geometry {
  double rho;
  double r_out;

  Geometry(double rho_, double r_out_) : rho(rho_), r_out(r_out_) {
    if (!(rho > 0.0) || !(r_out > rho)) {
      throw ValidationError("geometry: requires 0 < rho < r_out, got rho=" +
                            std::to_string(rho_) + ", r_out=" + std::to_string(r_out_));
    }
  }

  double interface_length() const { return kTwoPi * rho; }
  double area() const { return 0.5 * kTwoPi * r_out * r_out; }
};

// Positive radial coefficient, either a constant or a piecewise-linear table
// (r_k, value_k) with constant extrapolation beyond the table ends.
class RadialCoefficient {
 public:
  static RadialCoefficient constant(double value) {
    if (!(value > 0.0)) {
      throw ValidationError("conductivity: constant value must be positive, got " +
                            std::to_string(value));
    }
    RadialCoefficient c;
    c.constant_ = true;
    c.value_ = value;
    return c;
  }

  static RadialCoefficient table(std::vector<std::pair<double, double>> samples) {
    if (samples.empty()) {
      throw ValidationError("conductivity: table must contain at least one sample");
    }
    for (std::size_t k = 0; k < samples.size(); ++k) {
      if (!(samples[k].second > 0.0)) {
        throw ValidationError("conductivity: table values must be positive");
      }
      if (k > 0 && !(samples[k].first > samples[k - 1].first)) {
        throw ValidationError("conductivity: table radii must be strictly increasing");
      }
    }
    RadialCoefficient c;
    c.constant_ = false;
    c.table_ = std::move(samples);
    return c;
  }

  bool is_constant() const { return constant_; }

  // Constant value; only meaningful when is_constant().
  double value() const {
    if (!constant_) throw InputError("conductivity: value() called on a radial table");
    return value_;
  }

  double operator()(double r) const {
    if (constant_) return value_;
    if (r <= table_.front().first) return table_.front().second;
    if (r >= table_.back().first) return table_.back().second;
    // Linear interpolation on the bracketing segment.
    std::size_t hi = 1;
    while (table_[hi].first < r) ++hi;
    const auto& [r0, v0] = table_[hi - 1];
    const auto& [r1, v1] = table_[hi];
    const double s = (r - r0) / (r1 - r0);
    return v0 + s * (v1 - v0);
  }

 private:
  RadialCoefficient() = default;
  bool constant_ = true;
  double value_ = 1.0;
  std::vector<std::pair<double, double>> table_;
};

// Per-phase conductivity. A jump across the interface is allowed.
struct ConductivityProfile {
  RadialCoefficient sigma_i;
  RadialCoefficient sigma_e;

  bool is_constant() const { return sigma_i.is_constant() && sigma_e.is_constant(); }

  static ConductivityProfile constants(double si, double se) {
    return ConductivityProfile{RadialCoefficient::constant(si),
                               RadialCoefficient::constant(se)};
  }
};

}  // namespace bidomain
