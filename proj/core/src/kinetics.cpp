#include "bidomain/kinetics.hpp"

#include <cmath>
#include <string>

#include "bidomain/errors.hpp"

namespace bidomain {

KineticsParams::KineticsParams(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {
  std::string bad;
  if (!(a > 0.0 && a < 1.0)) bad += " 0 < a < 1";
  if (!(b > 0.0)) bad += (bad.empty() ? " " : ",") + std::string("b > 0");
  if (!(c > 0.0)) bad += (bad.empty() ? " " : ",") + std::string("c > 0");
  if (!bad.empty()) {
    throw ValidationError("kinetics: parameters out of range, need" + bad + " (got a=" +
                          std::to_string(a) + ", b=" + std::to_string(b) + ", c=" +
                          std::to_string(c) + ")");
  }
}

KineticsRate fhn_rhs(double v, double w, const KineticsParams& p) {
  return {-v * (v - p.a) * (v - 1.0) - w, p.c * v - p.b * w};
}

NullclineCubic nullcline_cubic(double v, const KineticsParams& p) {
  const double cb = p.c / p.b;
  return {v * ((v - p.a) * (v - 1.0) + cb),
          3.0 * v * v - 2.0 * (p.a + 1.0) * v + p.a + cb};
}

EquilibriumSet equilibria(const KineticsParams& p) {
  EquilibriumSet set;
  set.zero = {0.0, 0.0};
  const double cb = p.c / p.b;
  set.discriminant = (p.a - 1.0) * (p.a - 1.0) - 4.0 * cb;
  set.degenerate = std::abs(set.discriminant) <= 1e-12;
  set.has_nontrivial = set.degenerate || set.discriminant > 0.0;
  set.plus = {0.0, 0.0};
  set.minus = {0.0, 0.0};
  if (set.has_nontrivial) {
    const double root = std::sqrt(std::max(set.discriminant, 0.0));
    // v+ adds two positive terms; v- comes from the product v+ v- = a + c/b
    // to dodge the cancellation in the direct formula.
    const double vp = 0.5 * ((p.a + 1.0) + root);
    const double vm = (p.a + cb) / vp;
    set.plus = {vp, cb * vp};
    set.minus = {vm, cb * vm};
  }
  return set;
}

}  // namespace bidomain
