#pragma once

namespace bidomain {

// Cubic excitation with linear recovery,
//   f(v, w) = -v (v - a)(v - 1) - w,
//   g(v, w) = -b w + c v,
// admissible only for 0 < a < 1, b > 0, c > 0.
struct KineticsParams {
  double a;
  double b;
  double c;

  KineticsParams(double a_, double b_, double c_);
};

struct KineticsRate {
  double dv;
  double dw;
};

KineticsRate fhn_rhs(double v, double w, const KineticsParams& p);

// Value and slope of the reaction cubic restricted to the recovery nullcline
// w = (c/b) v,
//   N(v) = v (v - a)(v - 1) + (c/b) v.
// Steady states solve N(v) = 0, and N'(v*) is the stiffness entering every
// spectral question. At the nonzero root pair N'(vpm) = +-vpm*sqrt(disc) with
// disc = (a-1)^2 - 4c/b, and N'(0) = a + c/b.
struct NullclineCubic {
  double value;
  double slope;
};

NullclineCubic nullcline_cubic(double v, const KineticsParams& p);

struct Equilibrium {
  double v;
  double w;
};

// Rest states of the kinetics. The origin always rests; a nontrivial pair
// exists when the discriminant (a-1)^2 - 4c/b is nonnegative and collapses to
// a double root when it vanishes (|disc| <= 1e-12 is flagged degenerate).
struct EquilibriumSet {
  Equilibrium zero;
  bool has_nontrivial;
  bool degenerate;
  double discriminant;
  Equilibrium plus;   // larger v; meaningful only when has_nontrivial
  Equilibrium minus;  // smaller v; meaningful only when has_nontrivial
};

EquilibriumSet equilibria(const KineticsParams& p);

}  // namespace bidomain
