#include <cmath>
#include <string>

#include "bidomain/errors.hpp"
#include "bidomain/kinetics.hpp"
#include "doctest.h"

using namespace bidomain;

TEST_CASE("parameter validation lists every violation at once") {
  CHECK_NOTHROW(KineticsParams(0.1, 1.0, 0.01));
  CHECK_THROWS_AS(KineticsParams(0.0, 1.0, 0.01), ValidationError);
  CHECK_THROWS_AS(KineticsParams(1.0, 1.0, 0.01), ValidationError);
  CHECK_THROWS_AS(KineticsParams(0.5, 0.0, 0.01), ValidationError);
  CHECK_THROWS_AS(KineticsParams(0.5, 1.0, 0.0), ValidationError);
  try {
    KineticsParams(1.5, -1.0, 0.0);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("a") != std::string::npos);
    CHECK(msg.find("b") != std::string::npos);
    CHECK(msg.find("c") != std::string::npos);
  }
}

TEST_CASE("reaction rates at spot values") {
  const KineticsParams p(0.1, 1.0, 0.01);
  const KineticsRate r = fhn_rhs(0.5, 0.2, p);
  CHECK(r.dv == doctest::Approx(-0.1).epsilon(1e-14));
  CHECK(r.dw == doctest::Approx(-0.195).epsilon(1e-14));
  const KineticsRate at0 = fhn_rhs(0.0, 0.0, p);
  CHECK(at0.dv == 0.0);
  CHECK(at0.dw == 0.0);
}

TEST_CASE("equilibria of the standard excitable set") {
  const KineticsParams p(0.1, 1.0, 0.01);
  const EquilibriumSet eq = equilibria(p);
  CHECK(eq.zero.v == 0.0);
  CHECK(eq.zero.w == 0.0);
  CHECK(eq.has_nontrivial);
  CHECK_FALSE(eq.degenerate);
  CHECK(eq.discriminant == doctest::Approx(0.77).epsilon(1e-15));
  CHECK(eq.plus.v == doctest::Approx(0.9887482193696061).epsilon(1e-14));
  CHECK(eq.minus.v == doctest::Approx(0.1112517806303939).epsilon(1e-14));
  CHECK(eq.plus.w == doctest::Approx(0.00988748219369606).epsilon(1e-13));
  CHECK(eq.minus.w == doctest::Approx(0.001112517806303939).epsilon(1e-13));
  // Both rates vanish at each equilibrium.
  for (const Equilibrium& e : {eq.plus, eq.minus}) {
    const KineticsRate r = fhn_rhs(e.v, e.w, p);
    CHECK(std::abs(r.dv) <= 1e-14);
    CHECK(std::abs(r.dw) <= 1e-14);
  }
}

TEST_CASE("effective nullcline cubic and its slope") {
  const KineticsParams p(0.1, 1.0, 0.01);
  const EquilibriumSet eq = equilibria(p);
  const double root = std::sqrt(eq.discriminant);
  CHECK(root == doctest::Approx(0.8774964387392122).epsilon(1e-15));

  CHECK(std::abs(nullcline_cubic(eq.plus.v, p).value) <= 1e-14);
  CHECK(std::abs(nullcline_cubic(eq.minus.v, p).value) <= 1e-14);
  CHECK(nullcline_cubic(0.0, p).value == 0.0);

  // Slopes collapse to +/- v * sqrt(disc) at the nontrivial roots, a + c/b at zero.
  CHECK(nullcline_cubic(eq.plus.v, p).slope ==
        doctest::Approx(eq.plus.v * root).epsilon(1e-12));
  CHECK(nullcline_cubic(eq.minus.v, p).slope ==
        doctest::Approx(-eq.minus.v * root).epsilon(1e-12));
  CHECK(nullcline_cubic(eq.plus.v, p).slope ==
        doctest::Approx(0.8676230413065668).epsilon(1e-13));
  CHECK(nullcline_cubic(eq.minus.v, p).slope ==
        doctest::Approx(-0.09762304130656671).epsilon(1e-13));
  CHECK(nullcline_cubic(0.0, p).slope == doctest::Approx(0.11).epsilon(1e-15));
}

TEST_CASE("degenerate and absent nontrivial equilibria") {
  // (1-a)^2 = 4c/b exactly: double root at (a+1)/2.
  const EquilibriumSet dbl = equilibria(KineticsParams(0.5, 1.0, 0.0625));
  CHECK(dbl.degenerate);
  CHECK(dbl.has_nontrivial);
  CHECK(dbl.discriminant == 0.0);
  CHECK(dbl.plus.v == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(dbl.minus.v == doctest::Approx(0.75).epsilon(1e-15));

  const EquilibriumSet none = equilibria(KineticsParams(0.5, 1.0, 1.0));
  CHECK_FALSE(none.has_nontrivial);
  CHECK_FALSE(none.degenerate);
  CHECK(none.discriminant < 0.0);
}
