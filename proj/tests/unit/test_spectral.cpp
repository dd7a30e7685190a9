#include <cmath>
#include <complex>
#include <vector>

#include "bidomain/errors.hpp"
#include "bidomain/spectral_analysis.hpp"
#include "doctest.h"

using namespace bidomain;

namespace {
const KineticsParams kStd(0.1, 1.0, 0.01);
const std::vector<double> kMu{0.0, 0.375, 0.9375};
}  // namespace

TEST_CASE("uniform decay bound of the rest state") {
  CHECK(origin_decay_bound(KineticsParams(0.5, 1.0, 1.0)) ==
        doctest::Approx(0.75).epsilon(1e-15));
  CHECK(origin_decay_bound(kStd) == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(origin_decay_bound(KineticsParams(0.3, 0.05, 2.0)) ==
        doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("quadratic root conventions") {
  SUBCASE("complex pair, positive imaginary part first") {
    const auto [l1, l2] = quadratic_roots(1.5, 1.5);
    CHECK(l1.real() == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(l1.imag() == doctest::Approx(0.9682458365518543).epsilon(1e-15));
    CHECK(l2 == std::conj(l1));
  }
  SUBCASE("well separated real roots, larger first") {
    const auto [l1, l2] = quadratic_roots(11.5, 11.5);
    CHECK(l1.imag() == 0.0);
    CHECK(l2.imag() == 0.0);
    CHECK(l1.real() == doctest::Approx(10.393543905251677).epsilon(1e-13));
    CHECK(l2.real() == doctest::Approx(1.1064560947483224).epsilon(1e-13));
  }
  SUBCASE("no cancellation for the small root") {
    const auto [l1, l2] = quadratic_roots(1e8, 1.0);
    CHECK(l1.real() == doctest::Approx(1e8).epsilon(1e-12));
    CHECK(l2.real() == doctest::Approx(1e-8).epsilon(1e-12));
  }
  SUBCASE("negative and degenerate configurations") {
    const auto [n1, n2] = quadratic_roots(-3.0, 2.0);
    CHECK(n1.real() == doctest::Approx(-1.0).epsilon(1e-15));
    CHECK(n2.real() == doctest::Approx(-2.0).epsilon(1e-15));
    const auto [z1, z2] = quadratic_roots(5.0, 0.0);
    CHECK(z1.real() == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(z2.real() == 0.0);
    const auto [s1, s2] = quadratic_roots(0.0, -4.0);
    CHECK(s1.real() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(s2.real() == doctest::Approx(-2.0).epsilon(1e-15));
  }
}

TEST_CASE("mode polynomial at the origin agrees with the general form") {
  for (const double mu : {0.0, 0.375, 7.25}) {
    const ModePolynomial o = origin_pq(mu, kStd);
    const ModePolynomial g = equilibrium_pq(mu, 0.0, kStd);
    CHECK(o.p == doctest::Approx(g.p).epsilon(1e-14));
    CHECK(o.q == doctest::Approx(g.q).epsilon(1e-14));
  }
  const ModePolynomial at0 = origin_pq(0.0, kStd);
  CHECK(at0.p == doctest::Approx(1.1).epsilon(1e-15));
  CHECK(at0.q == doctest::Approx(0.11).epsilon(1e-15));
}

TEST_CASE("spectrum sweep around the rest state") {
  const SpectrumReport rep = origin_spectrum(kMu, kStd);
  REQUIRE(rep.records.size() == 3);
  CHECK(rep.essential_point == 1.0);
  CHECK(rep.decay_bound == doctest::Approx(0.1).epsilon(1e-15));
  // Slowest decay sits on the zeroth mode.
  CHECK(rep.spectral_bound == doctest::Approx(0.1112517806303939).epsilon(1e-14));
  CHECK_FALSE(rep.records[0].complex_pair);
  CHECK(rep.records[0].lambda1.real() ==
        doctest::Approx(0.9887482193696061).epsilon(1e-14));
  for (const EigenRecord& r : rep.records) {
    CHECK(r.lambda1.real() > 0.0);
    CHECK(r.lambda2.real() > 0.0);
  }
}

TEST_CASE("spectrum sweep around the unstable intermediate state") {
  const EquilibriumSet eq = equilibria(kStd);
  const SpectrumReport rep = equilibrium_spectrum(kMu, eq.minus.v, kStd);
  CHECK(std::isnan(rep.decay_bound));
  CHECK(rep.spectral_bound == doctest::Approx(-0.09851988336520473).epsilon(1e-13));
}

TEST_CASE("eigen directions solve the mode block") {
  const ModePolynomial blk = origin_pq(0.0, kStd);
  const auto [l1, l2] = quadratic_roots(blk.p, blk.q);
  for (const std::complex<double>& lambda : {l1, l2}) {
    const EigenDirection dir = eigen_direction(0.0, lambda, kStd);
    CHECK(dir.v_amp == std::complex<double>(1.0, 0.0));
    const std::complex<double> expect_w =
        kStd.c / (std::complex<double>(kStd.b, 0.0) - lambda);
    CHECK(std::abs(dir.w_amp - expect_w) <= 1e-15);
    // Membrane row of the block vanishes on the direction.
    const std::complex<double> r1 =
        (lambda - blk.p + kStd.b) * dir.v_amp - dir.w_amp;
    CHECK(std::abs(r1) <= 1e-12);
  }
  CHECK_THROWS_AS(eigen_direction(0.0, {kStd.b, 0.0}, kStd), NumericalError);
}

TEST_CASE("distance to the transfer eigenvalue set") {
  CHECK(dtn_set_distance(0.2, kMu, 0.5) == doctest::Approx(0.175).epsilon(1e-15));
  CHECK(dtn_set_distance(0.9375, kMu, 0.5) == 0.0);
  // Past the listed modes the set continues with the asymptotic spacing.
  CHECK(dtn_set_distance(2.0, kMu, 0.5) == doctest::Approx(0.0625).epsilon(1e-13));
  CHECK(dtn_set_distance(-0.11, kMu, 0.5) == doctest::Approx(0.11).epsilon(1e-15));
  CHECK_THROWS_AS(dtn_set_distance(0.2, {}, 0.5), InputError);
  CHECK_THROWS_AS(dtn_set_distance(0.2, kMu, 0.0), InputError);
}

TEST_CASE("classification of the standard excitable set") {
  const StabilityReport rep = classify(kStd, kMu, 0.5);
  CHECK(rep.discriminant == doctest::Approx(0.77).epsilon(1e-15));

  CHECK(rep.origin.stable);
  CHECK(rep.origin.decay_margin == doctest::Approx(0.1112517806303939).epsilon(1e-12));
  CHECK(std::isnan(rep.origin.growth_rate));

  REQUIRE(rep.upper.has_value());
  REQUIRE(rep.lower.has_value());
  CHECK(rep.upper->stable);
  CHECK(rep.upper->stiffness == doctest::Approx(0.8676230413065668).epsilon(1e-13));
  CHECK(rep.upper->decay_margin > 0.0);

  CHECK_FALSE(rep.lower->stable);
  CHECK(std::isnan(rep.lower->decay_margin));
  CHECK(rep.lower->growth_rate == doctest::Approx(0.09851988336520473).epsilon(1e-13));

  for (const EquilibriumAssessment* a :
       {&rep.origin, &rep.upper.value(), &rep.lower.value()}) {
    CHECK(a->hyperbolicity.base_clear);
    CHECK(a->hyperbolicity.hyperbolic_shift_when_positive);
    CHECK(a->hyperbolicity.hyperbolic_shift_when_negative);
  }
  CHECK(rep.origin.hyperbolicity.shift == doctest::Approx(-0.99).epsilon(1e-15));
  CHECK(rep.origin.hyperbolicity.dist_base == doctest::Approx(0.11).epsilon(1e-13));
}

TEST_CASE("slow recovery flips the excited state unstable") {
  const KineticsParams flip(0.1, 0.01, 0.001925);
  const StabilityReport rep = classify(flip, kMu, 0.5);
  REQUIRE(rep.upper.has_value());
  CHECK(rep.upper->stiffness == doctest::Approx(0.13).epsilon(1e-12));
  CHECK(rep.upper->hyperbolicity.shift == doctest::Approx(0.1825).epsilon(1e-12));
  CHECK_FALSE(rep.upper->stable);
  CHECK(rep.upper->growth_rate == doctest::Approx(0.02625).epsilon(1e-12));
  CHECK(rep.origin.stable);
}

TEST_CASE("classification rejects unusable inputs") {
  CHECK_THROWS_AS(classify(KineticsParams(0.5, 1.0, 0.0625), kMu, 0.5), ValidationError);
  CHECK_THROWS_AS(classify(kStd, {}, 0.5), InputError);
  // A coarse clearance tolerance wipes out both hyperbolicity verdicts.
  const StabilityReport rep = classify(kStd, kMu, 0.5, 1.0);
  CHECK_FALSE(rep.origin.hyperbolicity.base_clear);
  CHECK_FALSE(rep.origin.hyperbolicity.hyperbolic_shift_when_positive);
  CHECK_FALSE(rep.origin.hyperbolicity.hyperbolic_shift_when_negative);
}
