#include <cmath>
#include <random>

#include "bidomain/fourier.hpp"
#include "doctest.h"

using namespace bidomain;

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(FourierGrid(0), ValidationError);
  CHECK_THROWS_AS(FourierGrid(4, 16), ValidationError);  // needs 4k+1 = 17
  const FourierGrid g(4);
  CHECK(g.m_phys() == 17);
  CHECK(g.theta(0) == 0.0);
}

TEST_CASE("analyze picks out a pure harmonic") {
  const FourierGrid grid(5);
  const int m = grid.m_phys();
  std::vector<double> samples(static_cast<std::size_t>(m));
  for (int j = 0; j < m; ++j) samples[static_cast<std::size_t>(j)] = std::cos(3.0 * grid.theta(j));
  const SpectralField f = analyze(samples, grid);
  CHECK(f.at(3).real() == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(f.at(3).imag()) < 1e-15);
  CHECK(std::abs(f.at(-3) - std::conj(f.at(3))) == 0.0);
  for (int n = 0; n <= 5; ++n) {
    if (n == 3) continue;
    CHECK(std::abs(f.at(n)) < 1e-15);
  }
}

TEST_CASE("analyze of an exactly constant field leaves the oscillatory modes at bitwise zero") {
  const FourierGrid grid(6);
  const std::vector<double> samples(static_cast<std::size_t>(grid.m_phys()), 0.7310585786300049);
  const SpectralField f = analyze(samples, grid);
  CHECK(f.max_abs_nonzero_mode() == 0.0);
  CHECK(f.at(0).real() == doctest::Approx(0.7310585786300049).epsilon(1e-15));
}

TEST_CASE("synthesize then analyze round-trips a random symmetric field") {
  const FourierGrid grid(8);
  SpectralField f(8);
  std::mt19937_64 rng(12345);
  const auto uniform = [&rng]() {
    return static_cast<double>(rng()) / 18446744073709551616.0 * 2.0 - 1.0;
  };
  f.at(0) = {uniform(), 0.0};
  for (int n = 1; n <= 8; ++n) {
    f.at(n) = {uniform(), uniform()};
    f.at(-n) = std::conj(f.at(n));
  }
  const std::vector<double> samples = synthesize(f, grid);
  const SpectralField back = analyze(samples, grid);
  for (int n = -8; n <= 8; ++n) {
    CHECK(std::abs(back.at(n) - f.at(n)) < 1e-14);
  }
}

TEST_CASE("synthesize rejects asymmetric fields and over-wide bands") {
  const FourierGrid grid(3);
  SpectralField bad(3);
  bad.at(1) = {1.0, 0.0};
  bad.at(-1) = {0.5, 0.0};  // not conj(c_1)
  CHECK_THROWS_AS(synthesize(bad, grid), ValidationError);

  SpectralField wide(4);
  CHECK_THROWS_AS(synthesize(wide, FourierGrid(3)), InputError);

  CHECK_THROWS_AS(analyze(std::vector<double>(5, 0.0), grid), InputError);
}

TEST_CASE("interface integrals and norms") {
  const Geometry geom(1.5, 3.0);
  const FourierGrid grid(4);
  const std::vector<double> ones(static_cast<std::size_t>(grid.m_phys()), 1.0);
  CHECK(circle_integral(ones, geom) == doctest::Approx(kTwoPi * 1.5).epsilon(1e-15));

  SpectralField f(2);
  f.at(1) = {0.5, 0.0};
  f.at(-1) = {0.5, 0.0};  // the field cos(theta)
  // |cos|^2 integrates to pi*rho on the circle.
  CHECK(l2_norm_on_sigma(f, geom) ==
        doctest::Approx(std::sqrt(0.5 * kTwoPi * 1.5)).epsilon(1e-14));
}
