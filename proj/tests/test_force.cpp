#include <doctest.h>

#include <cmath>

#include "nsconv/force.hpp"

using namespace nsconv;

TEST_SUITE("force") {

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(ForceParams(0, 1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ForceParams(1, -1.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ForceParams(1, 1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ForceParams(1, 1.0, 1.0, -0.1), std::invalid_argument);
  CHECK_NOTHROW(ForceParams(3, 0.0, 2.0, 0.5));  // zero amplitude allowed
}

TEST_CASE("decay kernel") {
  ForceParams p(1, 1.0, 2.0, 0.01);
  CHECK(p.kernel(0.0) == 1.0);
  const double t_half = 1.0 / (4.0 * 4.0 * 0.01);  // 4 mu^2 nu t = 1
  CHECK(p.kernel(t_half) == doctest::Approx(4.0).epsilon(1e-14));
}

TEST_CASE("force vanishes at the origin and rejects t < 0") {
  GridSpec g(8.0, 64);
  for (int n = 1; n <= 4; ++n) {
    VectorField f = evaluate_force(ForceParams(n, 5.0, 1.5, 0.1), 0.3, g);
    CHECK(f.x.at(32, 32) == 0.0);
    CHECK(f.y.at(32, 32) == 0.0);
  }
  CHECK_THROWS_AS(evaluate_force(ForceParams(1, 1.0, 1.0, 1.0), -0.1, g),
                  std::invalid_argument);
}

TEST_CASE("point value at (1, 0): magnitude exp(-4) along +x") {
  GridSpec g(8.0, 256);
  VectorField f = evaluate_force(ForceParams(1, 1.0, 2.0, 0.01), 0.0, g);
  const int i = 144, j = 128;  // (x, y) = (1, 0)
  CHECK(g.coord(i) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.coord(j) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(f.x.at(i, j) == doctest::Approx(std::exp(-4.0)).epsilon(1e-13));
  CHECK(f.y.at(i, j) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("kernel quarters the same point when 4 mu^2 nu t = 1") {
  GridSpec g(8.0, 256);
  const double t = 1.0 / (4.0 * 4.0 * 0.01);
  VectorField f = evaluate_force(ForceParams(1, 1.0, 2.0, 0.01), t, g);
  CHECK(f.x.at(144, 128) == doctest::Approx(std::exp(-4.0) / 4.0).epsilon(1e-13));
}

TEST_CASE("force is purely radial: f x r = 0 pointwise") {
  GridSpec g(6.0, 48);
  VectorField f = evaluate_force(ForceParams(3, 2.0, 1.0, 0.2), 0.0, g);
  double worst = 0.0;
  for (int i = 0; i < g.resolution; ++i) {
    const double x = g.coord(i);
    for (int j = 0; j < g.resolution; ++j) {
      const double y = g.coord(j);
      worst = std::max(worst, std::abs(f.x.at(i, j) * y - f.y.at(i, j) * x));
    }
  }
  CHECK(worst < 1e-14);
}

TEST_CASE("angular dependence is cos(n phi) along a circle") {
  GridSpec g(8.0, 64);
  const int n = 2;
  const double mu = 1.0, F = 3.0;
  VectorField f = evaluate_force(ForceParams(n, F, mu, 0.1), 0.0, g);
  // pick grid points on the axes and diagonals of the circle r = 2
  const double r = 2.0;
  const double base = F * std::pow(r, n + 1) * std::exp(-mu * mu * r * r);
  const int c = g.resolution / 2, s = static_cast<int>(r / g.dx());
  // phi = 0: f = (base, 0); phi = pi/2: cos(2 phi) = -1, direction +y
  CHECK(f.x.at(c + s, c) == doctest::Approx(base).epsilon(1e-13));
  CHECK(f.y.at(c, c + s) == doctest::Approx(-base).epsilon(1e-13));
}

TEST_CASE("separable spectral provider matches a direct transform") {
  GridSpec g(8.0, 64);
  ForceParams p(2, 4.0, 1.5, 0.3);
  RadialForce rf(p, g);
  const double t = 0.7;
  SpectralVectorField got(g);
  rf.fill(t, got);
  VectorField direct = evaluate_force(p, t, g);
  SpectralVectorField want(g);
  fft_for(g).forward_pair(direct.x, direct.y, want.x, want.y);
  double err = 0.0, scale = 0.0;
  for (std::size_t i = 0; i < got.x.c.size(); ++i) {
    err = std::max({err, std::abs(got.x.c[i] - want.x.c[i]),
                    std::abs(got.y.c[i] - want.y.c[i])});
    scale = std::max({scale, std::abs(want.x.c[i]), std::abs(want.y.c[i])});
  }
  CHECK(err < 1e-12 * scale);
  CHECK_THROWS_AS(rf.fill(-1.0, got), std::invalid_argument);
}

}  // TEST_SUITE
