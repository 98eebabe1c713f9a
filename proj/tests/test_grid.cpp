#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptor/grid.hpp"
#include "ptor/random_fields.hpp"

using namespace ptor;

namespace {

constexpr double twopi = 2.0 * std::numbers::pi;

double max_abs_diff(const ScalarField& a, const ScalarField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

}  // namespace

TEST_CASE("grid constructor validates shape") {
  CHECK_NOTHROW(TorusGrid(8));
  CHECK_THROWS_AS(TorusGrid(6), error);
  CHECK_THROWS_AS(TorusGrid(9), error);
  CHECK_THROWS_AS(TorusGrid(32, {0.5, 0.0}), error);
  CHECK_THROWS_AS(TorusGrid(32, {0.5, -1.0}), error);
}

TEST_CASE("spectral derivative is exact on resolved modes") {
  const TorusGrid grid(32);
  ScalarField f(grid), expect1(grid), expect2(grid);
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy) {
      f.at(ix, iy) = std::sin(twopi * grid.x1(ix)) +
                     0.5 * std::cos(twopi * 3 * grid.x2(iy));
      expect1.at(ix, iy) = twopi * std::cos(twopi * grid.x1(ix));
      expect2.at(ix, iy) = -0.5 * twopi * 3 * std::sin(twopi * 3 * grid.x2(iy));
    }
  CHECK(max_abs_diff(spectral_derivative(f, 1), expect1) < 1e-12);
  CHECK(max_abs_diff(spectral_derivative(f, 2), expect2) < 1e-12);

  ScalarField constant(grid);
  for (double& v : constant.v) v = 4.25;
  CHECK(max_abs_diff(spectral_derivative(constant, 1), ScalarField(grid)) <
        1e-13);
}

TEST_CASE("spectral derivative agrees with 8th-order finite differences") {
  const TorusGrid grid(64);
  const ScalarField f = random_scalar(grid, 71, 0.8);
  const ScalarField d1 = spectral_derivative(f, 1);
  const ScalarField d2 = spectral_derivative(f, 2);
  const double c[4] = {4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0};
  const int n = grid.n;
  double worst = 0.0;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      double fd1 = 0.0, fd2 = 0.0;
      for (int s = 1; s <= 4; ++s) {
        fd1 += c[s - 1] * (f.at((ix + s) % n, iy) - f.at((ix - s + n) % n, iy));
        fd2 += c[s - 1] * (f.at(ix, (iy + s) % n) - f.at(ix, (iy - s + n) % n));
      }
      fd1 *= n;
      fd2 *= n;
      worst = std::max(worst, std::abs(fd1 - d1.at(ix, iy)));
      worst = std::max(worst, std::abs(fd2 - d2.at(ix, iy)));
    }
  CHECK(worst < 1e-6);
}

TEST_CASE("integral of a derivative vanishes and constants integrate to 1") {
  const TorusGrid grid(32);
  const ScalarField f = random_scalar(grid, 5, 1.3);
  CHECK(std::abs(integrate(spectral_derivative(f, 1))) < 1e-14);
  CHECK(std::abs(integrate(spectral_derivative(f, 2))) < 1e-14);

  ScalarField c(grid);
  for (double& v : c.v) v = 3.5;
  CHECK(integrate(c) == doctest::Approx(3.5).epsilon(1e-14));
}

TEST_CASE("integrate matches a refined Riemann sum") {
  // Both sums resolve a band-limited integrand exactly, so coarse and fine
  // grids must agree to roundoff; this pins the h² normalization.
  const int modes[3][2] = {{1, 0}, {2, -1}, {0, 3}};
  const double amp[3] = {0.4, -0.7, 0.2};
  auto eval = [&](double x1, double x2) {
    double s = 1.25;
    for (int m = 0; m < 3; ++m)
      s += amp[m] * std::cos(twopi * (modes[m][0] * x1 + modes[m][1] * x2)) +
           0.5 * amp[m] * std::sin(twopi * (modes[m][0] * x1 + modes[m][1] * x2));
    return s;
  };
  const TorusGrid coarse(16);
  ScalarField f(coarse);
  for (int ix = 0; ix < coarse.n; ++ix)
    for (int iy = 0; iy < coarse.n; ++iy)
      f.at(ix, iy) = eval(coarse.x1(ix), coarse.x2(iy));

  const int nf = 256;
  double fine = 0.0;
  for (int ix = 0; ix < nf; ++ix)
    for (int iy = 0; iy < nf; ++iy)
      fine += eval(ix / static_cast<double>(nf), iy / static_cast<double>(nf));
  fine /= static_cast<double>(nf) * nf;

  CHECK(integrate(f) == doctest::Approx(fine).epsilon(1e-13));
}

TEST_CASE("resample by the identity and node translations is exact") {
  const TorusGrid grid(32);
  const ScalarField f = random_scalar(grid, 13, 0.9);

  const ScalarField id = resample(f, AffineTorusMap::identity());
  for (std::size_t i = 0; i < f.v.size(); ++i) CHECK(id.v[i] == f.v[i]);

  const double h = grid.spacing();
  const ScalarField t = resample(f, AffineTorusMap::translation(3 * h, 5 * h));
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy)
      CHECK(t.at(ix, iy) == f.at((ix + 3) % grid.n, (iy + 5) % grid.n));
}

TEST_CASE("interpolated resample matches analytic re-evaluation") {
  const TorusGrid grid(32);
  auto eval = [](double x1, double x2) {
    return std::sin(twopi * (x1 + 2 * x2)) + 0.3 * std::cos(twopi * x1);
  };
  ScalarField f(grid);
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy)
      f.at(ix, iy) = eval(grid.x1(ix), grid.x2(iy));

  AffineTorusMap map = AffineTorusMap::shear();
  map.b1 = 0.1234;
  map.b2 = 0.4321;
  const ScalarField g = resample(f, map);
  double worst = 0.0;
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy) {
      const double x1 = grid.x1(ix), x2 = grid.x2(iy);
      worst = std::max(worst,
                       std::abs(g.at(ix, iy) - eval(x1 + x2 + map.b1,
                                                    x2 + map.b2)));
    }
  CHECK(worst < 1e-12);
}

TEST_CASE("derivative commutes with translation") {
  const TorusGrid grid(32);
  const ScalarField f = random_scalar(grid, 29, 1.1);
  const AffineTorusMap t = AffineTorusMap::translation(0.3117, 0.0529);
  const ScalarField a = spectral_derivative(resample(f, t), 1);
  const ScalarField b = resample(spectral_derivative(f, 1), t);
  CHECK(max_abs_diff(a, b) < 1e-12);
}

TEST_CASE("orientation-reversing maps are rejected") {
  const TorusGrid grid(16);
  const ScalarField f = random_scalar(grid, 3, 1.0);
  AffineTorusMap flip;
  flip.m11 = -1;  // det = -1
  CHECK_THROWS_AS(resample(f, flip), orientation_error);
  AffineTorusMap scale2;
  scale2.m11 = 2;  // det = +2, not area preserving
  CHECK_THROWS_AS(resample(f, scale2), orientation_error);
}

TEST_CASE("non-finite fields are rejected") {
  const TorusGrid grid(16);
  ScalarField f(grid);
  f.at(2, 3) = std::nan("");
  CHECK_THROWS_AS(spectral_derivative(f, 1), invalid_field_error);
  CHECK_THROWS_AS(integrate(f), invalid_field_error);
}

TEST_CASE("threaded integrate matches single-threaded bitwise") {
  const TorusGrid grid(64);
  const ScalarField f = random_scalar(grid, 97, 1.7);
  set_num_threads(1);
  const double s1 = integrate(f);
  set_num_threads(4);
  const double s4 = integrate(f);
  set_num_threads(1);
  CHECK(s1 == s4);  // pairwise cascade is split-invariant
}
