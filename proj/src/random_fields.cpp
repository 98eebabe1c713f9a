#include "ptor/random_fields.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace ptor {
namespace {

/// Band-limited real trigonometric polynomial, max-abs normalized.
ScalarField band_limited(const TorusGrid& grid, std::mt19937_64& rng,
                         double amplitude) {
  // Degree is capped low: pointwise quotients (metric inverses) of sampled
  // fields have geometric spectral tails, and downstream curvature residual
  // tolerances require those tails to stay far below the Nyquist mode.
  const int deg = std::max(1, std::min(grid.n / 8, 2));
  std::normal_distribution<double> gauss(0.0, 1.0);
  struct Mode {
    int k1, k2;
    double a, b;
  };
  std::vector<Mode> modes;
  for (int k1 = 0; k1 <= deg; ++k1)
    for (int k2 = (k1 == 0 ? 1 : -deg); k2 <= deg; ++k2)
      modes.push_back({k1, k2, gauss(rng), gauss(rng)});
  ScalarField f(grid);
  const double twopi = 2.0 * std::numbers::pi;
  const int n = grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      double s = 0.0;
      for (const Mode& m : modes) {
        const double phase = twopi * (m.k1 * grid.x1(ix) + m.k2 * grid.x2(iy));
        s += m.a * std::cos(phase) + m.b * std::sin(phase);
      }
      f.at(ix, iy) = s;
    }
  double mx = 0.0;
  for (double v : f.v) mx = std::max(mx, std::abs(v));
  if (mx > 0.0)
    for (double& v : f.v) v *= amplitude / mx;
  return f;
}

}  // namespace

ScalarField random_scalar(const TorusGrid& grid, std::uint64_t seed,
                          double amplitude) {
  std::mt19937_64 rng(seed);
  return band_limited(grid, rng, amplitude);
}

ComplexField random_complex(const TorusGrid& grid, std::uint64_t seed,
                            double amplitude) {
  std::mt19937_64 rng(seed);
  const ScalarField re = band_limited(grid, rng, amplitude);
  const ScalarField im = band_limited(grid, rng, amplitude);
  ComplexField out(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i)
    out.v[i] = {re.v[i], im.v[i]};
  return out;
}

OneFormField random_one_form(const TorusGrid& grid, std::uint64_t seed,
                             double amplitude) {
  std::mt19937_64 rng(seed);
  OneFormField out(grid);
  for (int c = 0; c < 2; ++c) {
    const ScalarField f = band_limited(grid, rng, amplitude);
    for (std::size_t i = 0; i < grid.nodes(); ++i) out.v[2 * i + c] = f.v[i];
  }
  return out;
}

ConnectionField random_connection(const TorusGrid& grid, std::uint64_t seed,
                                  double amplitude) {
  std::mt19937_64 rng(seed);
  ConnectionField out(grid);
  for (int c = 0; c < 6; ++c) {
    const ScalarField f = band_limited(grid, rng, amplitude);
    for (std::size_t i = 0; i < grid.nodes(); ++i) out.v[6 * i + c] = f.v[i];
  }
  return out;
}

MetricField random_metric(const TorusGrid& grid, std::uint64_t seed,
                          double amplitude) {
  std::mt19937_64 rng(seed);
  const ScalarField f11 = band_limited(grid, rng, amplitude);
  const ScalarField f12 = band_limited(grid, rng, 0.5 * amplitude);
  const ScalarField f22 = band_limited(grid, rng, amplitude);
  MetricField g(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    g.v[3 * i] = 1.0 + f11.v[i];
    g.v[3 * i + 1] = f12.v[i];
    g.v[3 * i + 2] = 1.0 + f22.v[i];
  }
  require_positive_definite(g);
  return g;
}

ConformalStructure random_conformal(const TorusGrid& grid, std::uint64_t seed,
                                    double amplitude) {
  return conformal_class(random_metric(grid, seed, amplitude));
}

PointTensor random_point_tensor(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  PointTensor v(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = j; k < dim; ++k) v.set(i, j, k, gauss(rng));
  return v;
}

std::vector<double> random_point_metric(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 0.2);
  std::vector<double> g(dim * dim, 0.0);
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j) {
      const double v = (i == j ? 1.0 : 0.0) + gauss(rng);
      g[i * dim + j] = v;
      g[j * dim + i] = v;
    }
  return g;
}

}  // namespace ptor
