#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "ptor/random_fields.hpp"
#include "ptor/tensor.hpp"

using namespace ptor;

namespace {

double conn_max_diff(const ConnectionField& a, const ConnectionField& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.v.size(); ++i)
    m = std::max(m, std::abs(a.v[i] - b.v[i]));
  return m;
}

}  // namespace

TEST_CASE("iota and its trace in dimension 2") {
  const PointTensor v = iota({1.0, 0.0});
  CHECK(v.at(0, 0, 0) == 2.0);
  CHECK(v.at(1, 0, 1) == 1.0);
  CHECK(v.at(1, 1, 0) == 1.0);
  CHECK(v.at(0, 0, 1) == 0.0);
  CHECK(v.at(0, 1, 1) == 0.0);
  CHECK(v.at(1, 1, 1) == 0.0);

  const std::vector<double> tr = tensor_trace(v);
  CHECK(tr[0] == 3.0);  // (dim+1)·nu
  CHECK(tr[1] == 0.0);
}

TEST_CASE("trace-free projection annihilates iota and is idempotent") {
  for (int dim : {2, 3, 5}) {
    std::vector<double> nu(dim);
    for (int i = 0; i < dim; ++i) nu[i] = 0.3 * i - 0.7;
    const PointTensor zero = trace_free(iota(nu));
    for (double e : zero.e) CHECK(std::abs(e) < 1e-14);

    const PointTensor v = random_point_tensor(dim, 17 + dim);
    const PointTensor v0 = trace_free(v);
    const std::vector<double> tr = tensor_trace(v0);
    for (double t : tr) CHECK(std::abs(t) < 1e-13);
    const PointTensor v00 = trace_free(v0);
    for (std::size_t i = 0; i < v0.e.size(); ++i)
      CHECK(std::abs(v00.e[i] - v0.e[i]) < 1e-13);

    // v decomposes as v0 + iota(tr v)/(dim+1)
    const PointTensor rec = iota(tensor_trace(v));
    for (std::size_t i = 0; i < v.e.size(); ++i)
      CHECK(std::abs(v.e[i] - v0.e[i] - rec.e[i] / (dim + 1)) < 1e-13);
  }
}

TEST_CASE("levi-civita of a conformally flat metric matches the closed form") {
  const TorusGrid grid(64);
  const ScalarField f = random_scalar(grid, 41, 0.2);
  const ScalarField f1 = spectral_derivative(f, 1);
  const ScalarField f2 = spectral_derivative(f, 2);
  MetricField g(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double e2f = std::exp(2.0 * f.v[i]);
    g.v[3 * i] = e2f;
    g.v[3 * i + 1] = 0.0;
    g.v[3 * i + 2] = e2f;
  }
  const ConnectionField lc = levi_civita(g);
  // flat background: Gamma^i_jk = d^i_j f_k + d^i_k f_j - delta_jk f^i
  double worst = 0.0;
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy) {
      const double df[2] = {f1.at(ix, iy), f2.at(ix, iy)};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k) {
            const double expect = (i == j ? df[k] : 0.0) +
                                  (i == k ? df[j] : 0.0) -
                                  (j == k ? df[i] : 0.0);
            worst = std::max(worst,
                             std::abs(lc.gamma(ix, iy, i, j, k) - expect));
          }
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("levi-civita is metric and torsion-free by construction") {
  const TorusGrid grid(64);
  const MetricField g = random_metric(grid, 19, 0.05);
  const ConnectionField lc = levi_civita(g);
  DenseField<3> dg1 = spectral_derivative_components<3>(g, 1);
  DenseField<3> dg2 = spectral_derivative_components<3>(g, 2);
  double worst = 0.0;
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k) {
            const DenseField<3>& dg = (i == 0) ? dg1 : dg2;
            double r = dg.at(ix, iy, sym_index(j, k));
            for (int l = 0; l < 2; ++l)
              r -= lc.gamma(ix, iy, l, i, j) * g.at(ix, iy, sym_index(l, k)) +
                   lc.gamma(ix, iy, l, i, k) * g.at(ix, iy, sym_index(j, l));
            worst = std::max(worst, std::abs(r));
          }
  CHECK(worst < 1e-9);
}

TEST_CASE("weyl connection with exact beta is a rescaled levi-civita") {
  const TorusGrid grid(64);
  const MetricField g = random_metric(grid, 23, 0.05);
  const ScalarField f = random_scalar(grid, 24, 0.15);
  OneFormField df(grid);
  {
    const ScalarField f1 = spectral_derivative(f, 1);
    const ScalarField f2 = spectral_derivative(f, 2);
    for (std::size_t i = 0; i < grid.nodes(); ++i) {
      df.v[2 * i] = f1.v[i];
      df.v[2 * i + 1] = f2.v[i];
    }
  }
  MetricField rescaled(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double s = std::exp(-2.0 * f.v[i]);
    for (int c = 0; c < 3; ++c) rescaled.v[3 * i + c] = s * g.v[3 * i + c];
  }
  CHECK(conn_max_diff(conformal_connection(g, df), levi_civita(rescaled)) <
        1e-9);
}

TEST_CASE("weyl connection satisfies its metricity equation") {
  const TorusGrid grid(64);
  const MetricField g = random_metric(grid, 31, 0.05);
  const OneFormField beta = random_one_form(grid, 32, 0.3);
  const ConnectionField conn = conformal_connection(g, beta);
  DenseField<3> dg1 = spectral_derivative_components<3>(g, 1);
  DenseField<3> dg2 = spectral_derivative_components<3>(g, 2);
  double worst = 0.0;
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k) {
            const DenseField<3>& dg = (i == 0) ? dg1 : dg2;
            double r = dg.at(ix, iy, sym_index(j, k));
            for (int l = 0; l < 2; ++l)
              r -= conn.gamma(ix, iy, l, i, j) *
                       g.at(ix, iy, sym_index(l, k)) +
                   conn.gamma(ix, iy, l, i, k) * g.at(ix, iy, sym_index(j, l));
            // nabla g = 2 beta (x) g
            r -= 2.0 * beta.at(ix, iy, i) * g.at(ix, iy, sym_index(j, k));
            worst = std::max(worst, std::abs(r));
          }
  CHECK(worst < 1e-9);
}

TEST_CASE("schouten of a constant-coefficient connection matches hand algebra") {
  const TorusGrid grid(16);
  ConnectionField conn(grid);
  const double c = 0.3, d = -0.7;
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy) {
      conn.gamma(ix, iy, 1, 0, 0) = c;  // second comp of the 11 slot
      conn.gamma(ix, iy, 0, 1, 1) = d;  // first comp of the 22 slot
    }
  const CurvatureBundle cb = curvature_ricci_schouten(conn);
  // Only quadratic terms survive: Ric = [[0, -cd], [-cd, 0]], symmetric.
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy) {
      CHECK(std::abs(cb.ricci.s(ix, iy, 0, 0)) < 1e-12);
      CHECK(std::abs(cb.ricci.s(ix, iy, 1, 1)) < 1e-12);
      CHECK(cb.ricci.s(ix, iy, 0, 1) ==
            doctest::Approx(-c * d).epsilon(1e-12));
      CHECK(cb.ricci.s(ix, iy, 1, 0) ==
            doctest::Approx(-c * d).epsilon(1e-12));
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          CHECK(std::abs(cb.schouten.s(ix, iy, i, j) -
                         cb.ricci.s(ix, iy, i, j)) < 1e-12);
    }
}

TEST_CASE("schouten of levi-civita is the gauss curvature times the metric") {
  const TorusGrid grid(64);
  const MetricField g = random_metric(grid, 47, 0.05);
  const CurvatureBundle cb = curvature_ricci_schouten(levi_civita(g));
  const ScalarField K = gauss_curvature(g);
  double worst = 0.0;
  for (int ix = 0; ix < grid.n; ++ix)
    for (int iy = 0; iy < grid.n; ++iy) {
      const double k = K.at(ix, iy);
      worst = std::max(worst, std::abs(cb.schouten.s(ix, iy, 0, 0) -
                                       k * g.g11(ix, iy)));
      worst = std::max(worst, std::abs(cb.schouten.s(ix, iy, 0, 1) -
                                       k * g.g12(ix, iy)));
      worst = std::max(worst, std::abs(cb.schouten.s(ix, iy, 1, 0) -
                                       k * g.g12(ix, iy)));
      worst = std::max(worst, std::abs(cb.schouten.s(ix, iy, 1, 1) -
                                       k * g.g22(ix, iy)));
    }
  CHECK(worst < 1e-9);
}

TEST_CASE("conformal gauss curvature agrees with the general contraction") {
  const TorusGrid grid(64, {0.25, 1.3});
  const ScalarField u = random_scalar(grid, 53, 0.2);
  const MetricField g0 = flat_lattice_metric(grid);
  MetricField g(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double s = std::exp(2.0 * u.v[i]);
    for (int c = 0; c < 3; ++c) g.v[3 * i + c] = s * g0.v[3 * i + c];
  }
  const ScalarField k_fast = gauss_curvature_conformal(u);
  const ScalarField k_full = gauss_curvature(g);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.nodes(); ++i)
    worst = std::max(worst, std::abs(k_fast.v[i] - k_full.v[i]));
  CHECK(worst < 1e-9);

  const ScalarField k_flat = gauss_curvature(g0);
  for (double v : k_flat.v) CHECK(std::abs(v) < 1e-12);
}

TEST_CASE("gauss-bonnet on the torus") {
  const TorusGrid grid(64);
  const MetricField g = random_metric(grid, 59, 0.05);
  const ScalarField K = gauss_curvature(g);
  ScalarField density(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i)
    density.v[i] = K.v[i] * std::sqrt(g.v[3 * i] * g.v[3 * i + 2] -
                                      g.v[3 * i + 1] * g.v[3 * i + 1]);
  CHECK(std::abs(integrate(density)) < 1e-10);
}

TEST_CASE("pullback commutes with levi-civita") {
  const TorusGrid grid(32);
  const MetricField g = random_metric(grid, 61, 0.05);
  const AffineTorusMap shear = AffineTorusMap::shear();
  CHECK(conn_max_diff(levi_civita(pullback(g, shear)),
                      pullback(levi_civita(g), shear)) < 1e-10);
}

TEST_CASE("metric utilities") {
  const TorusGrid grid(16);
  MetricField g(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    g.v[3 * i] = 2.0;
    g.v[3 * i + 1] = 0.5;
    g.v[3 * i + 2] = 1.0;
  }
  CHECK(metric_det(g, 3, 4) == doctest::Approx(1.75));
  const auto inv = metric_inverse(g, 3, 4);
  CHECK(inv[0] * 2.0 + inv[1] * 0.5 == doctest::Approx(1.0));
  CHECK(inv[1] * 2.0 + inv[2] * 0.5 == doctest::Approx(0.0).epsilon(1e-14));

  const ConformalStructure m = conformal_class(g);
  for (std::size_t i = 0; i < grid.nodes(); ++i)
    CHECK(m.v[3 * i] * m.v[3 * i + 2] - m.v[3 * i + 1] * m.v[3 * i + 1] ==
          doctest::Approx(1.0).epsilon(1e-14));

  MetricField scaled = g;
  for (double& v : scaled.v) v *= 7.3;
  const ConformalStructure m2 = conformal_class(scaled);
  for (std::size_t i = 0; i < m.v.size(); ++i)
    CHECK(std::abs(m.v[i] - m2.v[i]) < 1e-14);

  MetricField bad = g;
  bad.at(2, 2, 0) = -1.0;
  CHECK_THROWS_AS(require_positive_definite(bad), domain_error);
  try {
    require_positive_definite(bad);
  } catch (const domain_error& e) {
    CHECK(e.node == 2 * grid.n + 2);
  }
}
