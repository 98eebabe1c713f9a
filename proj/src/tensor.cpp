#include "ptor/tensor.hpp"

#include <cmath>
#include <string>

#include "ptor/errors.hpp"

namespace ptor {

PointTensor iota(const std::vector<double>& nu) {
  const int d = static_cast<int>(nu.size());
  if (d < 2) throw invalid_field_error("iota: dimension must be >= 2");
  PointTensor v(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        v.at(i, j, k) = nu[j] * (i == k ? 1.0 : 0.0) +
                        (i == j ? 1.0 : 0.0) * nu[k];
  return v;
}

std::vector<double> tensor_trace(const PointTensor& v) {
  std::vector<double> tr(v.dim, 0.0);
  for (int j = 0; j < v.dim; ++j)
    for (int i = 0; i < v.dim; ++i) tr[j] += v.at(i, j, i);
  return tr;
}

PointTensor trace_free(const PointTensor& v) {
  const PointTensor correction = iota(tensor_trace(v));
  PointTensor out = v;
  const double c = 1.0 / (v.dim + 1);
  for (std::size_t i = 0; i < out.e.size(); ++i)
    out.e[i] -= c * correction.e[i];
  return out;
}

double metric_det(const MetricField& g, int ix, int iy) {
  return g.g11(ix, iy) * g.g22(ix, iy) - g.g12(ix, iy) * g.g12(ix, iy);
}

std::array<double, 3> metric_inverse(const MetricField& g, int ix, int iy) {
  const double det = metric_det(g, ix, iy);
  return {g.g22(ix, iy) / det, -g.g12(ix, iy) / det, g.g11(ix, iy) / det};
}

void require_positive_definite(const MetricField& g) {
  const int n = g.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      if (g.g11(ix, iy) <= 0.0 || metric_det(g, ix, iy) <= 0.0)
        throw domain_error("metric not positive definite", ix * n + iy);
}

ConnectionField levi_civita(const MetricField& g) {
  require_finite(g.v.data(), g.v.size(), "levi_civita");
  require_positive_definite(g);
  const int n = g.grid.n;
  const DenseField<3> d1 = spectral_derivative_components(g, 1);
  const DenseField<3> d2 = spectral_derivative_components(g, 2);
  ConnectionField out(g.grid);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const auto gi = metric_inverse(g, ix, iy);
      const double ginv[2][2] = {{gi[0], gi[1]}, {gi[1], gi[2]}};
      // dg[l][j][k] = ∂_l g_jk
      double dg[2][2][2];
      for (int j = 0; j < 2; ++j)
        for (int k = j; k < 2; ++k) {
          dg[0][j][k] = dg[0][k][j] = d1.at(ix, iy, sym_index(j, k));
          dg[1][j][k] = dg[1][k][j] = d2.at(ix, iy, sym_index(j, k));
        }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k) {
            double s = 0.0;
            for (int l = 0; l < 2; ++l)
              s += ginv[i][l] * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
            out.gamma(ix, iy, i, j, k) = 0.5 * s;
          }
    }
  }
  return out;
}

ConnectionField conformal_connection(const MetricField& g,
                                     const OneFormField& beta) {
  ConnectionField out = levi_civita(g);
  const int n = g.grid.n;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const auto gi = metric_inverse(g, ix, iy);
      const double ginv[2][2] = {{gi[0], gi[1]}, {gi[1], gi[2]}};
      const double b[2] = {beta.at(ix, iy, 0), beta.at(ix, iy, 1)};
      double bup[2] = {0.0, 0.0};
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l) bup[i] += ginv[i][l] * b[l];
      const double gm[2][2] = {{g.g11(ix, iy), g.g12(ix, iy)},
                               {g.g12(ix, iy), g.g22(ix, iy)}};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k)
            out.gamma(ix, iy, i, j, k) +=
                gm[j][k] * bup[i] - (i == j ? b[k] : 0.0) -
                (i == k ? b[j] : 0.0);
    }
  }
  return out;
}

CurvatureBundle curvature_ricci_schouten(const ConnectionField& conn) {
  require_finite(conn.v.data(), conn.v.size(), "curvature_ricci_schouten");
  const int n = conn.grid.n;
  const DenseField<6> d1 = spectral_derivative_components(conn, 1);
  const DenseField<6> d2 = spectral_derivative_components(conn, 2);
  CurvatureBundle out{DenseField<4>(conn.grid), SchoutenField(conn.grid),
                      SchoutenField(conn.grid)};
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      double riem[2][2];  // R^i_{j12}
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          double r = d1.at(ix, iy, 3 * i + sym_index(1, j)) -
                     d2.at(ix, iy, 3 * i + sym_index(0, j));
          for (int m = 0; m < 2; ++m)
            r += conn.gamma(ix, iy, i, 0, m) * conn.gamma(ix, iy, m, 1, j) -
                 conn.gamma(ix, iy, i, 1, m) * conn.gamma(ix, iy, m, 0, j);
          riem[i][j] = r;
          out.riemann.at(ix, iy, 2 * i + j) = r;
        }
      // Ricci(Y,Z) = trace(X ↦ R(X,Y)Z)
      double ric[2][2];
      for (int b = 0; b < 2; ++b) {
        ric[0][b] = -riem[1][b];
        ric[1][b] = riem[0][b];
      }
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
          out.ricci.s(ix, iy, i, j) = ric[i][j];
          const double sym = 0.5 * (ric[i][j] + ric[j][i]);
          const double asym = 0.5 * (ric[i][j] - ric[j][i]);
          out.schouten.s(ix, iy, i, j) = sym - asym / 3.0;
        }
    }
  }
  return out;
}

ScalarField gauss_curvature(const MetricField& g) {
  const CurvatureBundle cb = curvature_ricci_schouten(levi_civita(g));
  const int n = g.grid.n;
  ScalarField out(g.grid);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const auto gi = metric_inverse(g, ix, iy);
      out.at(ix, iy) = 0.5 * (gi[0] * cb.schouten.s(ix, iy, 0, 0) +
                              gi[1] * (cb.schouten.s(ix, iy, 0, 1) +
                                       cb.schouten.s(ix, iy, 1, 0)) +
                              gi[2] * cb.schouten.s(ix, iy, 1, 1));
    }
  return out;
}

MetricField flat_lattice_metric(const TorusGrid& grid) {
  MetricField g0(grid);
  const double re = grid.tau.real();
  const double abs2 = std::norm(grid.tau);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    g0.v[3 * i + 0] = 1.0;
    g0.v[3 * i + 1] = re;
    g0.v[3 * i + 2] = abs2;
  }
  return g0;
}

ScalarField gauss_curvature_conformal(const ScalarField& u) {
  const TorusGrid& grid = u.grid;
  const double im = grid.tau.imag();
  const double re = grid.tau.real();
  const double det = im * im;
  // g₀⁻¹ entries
  const double i11 = std::norm(grid.tau) / det;
  const double i12 = -re / det;
  const double i22 = 1.0 / det;
  const ScalarField u1 = spectral_derivative(u, 1);
  const ScalarField u2 = spectral_derivative(u, 2);
  const ScalarField u11 = spectral_derivative(u1, 1);
  const ScalarField u12 = spectral_derivative(u1, 2);
  const ScalarField u22 = spectral_derivative(u2, 2);
  ScalarField out(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double lap = i11 * u11.v[i] + 2.0 * i12 * u12.v[i] + i22 * u22.v[i];
    out.v[i] = -std::exp(-2.0 * u.v[i]) * lap;
  }
  return out;
}

MetricField pullback(const MetricField& g, const AffineTorusMap& map) {
  MetricField moved(g.grid);
  resample_components(g.grid, g.v.data(), moved.v.data(), 3, map);
  const double m[2][2] = {{double(map.m11), double(map.m12)},
                          {double(map.m21), double(map.m22)}};
  MetricField out(g.grid);
  const int n = g.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double gm[2][2] = {{moved.g11(ix, iy), moved.g12(ix, iy)},
                               {moved.g12(ix, iy), moved.g22(ix, iy)}};
      for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
          double s = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) s += m[a][i] * gm[a][b] * m[b][j];
          out.at(ix, iy, sym_index(i, j)) = s;
        }
    }
  return out;
}

ConnectionField pullback(const ConnectionField& c, const AffineTorusMap& map) {
  ConnectionField moved(c.grid);
  resample_components(c.grid, c.v.data(), moved.v.data(), 6, map);
  const double m[2][2] = {{double(map.m11), double(map.m12)},
                          {double(map.m21), double(map.m22)}};
  // det M = +1, so M⁻¹ = [[m22, -m12], [-m21, m11]].
  const double minv[2][2] = {{double(map.m22), double(-map.m12)},
                             {double(-map.m21), double(map.m11)}};
  ConnectionField out(c.grid);
  const int n = c.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k) {
            double s = 0.0;
            for (int a = 0; a < 2; ++a)
              for (int b = 0; b < 2; ++b)
                for (int e = 0; e < 2; ++e)
                  s += minv[i][a] * moved.gamma(ix, iy, a, b, e) * m[b][j] *
                       m[e][k];
            out.gamma(ix, iy, i, j, k) = s;
          }
  return out;
}

ConformalStructure conformal_class(const MetricField& g) {
  require_positive_definite(g);
  ConformalStructure m(g.grid);
  for (std::size_t i = 0; i < g.grid.nodes(); ++i) {
    const double det = g.v[3 * i] * g.v[3 * i + 2] -
                       g.v[3 * i + 1] * g.v[3 * i + 1];
    const double s = 1.0 / std::sqrt(det);
    m.v[3 * i] = s * g.v[3 * i];
    m.v[3 * i + 1] = s * g.v[3 * i + 1];
    m.v[3 * i + 2] = s * g.v[3 * i + 2];
  }
  return m;
}

MetricField representative_metric(const ConformalStructure& m) {
  MetricField g(m.grid);
  g.v = m.v;
  require_positive_definite(g);
  return g;
}

}  // namespace ptor
