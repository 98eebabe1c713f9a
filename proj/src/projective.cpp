#include "ptor/projective.hpp"

#include <cmath>

#include "ptor/errors.hpp"

namespace ptor {
namespace {

/// Dense row-major matrix inverse for dim 2 or 3 (Gauss-Jordan).
std::vector<double> dense_inverse(const std::vector<double>& m, int d) {
  std::vector<double> a = m;
  std::vector<double> inv(d * d, 0.0);
  for (int i = 0; i < d; ++i) inv[i * d + i] = 1.0;
  for (int col = 0; col < d; ++col) {
    int piv = col;
    for (int r = col + 1; r < d; ++r)
      if (std::abs(a[r * d + col]) > std::abs(a[piv * d + col])) piv = r;
    if (a[piv * d + col] == 0.0)
      throw domain_error("singular metric in pointwise inverse");
    if (piv != col)
      for (int c = 0; c < d; ++c) {
        std::swap(a[piv * d + c], a[col * d + c]);
        std::swap(inv[piv * d + c], inv[col * d + c]);
      }
    const double s = 1.0 / a[col * d + col];
    for (int c = 0; c < d; ++c) {
      a[col * d + c] *= s;
      inv[col * d + c] *= s;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col) continue;
      const double f = a[r * d + col];
      for (int c = 0; c < d; ++c) {
        a[r * d + c] -= f * a[col * d + c];
        inv[r * d + c] -= f * inv[col * d + c];
      }
    }
  }
  return inv;
}

}  // namespace

ConnectionField add_iota(const ConnectionField& conn,
                         const OneFormField& upsilon) {
  ConnectionField out = conn;
  const int n = conn.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double u[2] = {upsilon.at(ix, iy, 0), upsilon.at(ix, iy, 1)};
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k)
            out.gamma(ix, iy, i, j, k) +=
                u[j] * (i == k ? 1.0 : 0.0) + (i == j ? 1.0 : 0.0) * u[k];
    }
  return out;
}

VectorField x_g(const ConnectionField& conn, const MetricField& g) {
  const ConnectionField lc = levi_civita(g);
  const int n = g.grid.n;
  VectorField out(g.grid);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      double diff[2][2][2];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            diff[i][j][k] =
                conn.gamma(ix, iy, i, j, k) - lc.gamma(ix, iy, i, j, k);
      // trace-free part, then contract with g⁻¹
      double tr[2] = {0.0, 0.0};
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) tr[j] += diff[i][j][i];
      const auto gi = metric_inverse(g, ix, iy);
      const double ginv[2][2] = {{gi[0], gi[1]}, {gi[1], gi[2]}};
      for (int i = 0; i < 2; ++i) {
        double s = 0.0;
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) {
            const double d0 =
                diff[i][j][k] -
                (tr[j] * (i == k ? 1.0 : 0.0) + (i == j ? 1.0 : 0.0) * tr[k]) /
                    3.0;
            s += ginv[j][k] * d0;
          }
        out.at(ix, iy, i) = 0.75 * s;  // (n+1)/((n+2)(n−1)) at n = 2
      }
    }
  return out;
}

std::vector<double> x_g_point(const PointTensor& diff,
                              const std::vector<double>& metric) {
  const int d = diff.dim;
  if (d < 2) throw invalid_field_error("x_g_point: dimension must be >= 2");
  const PointTensor d0 = trace_free(diff);
  const std::vector<double> ginv = dense_inverse(metric, d);
  const double c = double(d + 1) / double((d + 2) * (d - 1));
  std::vector<double> out(d, 0.0);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) out[i] += c * ginv[j * d + k] * d0.at(i, j, k);
  return out;
}

EndoOneForm a_form(const ProjectiveStructure& p, const MetricField& g) {
  const ConnectionField lc = levi_civita(g);
  const VectorField x = x_g(p.rep, g);
  const int n = g.grid.n;
  EndoOneForm out(g.grid);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double gm[2][2] = {{g.g11(ix, iy), g.g12(ix, iy)},
                               {g.g12(ix, iy), g.g22(ix, iy)}};
      const double xv[2] = {x.at(ix, iy, 0), x.at(ix, iy, 1)};
      double t[2][2][2];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k)
            t[i][j][k] = p.rep.gamma(ix, iy, i, j, k) -
                         lc.gamma(ix, iy, i, j, k) - gm[j][k] * xv[i];
      double tr[2] = {0.0, 0.0};
      for (int j = 0; j < 2; ++j)
        for (int i = 0; i < 2; ++i) tr[j] += t[i][j][i];
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = j; k < 2; ++k)
            out.comp(ix, iy, i, j, k) =
                t[i][j][k] -
                (tr[j] * (i == k ? 1.0 : 0.0) + (i == j ? 1.0 : 0.0) * tr[k]) /
                    3.0;
    }
  return out;
}

CanonicalPair canonical_pair(const ProjectiveStructure& p,
                             const MetricField& g) {
  const VectorField x = x_g(p.rep, g);
  OneFormField beta(g.grid);
  const int n = g.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      beta.at(ix, iy, 0) =
          g.g11(ix, iy) * x.at(ix, iy, 0) + g.g12(ix, iy) * x.at(ix, iy, 1);
      beta.at(ix, iy, 1) =
          g.g12(ix, iy) * x.at(ix, iy, 0) + g.g22(ix, iy) * x.at(ix, iy, 1);
    }
  CanonicalPair out{conformal_connection(g, beta), ConnectionField(g.grid)};
  const EndoOneForm a = a_form(p, g);
  out.projective_rep = out.conformal_rep;
  for (std::size_t i = 0; i < out.projective_rep.v.size(); ++i)
    out.projective_rep.v[i] += a.v[i];
  return out;
}

ScalarField a_norm_squared(const EndoOneForm& a, const MetricField& g) {
  const int n = g.grid.n;
  ScalarField out(g.grid);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double gm[2][2] = {{g.g11(ix, iy), g.g12(ix, iy)},
                               {g.g12(ix, iy), g.g22(ix, iy)}};
      const auto gi = metric_inverse(g, ix, iy);
      const double ginv[2][2] = {{gi[0], gi[1]}, {gi[1], gi[2]}};
      double s = 0.0;
      for (int i = 0; i < 2; ++i)
        for (int l = 0; l < 2; ++l)
          for (int j = 0; j < 2; ++j)
            for (int m = 0; m < 2; ++m)
              for (int k = 0; k < 2; ++k)
                for (int q = 0; q < 2; ++q)
                  s += gm[i][l] * ginv[j][m] * ginv[k][q] *
                       a.comp(ix, iy, i, j, k) * a.comp(ix, iy, l, m, q);
      out.at(ix, iy) = s;
    }
  return out;
}

ScalarField energy_density(const ProjectiveStructure& p, const MetricField& g) {
  const EndoOneForm a = a_form(p, g);
  ScalarField out = a_norm_squared(a, g);
  const int n = g.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      out.at(ix, iy) *= std::sqrt(metric_det(g, ix, iy));
  return out;
}

double energy(const ProjectiveStructure& p, const MetricField& g) {
  return integrate(energy_density(p, g));
}

double energy(const ProjectiveStructure& p, const ConformalStructure& m) {
  return energy(p, representative_metric(m));
}

}  // namespace ptor
