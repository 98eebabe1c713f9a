#include "ptor/flatness.hpp"

#include <cmath>

namespace ptor {

CartanMatrix cartan_matrix(const double eta[2][2][2], const double omega[2][2],
                           const double xi[2], const double dxi[2][2],
                           const double S[2][2]) {
  CartanMatrix theta;
  for (int c = 0; c < 2; ++c) {
    const double tr_eta = eta[0][0][c] + eta[1][1][c];
    const double xi_omega = xi[0] * omega[0][c] + xi[1] * omega[1][c];
    theta.comp[0][0][c] = -tr_eta / 3.0 - xi_omega;
    for (int j = 0; j < 2; ++j) {
      double upper = dxi[j][c];
      for (int i = 0; i < 2; ++i) upper -= xi[i] * eta[i][j][c];
      for (int k = 0; k < 2; ++k) upper -= S[j][k] * omega[k][c];
      upper -= xi[j] * xi_omega;
      theta.comp[0][j + 1][c] = upper;
      theta.comp[j + 1][0][c] = omega[j][c];
      for (int i = 0; i < 2; ++i)
        theta.comp[i + 1][j + 1][c] =
            eta[i][j][c] - (i == j ? tr_eta / 3.0 : 0.0) +
            omega[i][c] * xi[j];
    }
  }
  return theta;
}

LiouvilleField liouville_curvature(const ProjectiveStructure& p,
                                   const ConformalStructure& m) {
  const MetricField g = representative_metric(m);
  const ConnectionField conn = canonical_pair(p, g).projective_rep;
  const SchoutenField S = curvature_ricci_schouten(conn).schouten;
  const DenseField<4> dS1 = spectral_derivative_components(S, 1);
  const DenseField<4> dS2 = spectral_derivative_components(S, 2);
  const int n = g.grid.n;
  LiouvilleField out(g.grid);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      // (∇_i S)_{jk} = ∂_i S_jk − Γ^m_{ij} S_mk − Γ^m_{ik} S_jm
      auto nabla = [&](int i, int j, int k) {
        double v = (i == 0 ? dS1 : dS2).at(ix, iy, 2 * j + k);
        for (int mm = 0; mm < 2; ++mm)
          v -= conn.gamma(ix, iy, mm, i, j) * S.s(ix, iy, mm, k) +
               conn.gamma(ix, iy, mm, i, k) * S.s(ix, iy, j, mm);
        return v;
      };
      for (int j = 0; j < 2; ++j)
        out.at(ix, iy, j) = -(nabla(0, j, 1) - nabla(1, j, 0));
    }
  return out;
}

FlatnessReport is_flat(const ProjectiveStructure& p,
                       const ConformalStructure& m, double tol) {
  const LiouvilleField l = liouville_curvature(p, m);
  double mx = 0.0;
  for (double v : l.v) mx = std::max(mx, std::abs(v));
  return {mx, tol, mx < tol};
}

}  // namespace ptor
