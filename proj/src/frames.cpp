#include "ptor/frames.hpp"

#include <cmath>
#include <complex>

#include "ptor/errors.hpp"

namespace ptor {
namespace {

using cd = std::complex<double>;

double coframe_det(const CoframeField& e, int ix, int iy) {
  return e.e(ix, iy, 0, 0) * e.e(ix, iy, 1, 1) -
         e.e(ix, iy, 0, 1) * e.e(ix, iy, 1, 0);
}

/// Inverse frame vectors E^i_a (columns of the inverse of (e^a_i)).
void inverse_frame(const CoframeField& e, int ix, int iy, double E[2][2]) {
  const double det = coframe_det(e, ix, iy);
  E[0][0] = e.e(ix, iy, 1, 1) / det;   // E^1_1
  E[0][1] = -e.e(ix, iy, 0, 1) / det;  // E^1_2
  E[1][0] = -e.e(ix, iy, 1, 0) / det;  // E^2_1
  E[1][1] = e.e(ix, iy, 0, 0) / det;   // E^2_2
}

/// φ in coordinate components f_i = φ₁e¹_i + φ₂e²_i.
ComplexField phi_coordinate(const FrameScalars& fs, int i) {
  ComplexField f(fs.a.grid);
  const int n = fs.a.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      f.at(ix, iy) = fs.phi1.at(ix, iy) * fs.coframe.e(ix, iy, 0, i) +
                     fs.phi2.at(ix, iy) * fs.coframe.e(ix, iy, 1, i);
  return f;
}

}  // namespace

CoframeField cholesky_coframe(const MetricField& g) {
  require_positive_definite(g);
  CoframeField e(g.grid);
  const int n = g.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double r = std::sqrt(g.g11(ix, iy));
      e.e(ix, iy, 0, 0) = r;
      e.e(ix, iy, 0, 1) = g.g12(ix, iy) / r;
      e.e(ix, iy, 1, 0) = 0.0;
      e.e(ix, iy, 1, 1) = std::sqrt(metric_det(g, ix, iy)) / r;
    }
  return e;
}

CoframeField orthonormal_coframe(const ConformalStructure& m) {
  return cholesky_coframe(representative_metric(m));
}

CoframeField rotate_coframe(const CoframeField& e, const ScalarField& theta) {
  CoframeField out(e.grid);
  const int n = e.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double c = std::cos(theta.at(ix, iy));
      const double s = std::sin(theta.at(ix, iy));
      for (int i = 0; i < 2; ++i) {
        out.e(ix, iy, 0, i) = c * e.e(ix, iy, 0, i) - s * e.e(ix, iy, 1, i);
        out.e(ix, iy, 1, i) = s * e.e(ix, iy, 0, i) + c * e.e(ix, iy, 1, i);
      }
    }
  return out;
}

FrameScalars frame_scalars(const ProjectiveStructure& p, const MetricField& g,
                           const CoframeField& coframe) {
  const TorusGrid& grid = g.grid;
  const int n = grid.n;
  FrameScalars fs{ComplexField(grid), ComplexField(grid), ComplexField(grid),
                  ComplexField(grid), ComplexField(grid), ComplexField(grid),
                  coframe};

  const EndoOneForm A = a_form(p, g);
  const VectorField X = x_g(p.rep, g);
  const CanonicalPair cp = canonical_pair(p, g);
  const SchoutenField S = curvature_ricci_schouten(cp.projective_rep).schouten;
  const ConnectionField lc = levi_civita(g);

  // inverse frame as a field, for spectral differentiation
  DenseField<4> Ef(grid);  // E^i_a at index 2i + a
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      double E[2][2];
      inverse_frame(coframe, ix, iy, E);
      for (int i = 0; i < 2; ++i)
        for (int a = 0; a < 2; ++a) Ef.at(ix, iy, 2 * i + a) = E[i][a];
    }
  const DenseField<4> dE1 = spectral_derivative_components(Ef, 1);
  const DenseField<4> dE2 = spectral_derivative_components(Ef, 2);

  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      double E[2][2];
      inverse_frame(coframe, ix, iy, E);

      // frame components of A
      double Af[2][2][2];
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c) {
            double s = 0.0;
            for (int i = 0; i < 2; ++i)
              for (int j = 0; j < 2; ++j)
                for (int kk = 0; kk < 2; ++kk)
                  s += coframe.e(ix, iy, a, i) * A.comp(ix, iy, i, j, kk) *
                       E[j][b] * E[kk][c];
            Af[a][b][c] = s;
          }
      fs.a.at(ix, iy) = cd(Af[0][0][0], Af[1][1][1]);

      // frame components of β = (X_g)♭
      const double beta[2] = {
          g.g11(ix, iy) * X.at(ix, iy, 0) + g.g12(ix, iy) * X.at(ix, iy, 1),
          g.g12(ix, iy) * X.at(ix, iy, 0) + g.g22(ix, iy) * X.at(ix, iy, 1)};
      const double b[2] = {beta[0] * E[0][0] + beta[1] * E[1][0],
                           beta[0] * E[0][1] + beta[1] * E[1][1]};

      // Levi-Civita connection form in the coframe:
      // ψ^a_{b,c} = e^a_i (∂_j E^i_b + Γ^i_{jk} E^k_b) E^j_c
      double psi11[2], psi21[2];  // ψ¹₁,c and ψ²₁,c
      for (int c = 0; c < 2; ++c) {
        double s11 = 0.0, s21 = 0.0;
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j) {
            double cov = (j == 0 ? dE1 : dE2).at(ix, iy, 2 * i + 0);
            for (int kk = 0; kk < 2; ++kk)
              cov += lc.gamma(ix, iy, i, j, kk) * E[kk][0];
            s11 += coframe.e(ix, iy, 0, i) * cov * E[j][c];
            s21 += coframe.e(ix, iy, 1, i) * cov * E[j][c];
          }
        psi11[c] = s11;
        psi21[c] = s21;
      }
      fs.phi1.at(ix, iy) = cd(psi11[0] - b[0], psi21[0] + b[1]);
      fs.phi2.at(ix, iy) = cd(psi11[1] - b[1], psi21[1] - b[0]);

      // Schouten in the coframe
      double Sf[2][2];
      for (int a = 0; a < 2; ++a)
        for (int bb = 0; bb < 2; ++bb) {
          double s = 0.0;
          for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s += S.s(ix, iy, i, j) * E[i][a] * E[j][bb];
          Sf[a][bb] = s;
        }
      fs.k.at(ix, iy) = cd(-0.5 * (Sf[0][0] + Sf[1][1]),
                           0.5 * (Sf[0][1] - Sf[1][0]));
      // q̄ = −¼[(S₁₁−S₂₂) + i(S₁₂+S₂₁)]
      fs.q_schouten.at(ix, iy) = cd(-0.25 * (Sf[0][0] - Sf[1][1]),
                                    0.25 * (Sf[0][1] + Sf[1][0]));
    }
  }

  // q from the covariant route: ξ = da − 2aφ + aφ̄ in frame components,
  // q = −½(ξ₁ + iξ₂).
  const ComplexField da1 = spectral_derivative(fs.a, 1);
  const ComplexField da2 = spectral_derivative(fs.a, 2);
  const ComplexField f1 = phi_coordinate(fs, 0);
  const ComplexField f2 = phi_coordinate(fs, 1);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      double E[2][2];
      inverse_frame(coframe, ix, iy, E);
      const cd av = fs.a.at(ix, iy);
      const cd xi[2] = {
          da1.at(ix, iy) - 2.0 * av * f1.at(ix, iy) +
              av * std::conj(f1.at(ix, iy)),
          da2.at(ix, iy) - 2.0 * av * f2.at(ix, iy) +
              av * std::conj(f2.at(ix, iy))};
      const cd c1 = xi[0] * E[0][0] + xi[1] * E[1][0];
      const cd c2 = xi[0] * E[0][1] + xi[1] * E[1][1];
      fs.q_covariant.at(ix, iy) = -0.5 * (c1 + cd(0.0, 1.0) * c2);
    }
  return fs;
}

FrameScalars frame_scalars(const ProjectiveStructure& p,
                           const ConformalStructure& m) {
  const MetricField g = representative_metric(m);
  return frame_scalars(p, g, cholesky_coframe(g));
}

CurvatureReport conformal_curvature(const FrameScalars& fs) {
  const TorusGrid& grid = fs.a.grid;
  const int n = grid.n;
  const ComplexField f1 = phi_coordinate(fs, 0);
  const ComplexField f2 = phi_coordinate(fs, 1);
  const ComplexField d1f2 = spectral_derivative(f2, 1);
  const ComplexField d2f1 = spectral_derivative(f1, 2);
  CurvatureReport out{ComplexField(grid), ComplexField(grid), 0.0};
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const cd d = d1f2.at(ix, iy) - d2f1.at(ix, iy);
      out.dphi_coeff.at(ix, iy) = d;
      const double det = coframe_det(fs.coframe, ix, iy);
      // ζ₁∧ζ̄₁ = −2i·ω¹∧ω² = −2i·det(e)·dx¹∧dx²
      const cd ratio = d / (cd(0.0, -2.0) * det);
      out.ratio.at(ix, iy) = ratio;
      const cd kv = fs.k.at(ix, iy);
      const cd target = std::norm(fs.a.at(ix, iy)) + 0.5 * kv - std::conj(kv);
      out.max_residual = std::max(out.max_residual, std::abs(ratio - target));
    }
  return out;
}

ScalarField h_pullback_trace(const FrameScalars& fs) {
  ScalarField out(fs.a.grid);
  for (std::size_t i = 0; i < fs.a.grid.nodes(); ++i)
    out.v[i] = 4.0 * std::norm(fs.a.v[i]) + 2.0 * fs.k.v[i].real();
  return out;
}

EndoOneForm reconstruct_a_form(const ComplexField& a,
                               const CoframeField& coframe) {
  const TorusGrid& grid = a.grid;
  const int n = grid.n;
  EndoOneForm out(grid);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double pr = a.at(ix, iy).real();
      const double s = a.at(ix, iy).imag();
      // frame components forced by trace-freeness, symmetry and g-symmetry
      const double Af[2][2][2] = {{{pr, -s}, {-s, -pr}},
                                  {{-s, -pr}, {-pr, s}}};
      double E[2][2];
      inverse_frame(coframe, ix, iy, E);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int kk = j; kk < 2; ++kk) {
            double v = 0.0;
            for (int aa = 0; aa < 2; ++aa)
              for (int bb = 0; bb < 2; ++bb)
                for (int cc = 0; cc < 2; ++cc)
                  v += E[i][aa] * Af[aa][bb][cc] * coframe.e(ix, iy, bb, j) *
                       coframe.e(ix, iy, cc, kk);
            out.comp(ix, iy, i, j, kk) = v;
          }
    }
  return out;
}

}  // namespace ptor
