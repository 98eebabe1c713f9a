#include "ptor/flow.hpp"

#include <cmath>
#include <string>

#include "ptor/fft.hpp"

namespace ptor {
namespace {

double q_l2_from(const FrameScalars& fs) {
  ScalarField dens(fs.a.grid);
  for (std::size_t i = 0; i < dens.v.size(); ++i)
    dens.v[i] = std::norm(fs.q_covariant.v[i]);
  return std::sqrt(integrate(dens));
}

/// Symmetric perturbation of m generated by the frame function B through
/// delta = [[Re B, Im B], [Im B, -Re B]], pushed to coordinates with the
/// coframe; trace-free with respect to m by construction.
DenseField<3> direction_from_b(const FrameScalars& fs, const ComplexField& B) {
  const int n = B.grid.n;
  DenseField<3> out(B.grid);
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const std::complex<double> b = B.at(ix, iy);
      const double d[2][2] = {{b.real(), b.imag()}, {b.imag(), -b.real()}};
      for (int i = 0; i < 2; ++i)
        for (int j = i; j < 2; ++j) {
          double s = 0.0;
          for (int a = 0; a < 2; ++a)
            for (int c = 0; c < 2; ++c)
              s += fs.coframe.e(ix, iy, a, i) * d[a][c] *
                   fs.coframe.e(ix, iy, c, j);
          out.at(ix, iy, sym_index(i, j)) = s;
        }
    }
  return out;
}

/// (−Δ₀ + 6)⁻¹ applied to B. The energy Hessian along single-frequency
/// frame directions measures as ¼(|2πk|² + O(1)), so this smoothing
/// equalizes the per-mode descent rates and keeps line-search steps O(1).
ComplexField precondition(const ComplexField& B) {
  const TorusGrid& grid = B.grid;
  const double im = grid.tau.imag();
  const double det = im * im;
  std::vector<std::complex<double>> buf = B.v;
  fft::helmholtz_solve(buf, grid.n, std::norm(grid.tau) / det,
                       -grid.tau.real() / det, 1.0 / det, 6.0);
  ComplexField out(grid);
  out.v = std::move(buf);
  return out;
}

}  // namespace

DenseField<3> gradient(const ProjectiveStructure& p,
                       const ConformalStructure& m) {
  const FrameScalars fs = frame_scalars(p, m);
  ComplexField B(m.grid);
  for (std::size_t i = 0; i < m.grid.nodes(); ++i)
    B.v[i] = std::conj(fs.q_covariant.v[i]);
  return direction_from_b(fs, B);
}

double q_l2_norm(const ProjectiveStructure& p, const ConformalStructure& m) {
  return q_l2_from(frame_scalars(p, m));
}

ConformalStructure renormalize(const DenseField<3>& candidate) {
  ConformalStructure out(candidate.grid);
  for (std::size_t i = 0; i < candidate.grid.nodes(); ++i) {
    const double a = candidate.v[3 * i];
    const double b = candidate.v[3 * i + 1];
    const double c = candidate.v[3 * i + 2];
    const double det = a * c - b * b;
    if (a <= 0.0 || det <= 0.0)
      throw domain_error("renormalize: perturbed field not positive definite",
                         static_cast<int>(i));
    const double s = 1.0 / std::sqrt(det);
    out.v[3 * i] = s * a;
    out.v[3 * i + 1] = s * b;
    out.v[3 * i + 2] = s * c;
  }
  return out;
}

FlowTrajectory descend(const ProjectiveStructure& p,
                       const ConformalStructure& m0,
                       const DescendOptions& opts) {
  FlowTrajectory traj{{}, m0};
  ConformalStructure m = m0;
  double e = energy(p, m);
  double t_start = opts.step;
  for (int iter = 0; iter < opts.max_iter; ++iter) {
    const FrameScalars fs = frame_scalars(p, m);
    const double ql2 = q_l2_from(fs);
    if (ql2 < opts.tol_q) {
      traj.records.push_back({e, ql2, 0.0});
      traj.final = m;
      return traj;
    }
    ComplexField B(m.grid);
    for (std::size_t i = 0; i < m.grid.nodes(); ++i)
      B.v[i] = std::conj(fs.q_covariant.v[i]);
    const ComplexField Bs = precondition(B);
    const DenseField<3> dir = direction_from_b(fs, Bs);
    // −f′(0): the first variation along a frame direction B is −4∫Re(q·B)dμ
    ScalarField pairing(m.grid);
    for (std::size_t i = 0; i < m.grid.nodes(); ++i)
      pairing.v[i] = (fs.q_covariant.v[i] * Bs.v[i]).real();
    const double prediction = 4.0 * integrate(pairing);
    double t = t_start;
    bool accepted = false;
    while (t > 1e-14) {
      DenseField<3> cand(m.grid);
      for (std::size_t i = 0; i < cand.v.size(); ++i)
        cand.v[i] = m.v[i] + t * dir.v[i];
      ConformalStructure mn(m.grid);
      try {
        mn = renormalize(cand);
      } catch (const domain_error&) {
        t *= 0.5;
        continue;
      }
      const double en = energy(p, mn);
      if (en <= e - 0.1 * t * prediction) {
        m = mn;
        e = en;
        traj.records.push_back({e, ql2, t});
        // let the next search start above the accepted step so the
        // effective step can grow toward the curvature-limited optimum
        t_start = 2.0 * t;
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      traj.final = m;
      throw stalled_error("descend: no decrease at minimum step (iteration " +
                              std::to_string(iter) + ")",
                          traj);
    }
  }
  traj.records.push_back({e, q_l2_norm(p, m), 0.0});
  traj.final = m;
  return traj;
}

IdentityReport identity_report(const ProjectiveStructure& p,
                               const ConformalStructure& m) {
  const FrameScalars fs = frame_scalars(p, m);
  const CurvatureReport cr = conformal_curvature(fs);
  const TorusGrid& grid = m.grid;

  ScalarField a2(grid), ksum(grid), dphi_im(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    a2.v[i] = 4.0 * std::norm(fs.a.v[i]);
    ksum.v[i] = 2.0 * fs.k.v[i].real();
    dphi_im.v[i] = cr.dphi_coeff.v[i].imag();
  }
  IdentityReport out{};
  out.energy = integrate(a2);
  // i∫dφ: real part of i·(∫Re + i∫Im) = −∫Im
  out.gauss_bonnet_phi = -integrate(dphi_im);
  out.gauss_bonnet_omega = -0.5 * (integrate(ksum) - integrate(a2));
  out.euler_char_target = 0.0;  // 2πχ on the torus
  out.dirichlet_residual =
      out.energy - out.euler_char_target -
      0.5 * (integrate(a2) + integrate(ksum));
  return out;
}

double diffeo_invariance_check(const ProjectiveStructure& p,
                               const ConformalStructure& m,
                               const AffineTorusMap& map) {
  const ProjectiveStructure pp{pullback(p.rep, map)};
  return std::abs(energy(pp, pullback(m, map)) - energy(p, m));
}

ConformalStructure pullback(const ConformalStructure& m,
                            const AffineTorusMap& map) {
  MetricField g = representative_metric(m);
  return conformal_class(pullback(g, map));
}

}  // namespace ptor
