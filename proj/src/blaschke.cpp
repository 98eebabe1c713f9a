#include "ptor/blaschke.hpp"

#include <cmath>
#include <string>

#include "ptor/errors.hpp"
#include "ptor/fft.hpp"
#include "ptor/simd.hpp"

namespace ptor {
namespace {

struct LatticeLaplacian {
  double i11, i12, i22;  // g₀⁻¹ entries

  explicit LatticeLaplacian(const TorusGrid& grid) {
    const double im = grid.tau.imag();
    const double det = im * im;
    i11 = std::norm(grid.tau) / det;
    i12 = -grid.tau.real() / det;
    i22 = 1.0 / det;
  }

  ScalarField apply(const ScalarField& u) const {
    const ScalarField u1 = spectral_derivative(u, 1);
    const ScalarField u2 = spectral_derivative(u, 2);
    const ScalarField u11 = spectral_derivative(u1, 1);
    const ScalarField u12 = spectral_derivative(u1, 2);
    const ScalarField u22 = spectral_derivative(u2, 2);
    ScalarField out(u.grid);
    for (std::size_t i = 0; i < out.v.size(); ++i)
      out.v[i] = i11 * u11.v[i] + 2.0 * i12 * u12.v[i] + i22 * u22.v[i];
    return out;
  }
};

/// Preconditioned CG for (−Δ₀ + w)x = rhs with preconditioner
/// (−Δ₀ + mean w)⁻¹.
ScalarField solve_newton_step(const LatticeLaplacian& lap,
                              const ScalarField& w, const ScalarField& rhs) {
  const TorusGrid& grid = rhs.grid;
  const std::size_t nn = grid.nodes();
  const double wbar =
      simd::ops().sum(w.v.data(), nn) / static_cast<double>(nn);

  auto apply_op = [&](const ScalarField& x) {
    ScalarField ax = lap.apply(x);
    for (std::size_t i = 0; i < nn; ++i) ax.v[i] = -ax.v[i] + w.v[i] * x.v[i];
    return ax;
  };
  auto apply_prec = [&](const ScalarField& r) {
    std::vector<std::complex<double>> buf(r.v.begin(), r.v.end());
    fft::helmholtz_solve(buf, grid.n, lap.i11, lap.i12, lap.i22, wbar);
    ScalarField z(grid);
    for (std::size_t i = 0; i < nn; ++i) z.v[i] = buf[i].real();
    return z;
  };

  ScalarField x(grid);
  ScalarField r = rhs;
  ScalarField z = apply_prec(r);
  ScalarField p = z;
  double rz = simd::ops().dot(r.v.data(), z.v.data(), nn);
  const double rhs_norm =
      std::sqrt(simd::ops().dot(rhs.v.data(), rhs.v.data(), nn));
  for (int it = 0; it < 400; ++it) {
    const ScalarField ap = apply_op(p);
    const double pap = simd::ops().dot(p.v.data(), ap.v.data(), nn);
    const double alpha = rz / pap;
    simd::ops().axpy(alpha, p.v.data(), x.v.data(), nn);
    simd::ops().axpy(-alpha, ap.v.data(), r.v.data(), nn);
    const double rnorm =
        std::sqrt(simd::ops().dot(r.v.data(), r.v.data(), nn));
    if (rnorm <= 1e-14 * (rhs_norm + 1.0)) break;
    z = apply_prec(r);
    const double rz_new = simd::ops().dot(r.v.data(), z.v.data(), nn);
    const double beta = rz_new / rz;
    rz = rz_new;
    for (std::size_t i = 0; i < nn; ++i) p.v[i] = z.v[i] + beta * p.v[i];
  }
  return x;
}

double max_abs(const std::vector<double>& v) {
  double mx = 0.0;
  for (double x : v) mx = std::max(mx, std::abs(x));
  return mx;
}

}  // namespace

WangSolution wang_solve(const CubicDifferential& C, double tol, int max_iter) {
  const TorusGrid& grid = C.c.grid;
  const std::size_t nn = grid.nodes();
  std::vector<double> c2(nn);
  double c2_mean = 0.0, c2_max = 0.0;
  for (std::size_t i = 0; i < nn; ++i) {
    c2[i] = std::norm(C.c.v[i]);
    c2_mean += c2[i];
    c2_max = std::max(c2_max, c2[i]);
  }
  c2_mean /= static_cast<double>(nn);
  if (c2_max == 0.0)
    throw no_solution_error(
        "wang_solve: vanishing cubic term has no periodic solution");

  const LatticeLaplacian lap(grid);
  ScalarField u(grid);
  const double u0 = std::log(2.0 * c2_mean) / 6.0;
  for (double& x : u.v) x = u0;

  auto pde_residual = [&](const ScalarField& uu) {
    ScalarField f = lap.apply(uu);
    for (std::size_t i = 0; i < nn; ++i)
      f.v[i] -= std::exp(2.0 * uu.v[i]) - 2.0 * c2[i] * std::exp(-4.0 * uu.v[i]);
    return f;
  };

  ScalarField F = pde_residual(u);
  double res = max_abs(F.v);
  int iter = 0;
  while (res > tol && iter < max_iter) {
    ScalarField w(grid);
    for (std::size_t i = 0; i < nn; ++i)
      w.v[i] = 2.0 * std::exp(2.0 * u.v[i]) +
               8.0 * c2[i] * std::exp(-4.0 * u.v[i]);
    // J = Δ₀ − w; solve Jδ = −F as (−Δ₀ + w)δ = F
    const ScalarField delta = solve_newton_step(lap, w, F);
    double t = 1.0;
    ScalarField trial(grid);
    double res_new = res;
    for (int halvings = 0; halvings < 40; ++halvings) {
      for (std::size_t i = 0; i < nn; ++i)
        trial.v[i] = u.v[i] + t * delta.v[i];
      const ScalarField Ft = pde_residual(trial);
      res_new = max_abs(Ft.v);
      if (res_new < res) {
        u = trial;
        F = Ft;
        break;
      }
      t *= 0.5;
    }
    ++iter;
    if (res_new >= res)
      throw convergence_error(
          "wang_solve: damped Newton stalled at residual " +
          std::to_string(res) + " after " + std::to_string(iter) +
          " iterations");
    res = res_new;
  }
  if (res > tol)
    throw convergence_error("wang_solve: residual " + std::to_string(res) +
                            " above tolerance after " + std::to_string(iter) +
                            " iterations");
  return {u, res, iter};
}

CoframeField conformal_coframe(const ScalarField& u) {
  const TorusGrid& grid = u.grid;
  CoframeField e(grid);
  const double re = grid.tau.real();
  const double im = grid.tau.imag();
  const int n = grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy) {
      const double s = std::exp(u.at(ix, iy));
      e.e(ix, iy, 0, 0) = s;
      e.e(ix, iy, 0, 1) = s * re;
      e.e(ix, iy, 1, 0) = 0.0;
      e.e(ix, iy, 1, 1) = s * im;
    }
  return e;
}

ProjectiveStructure convex_connection(const WangSolution& w,
                                      const CubicDifferential& C) {
  const TorusGrid& grid = w.u.grid;
  MetricField g = flat_lattice_metric(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double s = std::exp(2.0 * w.u.v[i]);
    g.v[3 * i] *= s;
    g.v[3 * i + 1] *= s;
    g.v[3 * i + 2] *= s;
  }
  ComplexField a(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i)
    a.v[i] = C.c.v[i] * std::exp(-3.0 * w.u.v[i]);
  const EndoOneForm A = reconstruct_a_form(a, conformal_coframe(w.u));
  ConnectionField rep = levi_civita(g);
  for (std::size_t i = 0; i < rep.v.size(); ++i) rep.v[i] += A.v[i];
  return ProjectiveStructure{rep};
}

std::pair<ProjectiveStructure, MetricField> titeica(std::complex<double> tau,
                                                    std::complex<double> c,
                                                    int n) {
  if (c == std::complex<double>(0.0, 0.0))
    throw no_solution_error("titeica: cubic coefficient must be nonzero");
  const TorusGrid grid(n, tau);
  CubicDifferential C{ComplexField(grid)};
  for (auto& z : C.c.v) z = c;
  const WangSolution w = wang_solve(C, 1e-12, 50);
  MetricField g = flat_lattice_metric(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    const double s = std::exp(2.0 * w.u.v[i]);
    g.v[3 * i] *= s;
    g.v[3 * i + 1] *= s;
    g.v[3 * i + 2] *= s;
  }
  return {convex_connection(w, C), g};
}

double closedness_check(const ProjectiveStructure& p,
                        const ConformalStructure& m) {
  const MetricField g = representative_metric(m);
  const SchoutenField ric =
      curvature_ricci_schouten(canonical_pair(p, g).conformal_rep).ricci;
  double mx = 0.0;
  const int n = g.grid.n;
  for (int ix = 0; ix < n; ++ix)
    for (int iy = 0; iy < n; ++iy)
      mx = std::max(mx, 0.5 * std::abs(ric.s(ix, iy, 0, 1) -
                                       ric.s(ix, iy, 1, 0)));
  return mx;
}

}  // namespace ptor
