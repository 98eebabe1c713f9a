#pragma once

#include <utility>

#include "ptor/frames.hpp"
#include "ptor/projective.hpp"

namespace ptor {

/// C = c·dz³ in the flat chart z = x¹ + τx².
struct CubicDifferential {
  ComplexField c;
};

struct WangSolution {
  ScalarField u;
  double residual;
  int iterations;
};

/// Solves Δ₀u = e^{2u} − 2|c|²₀e^{−4u} (K_g = −1 + 2|C|²_g for g = e^{2u}g₀)
/// by damped Newton with a spectral Laplacian.
WangSolution wang_solve(const CubicDifferential& C, double tol, int max_iter);

/// Coframe e¹ = e^u(dx¹ + Re(τ)dx²), e² = e^u·Im(τ)·dx² of e^{2u}g₀.
CoframeField conformal_coframe(const ScalarField& u);

/// ∇ = ∇^g + 2Re(α) with g the Blaschke metric of u and α the frame
/// realization of C (a = c·e^{−3u} in the conformal coframe).
ProjectiveStructure convex_connection(const WangSolution& w,
                                      const CubicDifferential& C);

/// Constant-coefficient convex structure for constant cubic coefficient c.
std::pair<ProjectiveStructure, MetricField> titeica(std::complex<double> tau,
                                                    std::complex<double> c,
                                                    int n = 64);

/// Max-norm of the antisymmetric part of the Ricci tensor of the canonical
/// conformal representative; ≈ 0 iff m is closed for p.
double closedness_check(const ProjectiveStructure& p,
                        const ConformalStructure& m);

}  // namespace ptor
