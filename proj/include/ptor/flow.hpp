#pragma once

#include <vector>

#include "ptor/frames.hpp"
#include "ptor/projective.hpp"

namespace ptor {

struct FlowRecord {
  double energy;
  double q_l2;
  double step;
};

struct FlowTrajectory {
  std::vector<FlowRecord> records;
  ConformalStructure final;
};

/// Line search found no energy decrease at the minimum step.
struct stalled_error : error {
  FlowTrajectory trajectory;
  stalled_error(const std::string& msg, FlowTrajectory traj)
      : error(msg), trajectory(std::move(traj)) {}
};

struct DescendOptions {
  double step = 0.1;
  int max_iter = 500;
  double tol_q = 1e-6;
};

struct IdentityReport {
  double energy;
  double gauss_bonnet_phi;
  double gauss_bonnet_omega;
  double dirichlet_residual;
  double euler_char_target;
};

/// Steepest-descent direction for the energy over conformal structures:
/// frame function B = q̄ converted to a symmetric trace-free (w.r.t. m)
/// coordinate perturbation of m; the energy slope along it is −4∫|q|²dμ.
DenseField<3> gradient(const ProjectiveStructure& p,
                       const ConformalStructure& m);

/// √∫|q|² dμ of the covariant-route q field.
double q_l2_norm(const ProjectiveStructure& p, const ConformalStructure& m);

/// Projects a perturbed positive symmetric matrix field back to det = 1.
ConformalStructure renormalize(const DenseField<3>& candidate);

FlowTrajectory descend(const ProjectiveStructure& p,
                       const ConformalStructure& m0,
                       const DescendOptions& opts);

IdentityReport identity_report(const ProjectiveStructure& p,
                               const ConformalStructure& m);

double diffeo_invariance_check(const ProjectiveStructure& p,
                               const ConformalStructure& m,
                               const AffineTorusMap& map);

ConformalStructure pullback(const ConformalStructure& m,
                            const AffineTorusMap& map);

}  // namespace ptor
