#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "ptor/blaschke.hpp"
#include "ptor/flow.hpp"
#include "ptor/random_fields.hpp"

using namespace ptor;

namespace {

ConformalStructure perturb(const ConformalStructure& m, std::uint64_t seed,
                           double amplitude) {
  const ScalarField p11 = random_scalar(m.grid, seed, amplitude);
  const ScalarField p12 = random_scalar(m.grid, seed + 1, amplitude);
  const ScalarField p22 = random_scalar(m.grid, seed + 2, amplitude);
  DenseField<3> cand(m.grid);
  for (std::size_t i = 0; i < m.grid.nodes(); ++i) {
    cand.v[3 * i] = m.v[3 * i] * (1.0 + p11.v[i]);
    cand.v[3 * i + 1] = m.v[3 * i + 1] + p12.v[i];
    cand.v[3 * i + 2] = m.v[3 * i + 2] * (1.0 + p22.v[i]);
  }
  return renormalize(cand);
}

}  // namespace

TEST_CASE("renormalize enforces unit determinant and positivity") {
  const TorusGrid grid(16);
  DenseField<3> cand(grid);
  for (std::size_t i = 0; i < grid.nodes(); ++i) {
    cand.v[3 * i] = 3.0;
    cand.v[3 * i + 1] = 0.4;
    cand.v[3 * i + 2] = 1.2;
  }
  const ConformalStructure m = renormalize(cand);
  for (std::size_t i = 0; i < grid.nodes(); ++i)
    CHECK(m.v[3 * i] * m.v[3 * i + 2] - m.v[3 * i + 1] * m.v[3 * i + 1] ==
          doctest::Approx(1.0).epsilon(1e-14));

  cand.v[7 * 3] = -1.0;
  CHECK_THROWS_AS(renormalize(cand), domain_error);
}

TEST_CASE("gradient vanishes exactly where q vanishes") {
  const auto [p, g] = titeica({0.0, 1.0}, {1.0 / std::sqrt(2.0), 0.0}, 32);
  const ConformalStructure m = conformal_class(g);
  const DenseField<3> dir = gradient(p, m);
  double mx = 0.0;
  for (double v : dir.v) mx = std::max(mx, std::abs(v));
  CHECK(mx < 1e-9);
  CHECK(q_l2_norm(p, m) < 1e-9);
}

TEST_CASE("first variation along the descent direction matches finite differences") {
  const TorusGrid grid(32);
  const ProjectiveStructure p{random_connection(grid, 3, 0.05)};
  const ConformalStructure m = random_conformal(grid, 4, 0.05);
  const DenseField<3> dir = gradient(p, m);
  const double ql2 = q_l2_norm(p, m);
  const double predicted = -4.0 * ql2 * ql2;
  REQUIRE(std::abs(predicted) > 1e-10);

  auto shifted_energy = [&](double t) {
    DenseField<3> cand(grid);
    for (std::size_t i = 0; i < cand.v.size(); ++i)
      cand.v[i] = m.v[i] + t * dir.v[i];
    return energy(p, renormalize(cand));
  };
  for (double eps : {1e-3, 3e-4, 1e-4}) {
    const double fd = (shifted_energy(eps) - shifted_energy(-eps)) / (2 * eps);
    CHECK(std::abs(fd - predicted) < 0.02 * std::abs(predicted));
  }
}

TEST_CASE("descent terminates immediately at an extremal class") {
  const auto [p, g] = titeica({0.0, 1.0}, {1.0 / std::sqrt(2.0), 0.0}, 32);
  const FlowTrajectory traj =
      descend(p, conformal_class(g), DescendOptions{});
  REQUIRE(traj.records.size() == 1);
  CHECK(traj.records[0].q_l2 < 1e-6);
  CHECK(traj.records[0].step == 0.0);
}

TEST_CASE("descent restores the extremal class from a perturbed start") {
  const auto [p, g] = titeica({0.0, 1.0}, {1.0 / std::sqrt(2.0), 0.0}, 32);
  const ConformalStructure m0 = perturb(conformal_class(g), 11, 0.05);
  REQUIRE(q_l2_norm(p, m0) > 1e-3);

  const FlowTrajectory traj = descend(p, m0, DescendOptions{});
  REQUIRE(traj.records.size() >= 2);
  for (std::size_t i = 1; i < traj.records.size(); ++i)
    CHECK(traj.records[i].energy <= traj.records[i - 1].energy);
  CHECK(traj.records.back().q_l2 < 1e-6);
  CHECK(q_l2_norm(p, traj.final) < 1e-6);
  CHECK(traj.records.size() <= 500);
}

TEST_CASE("integral identities on random and extremal structures") {
  const std::complex<double> tau{0.2, 1.4};
  const auto [pt, gt] = titeica(tau, {1.0 / std::sqrt(2.0), 0.0}, 32);
  const IdentityReport rt = identity_report(pt, conformal_class(gt));
  CHECK(rt.energy == doctest::Approx(2.0 * tau.imag()).epsilon(1e-10));
  CHECK(std::abs(rt.gauss_bonnet_phi) < 1e-9);
  CHECK(std::abs(rt.gauss_bonnet_omega) < 1e-9);
  CHECK(std::abs(rt.dirichlet_residual) < 1e-9);
  CHECK(rt.euler_char_target == 0.0);

  const TorusGrid grid(64);
  const ProjectiveStructure p{random_connection(grid, 13, 0.05)};
  const ConformalStructure m = random_conformal(grid, 14, 0.05);
  const IdentityReport r = identity_report(p, m);
  CHECK(r.energy > 0.0);
  CHECK(std::abs(r.gauss_bonnet_phi) < 1e-8);
  CHECK(std::abs(r.gauss_bonnet_omega) < 1e-8);
  CHECK(std::abs(r.dirichlet_residual) < 1e-8);
}

TEST_CASE("the energy is a diffeomorphism invariant") {
  const TorusGrid grid(32);
  const ProjectiveStructure p{random_connection(grid, 17, 0.05)};
  const ConformalStructure m = random_conformal(grid, 18, 0.05);

  const double h = grid.spacing();
  CHECK(diffeo_invariance_check(p, m, AffineTorusMap::translation(5 * h, 9 * h)) <
        1e-10);
  CHECK(diffeo_invariance_check(p, m,
                                AffineTorusMap::translation(0.317, 0.201)) <
        1e-9);
  CHECK(diffeo_invariance_check(p, m, AffineTorusMap::shear()) < 1e-9);
}
