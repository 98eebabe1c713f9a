#pragma once

#include <array>

#include "ptor/projective.hpp"
#include "ptor/tensor.hpp"

namespace ptor {

/// Coefficients ℓ₁, ℓ₂ of the flatness obstruction one-form in the chart.
struct LiouvilleField : DenseField<2> {
  using DenseField::DenseField;
};

/// A 3×3 matrix of one-forms at a point; entry(r,c) holds the two
/// dx-components of θ^r_c.
struct CartanMatrix {
  std::array<std::array<std::array<double, 2>, 3>, 3> comp{};
};

/// Assembles the trace-free connection matrix from pointwise data:
/// eta[i][j][c] = (η^i_j)_c, omega[i][c], xi[j], dxi[j][c] the coordinate
/// components of dξ_j, S the 2×2 Schouten value.
CartanMatrix cartan_matrix(const double eta[2][2][2], const double omega[2][2],
                           const double xi[2], const double dxi[2][2],
                           const double S[2][2]);

/// ℓ_j = −(∇₁S_{j2} − ∇₂S_{j1}) for ∇, S of the canonical projective
/// representative; vanishes identically iff the structure is flat.
LiouvilleField liouville_curvature(const ProjectiveStructure& p,
                                   const ConformalStructure& m);

struct FlatnessReport {
  double max_abs_liouville;
  double tol;
  bool flat;
};

FlatnessReport is_flat(const ProjectiveStructure& p,
                       const ConformalStructure& m, double tol);

}  // namespace ptor
