#pragma once

#include "ptor/projective.hpp"
#include "ptor/tensor.hpp"

namespace ptor {

/// Orientation-positive coframe e^a_i with Σ_a e^a⊗e^a equal to the chosen
/// representative metric; component index 2a + i (0-based).
struct CoframeField : DenseField<4> {
  using DenseField::DenseField;
  double e(int ix, int iy, int a, int i) const { return at(ix, iy, 2 * a + i); }
  double& e(int ix, int iy, int a, int i) { return at(ix, iy, 2 * a + i); }
};

/// Complex scalars of the frame reduction; phi1/phi2 are the components of
/// the connection form φ in the coframe basis (φ = φ₁ω¹ + φ₂ω²).
struct FrameScalars {
  ComplexField a;
  ComplexField k;
  ComplexField q_schouten;
  ComplexField q_covariant;
  ComplexField phi1;
  ComplexField phi2;
  CoframeField coframe;
};

/// Upper-triangular (Cholesky) coframe of a positive symmetric matrix field:
/// e¹ = (√m11, m12/√m11), e² = (0, √det m/√m11).
CoframeField cholesky_coframe(const MetricField& g);
CoframeField orthonormal_coframe(const ConformalStructure& m);

/// Pointwise rotation ẽ¹ = cosθ·e¹ − sinθ·e², ẽ² = sinθ·e¹ + cosθ·e².
CoframeField rotate_coframe(const CoframeField& e, const ScalarField& theta);

/// Frame reduction with an explicit coframe of g (the coframe must reproduce
/// g); the two-argument form uses the Cholesky coframe of the
/// unit-determinant representative.
FrameScalars frame_scalars(const ProjectiveStructure& p, const MetricField& g,
                           const CoframeField& coframe);
FrameScalars frame_scalars(const ProjectiveStructure& p,
                           const ConformalStructure& m);

struct CurvatureReport {
  /// dφ expressed as ratio·ζ₁∧ζ̄₁ with ζ₁ = ω¹ + iω².
  ComplexField ratio;
  /// coefficient of dφ relative to dx¹∧dx².
  ComplexField dphi_coeff;
  /// max |ratio − (|a|² + ½k − k̄)| over the grid.
  double max_residual;
};

CurvatureReport conformal_curvature(const FrameScalars& fs);

/// tr_g of the pullback of the lift metric: 4|a|² + k + k̄.
ScalarField h_pullback_trace(const FrameScalars& fs);

/// Rebuild the full A-tensor in coordinates from the scalar a and the
/// coframe (2Re(α) with the trace-free g-symmetric frame algebra).
EndoOneForm reconstruct_a_form(const ComplexField& a,
                               const CoframeField& coframe);

}  // namespace ptor
