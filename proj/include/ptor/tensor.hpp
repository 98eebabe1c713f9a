#pragma once

#include <array>
#include <vector>

#include "ptor/grid.hpp"

namespace ptor {

/// Index into the symmetric pair storage {11, 12, 22} (0-based j,k).
inline int sym_index(int j, int k) { return j + k; }

/// Riemannian metric g_ij; components g11, g12, g22.
struct MetricField : DenseField<3> {
  using DenseField::DenseField;
  double g11(int ix, int iy) const { return at(ix, iy, 0); }
  double g12(int ix, int iy) const { return at(ix, iy, 1); }
  double g22(int ix, int iy) const { return at(ix, iy, 2); }
};

/// Torsion-free connection; components Γ^i_{jk} for i ∈ {1,2}, jk ∈ {11,12,22}.
struct ConnectionField : DenseField<6> {
  using DenseField::DenseField;
  double gamma(int ix, int iy, int i, int j, int k) const {
    return at(ix, iy, 3 * i + sym_index(j, k));
  }
  double& gamma(int ix, int iy, int i, int j, int k) {
    return at(ix, iy, 3 * i + sym_index(j, k));
  }
};

/// Trace-free symmetric-in-jk difference tensor A^i_{jk}; same layout as a
/// connection.
struct EndoOneForm : DenseField<6> {
  using DenseField::DenseField;
  double comp(int ix, int iy, int i, int j, int k) const {
    return at(ix, iy, 3 * i + sym_index(j, k));
  }
  double& comp(int ix, int iy, int i, int j, int k) {
    return at(ix, iy, 3 * i + sym_index(j, k));
  }
};

/// Full 2×2 (not necessarily symmetric) tensor S_ij; components row-major.
struct SchoutenField : DenseField<4> {
  using DenseField::DenseField;
  double s(int ix, int iy, int i, int j) const { return at(ix, iy, 2 * i + j); }
  double& s(int ix, int iy, int i, int j) { return at(ix, iy, 2 * i + j); }
};

/// Unit-determinant positive symmetric matrix field representing a conformal
/// class; same layout as a metric.
struct ConformalStructure : DenseField<3> {
  using DenseField::DenseField;
};

/// A single point value of a section of S²(T*M)⊗TM in dimension dim.
struct PointTensor {
  int dim;
  std::vector<double> e;  // dense dim³, kept symmetric in the last two slots

  explicit PointTensor(int dim) : dim(dim), e(dim * dim * dim, 0.0) {}
  double& at(int i, int j, int k) { return e[(i * dim + j) * dim + k]; }
  double at(int i, int j, int k) const { return e[(i * dim + j) * dim + k]; }
  void set(int i, int j, int k, double value) {
    at(i, j, k) = value;
    at(i, k, j) = value;
  }
};

/// ν⊗Id + Id⊗ν: v^i_{jk} = ν_j δ^i_k + δ^i_j ν_k.
PointTensor iota(const std::vector<double>& nu);

/// (tr v)_j = v^i_{ji}.
std::vector<double> tensor_trace(const PointTensor& v);

/// v₀ = v − (1/(dim+1))·iota(tr v).
PointTensor trace_free(const PointTensor& v);

double metric_det(const MetricField& g, int ix, int iy);

/// Inverse metric entries (g11, g12, g22 of g⁻¹).
std::array<double, 3> metric_inverse(const MetricField& g, int ix, int iy);

void require_positive_definite(const MetricField& g);

/// Christoffel symbols of g via the Koszul formula with spectral derivatives.
ConnectionField levi_civita(const MetricField& g);

/// ∇^{(g,β)}: Γ^i_{jk} += g_{jk}β^i − δ^i_jβ_k − δ^i_kβ_j with β^i = g^{il}β_l.
ConnectionField conformal_connection(const MetricField& g,
                                     const OneFormField& beta);

struct CurvatureBundle {
  /// R^i_{j12}, components indexed 2·i + j (0-based).
  DenseField<4> riemann;
  SchoutenField ricci;
  SchoutenField schouten;
};

/// Convention R(X,Y)Z = ∇_X∇_YZ − ∇_Y∇_XZ − ∇_{[X,Y]}Z,
/// Ricci(Y,Z) = trace(X ↦ R(X,Y)Z), S = Ric⁺ − ⅓Ric⁻.
CurvatureBundle curvature_ricci_schouten(const ConnectionField& conn);

/// K_g via the general curvature contraction K = ½ g^{ij} S_ij.
ScalarField gauss_curvature(const MetricField& g);

/// K of e^{2u}·g₀(tau): −e^{−2u}·Δ₀u with the flat-lattice Laplacian.
ScalarField gauss_curvature_conformal(const ScalarField& u);

/// Flat reference metric of the lattice {1, tau} on the given grid.
MetricField flat_lattice_metric(const TorusGrid& grid);

MetricField pullback(const MetricField& g, const AffineTorusMap& map);
ConnectionField pullback(const ConnectionField& c, const AffineTorusMap& map);

/// Unit-determinant representative of the class of g.
ConformalStructure conformal_class(const MetricField& g);

/// The conformal structure viewed as its unit-determinant metric.
MetricField representative_metric(const ConformalStructure& m);

template <int N>
DenseField<N> spectral_derivative_components(const DenseField<N>& f,
                                             int axis) {
  DenseField<N> out(f.grid);
  ScalarField comp(f.grid);
  for (int c = 0; c < N; ++c) {
    for (std::size_t i = 0; i < f.grid.nodes(); ++i)
      comp.v[i] = f.v[i * N + c];
    ScalarField d = spectral_derivative(comp, axis);
    for (std::size_t i = 0; i < f.grid.nodes(); ++i)
      out.v[i * N + c] = d.v[i];
  }
  return out;
}

}  // namespace ptor
