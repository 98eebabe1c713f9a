#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

#include "ptor/errors.hpp"

namespace ptor {

/// Periodic grid on the unit torus [0,1)² with n nodes per axis and a
/// reference-lattice modulus tau (Im tau > 0).
struct TorusGrid {
  int n;
  std::complex<double> tau;

  explicit TorusGrid(int n, std::complex<double> tau = {0.0, 1.0});

  double spacing() const { return 1.0 / n; }
  std::size_t nodes() const { return static_cast<std::size_t>(n) * n; }
  double x1(int ix) const { return ix * spacing(); }
  double x2(int iy) const { return iy * spacing(); }
  bool operator==(const TorusGrid&) const = default;
};

/// Dense per-node storage with NComp real components, row-major in (x¹,x²),
/// components innermost (the PGFB layout).
template <int NComp>
struct DenseField {
  TorusGrid grid;
  std::vector<double> v;

  explicit DenseField(const TorusGrid& g)
      : grid(g), v(g.nodes() * NComp, 0.0) {}

  static constexpr int ncomp = NComp;
  double& at(int ix, int iy, int c = 0) {
    return v[(static_cast<std::size_t>(ix) * grid.n + iy) * NComp + c];
  }
  double at(int ix, int iy, int c = 0) const {
    return v[(static_cast<std::size_t>(ix) * grid.n + iy) * NComp + c];
  }
};

struct ScalarField : DenseField<1> {
  using DenseField::DenseField;
};

struct VectorField : DenseField<2> {
  using DenseField::DenseField;
};

struct OneFormField : DenseField<2> {
  using DenseField::DenseField;
};

struct ComplexField {
  TorusGrid grid;
  std::vector<std::complex<double>> v;

  explicit ComplexField(const TorusGrid& g) : grid(g), v(g.nodes(), 0.0) {}

  std::complex<double>& at(int ix, int iy) {
    return v[static_cast<std::size_t>(ix) * grid.n + iy];
  }
  std::complex<double> at(int ix, int iy) const {
    return v[static_cast<std::size_t>(ix) * grid.n + iy];
  }
};

/// x ↦ Mx + b mod 1 with integer matrix M.
struct AffineTorusMap {
  int m11 = 1, m12 = 0, m21 = 0, m22 = 1;
  double b1 = 0.0, b2 = 0.0;

  int det() const { return m11 * m22 - m12 * m21; }
  static AffineTorusMap identity() { return {}; }
  static AffineTorusMap translation(double b1, double b2) {
    return {1, 0, 0, 1, b1, b2};
  }
  static AffineTorusMap shear() { return {1, 1, 0, 1, 0.0, 0.0}; }
};

void require_finite(const double* data, std::size_t count, const char* what);

/// Derivative of the trigonometric interpolant along axis 1 (x¹) or 2 (x²);
/// the Nyquist mode's derivative coefficient is zeroed.
ScalarField spectral_derivative(const ScalarField& f, int axis);
ComplexField spectral_derivative(const ComplexField& f, int axis);

/// h²·Σ over nodes of a 2-form coefficient relative to dx¹∧dx².
double integrate(const ScalarField& density);

/// f∘map; exact index permutation when the map sends nodes to nodes,
/// otherwise evaluated through the trigonometric interpolant.
/// Rejects det(M) ≠ +1.
ScalarField resample(const ScalarField& f, const AffineTorusMap& map);
ComplexField resample(const ComplexField& f, const AffineTorusMap& map);
VectorField resample(const VectorField& f, const AffineTorusMap& map);
OneFormField resample(const OneFormField& f, const AffineTorusMap& map);

/// Componentwise resample for any dense field; used by tensor pullbacks.
void resample_components(const TorusGrid& grid, const double* in, double* out,
                         int ncomp, const AffineTorusMap& map);

int num_threads();
void set_num_threads(int k);

/// Runs fn(i) for i in [0, count), split across the configured thread count.
void parallel_for(int count, const std::function<void(int)>& fn);

}  // namespace ptor
