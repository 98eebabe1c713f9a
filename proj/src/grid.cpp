#include "ptor/grid.hpp"

#include <cmath>
#include <numbers>
#include <thread>

#include "ptor/fft.hpp"
#include "ptor/simd.hpp"

namespace ptor {
namespace {

int g_threads = 1;

bool is_node_map(const TorusGrid& grid, const AffineTorusMap& map, int& s1,
                 int& s2) {
  const double t1 = map.b1 * grid.n;
  const double t2 = map.b2 * grid.n;
  const double r1 = std::round(t1);
  const double r2 = std::round(t2);
  if (std::abs(t1 - r1) > 1e-12 || std::abs(t2 - r2) > 1e-12) return false;
  s1 = static_cast<int>(r1);
  s2 = static_cast<int>(r2);
  return true;
}

int wrap(long i, int n) {
  long r = i % n;
  if (r < 0) r += n;
  return static_cast<int>(r);
}

/// Core resample of one complex-valued component array.
void resample_complex(const TorusGrid& grid,
                      const std::vector<std::complex<double>>& in,
                      std::vector<std::complex<double>>& out,
                      const AffineTorusMap& map) {
  const int n = grid.n;
  int s1 = 0, s2 = 0;
  if (is_node_map(grid, map, s1, s2)) {
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        const int jx = wrap(static_cast<long>(map.m11) * ix +
                                static_cast<long>(map.m12) * iy + s1,
                            n);
        const int jy = wrap(static_cast<long>(map.m21) * ix +
                                static_cast<long>(map.m22) * iy + s2,
                            n);
        out[static_cast<std::size_t>(ix) * n + iy] =
            in[static_cast<std::size_t>(jx) * n + jy];
      }
    }
    return;
  }
  // Spectral path: f(Mx+b) = Σ_k f̂_k e^{2πik·b} e^{2πi(Mᵀk)·x}; Mᵀ is a
  // bijection mod n, so this is a spectrum permutation with phases.
  std::vector<std::complex<double>> spec(in);
  fft::transform2d(spec, n, -1);
  std::vector<std::complex<double>> mapped(grid.nodes(), 0.0);
  const double twopi = 2.0 * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k1 = fft::freq(i, n);
      const int k2 = fft::freq(j, n);
      const int m1 = wrap(static_cast<long>(map.m11) * k1 +
                              static_cast<long>(map.m21) * k2,
                          n);
      const int m2 = wrap(static_cast<long>(map.m12) * k1 +
                              static_cast<long>(map.m22) * k2,
                          n);
      const double phase = twopi * (k1 * map.b1 + k2 * map.b2);
      mapped[static_cast<std::size_t>(m1) * n + m2] =
          spec[static_cast<std::size_t>(i) * n + j] *
          std::complex<double>(std::cos(phase), std::sin(phase));
    }
  }
  fft::transform2d(mapped, n, +1);
  out = std::move(mapped);
}

void check_map(const AffineTorusMap& map) {
  if (map.det() != 1)
    throw orientation_error("resample: map determinant must be +1");
}

}  // namespace

TorusGrid::TorusGrid(int n, std::complex<double> tau) : n(n), tau(tau) {
  if (n < 8 || n % 2 != 0)
    throw invalid_field_error("TorusGrid: n must be even and >= 8");
  if (tau.imag() <= 0.0)
    throw invalid_field_error("TorusGrid: Im(tau) must be positive");
}

void require_finite(const double* data, std::size_t count, const char* what) {
  for (std::size_t i = 0; i < count; ++i)
    if (!std::isfinite(data[i]))
      throw invalid_field_error(std::string(what) + ": non-finite value");
}

ScalarField spectral_derivative(const ScalarField& f, int axis) {
  require_finite(f.v.data(), f.v.size(), "spectral_derivative");
  const int n = f.grid.n;
  std::vector<std::complex<double>> buf(f.v.begin(), f.v.end());
  fft::transform2d(buf, n, -1);
  fft::apply_derivative_symbol(buf, n, axis);
  fft::transform2d(buf, n, +1);
  ScalarField out(f.grid);
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] = buf[i].real();
  return out;
}

ComplexField spectral_derivative(const ComplexField& f, int axis) {
  require_finite(reinterpret_cast<const double*>(f.v.data()), 2 * f.v.size(),
                 "spectral_derivative");
  const int n = f.grid.n;
  ComplexField out(f.grid);
  out.v = f.v;
  fft::transform2d(out.v, n, -1);
  fft::apply_derivative_symbol(out.v, n, axis);
  fft::transform2d(out.v, n, +1);
  return out;
}

double integrate(const ScalarField& density) {
  require_finite(density.v.data(), density.v.size(), "integrate");
  const double h = density.grid.spacing();
  return h * h * simd::ops().sum(density.v.data(), density.v.size());
}

ScalarField resample(const ScalarField& f, const AffineTorusMap& map) {
  check_map(map);
  ScalarField out(f.grid);
  resample_components(f.grid, f.v.data(), out.v.data(), 1, map);
  return out;
}

ComplexField resample(const ComplexField& f, const AffineTorusMap& map) {
  check_map(map);
  ComplexField out(f.grid);
  resample_complex(f.grid, f.v, out.v, map);
  return out;
}

VectorField resample(const VectorField& f, const AffineTorusMap& map) {
  check_map(map);
  VectorField out(f.grid);
  resample_components(f.grid, f.v.data(), out.v.data(), 2, map);
  return out;
}

OneFormField resample(const OneFormField& f, const AffineTorusMap& map) {
  check_map(map);
  OneFormField out(f.grid);
  resample_components(f.grid, f.v.data(), out.v.data(), 2, map);
  return out;
}

void resample_components(const TorusGrid& grid, const double* in, double* out,
                         int ncomp, const AffineTorusMap& map) {
  check_map(map);
  const int n = grid.n;
  int s1 = 0, s2 = 0;
  if (is_node_map(grid, map, s1, s2)) {
    for (int ix = 0; ix < n; ++ix) {
      for (int iy = 0; iy < n; ++iy) {
        const int jx = wrap(static_cast<long>(map.m11) * ix +
                                static_cast<long>(map.m12) * iy + s1,
                            n);
        const int jy = wrap(static_cast<long>(map.m21) * ix +
                                static_cast<long>(map.m22) * iy + s2,
                            n);
        const double* src =
            in + (static_cast<std::size_t>(jx) * n + jy) * ncomp;
        double* dst = out + (static_cast<std::size_t>(ix) * n + iy) * ncomp;
        for (int c = 0; c < ncomp; ++c) dst[c] = src[c];
      }
    }
    return;
  }
  std::vector<std::complex<double>> comp(grid.nodes()), res(grid.nodes());
  for (int c = 0; c < ncomp; ++c) {
    for (std::size_t i = 0; i < grid.nodes(); ++i)
      comp[i] = in[i * ncomp + c];
    resample_complex(grid, comp, res, map);
    for (std::size_t i = 0; i < grid.nodes(); ++i)
      out[i * ncomp + c] = res[i].real();
  }
}

int num_threads() { return g_threads; }

void set_num_threads(int k) { g_threads = k < 1 ? 1 : k; }

void parallel_for(int count, const std::function<void(int)>& fn) {
  const int nt = g_threads;
  if (nt <= 1 || count < 2 * nt) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(nt);
  const int chunk = (count + nt - 1) / nt;
  for (int t = 0; t < nt; ++t) {
    const int lo = t * chunk;
    const int hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (int i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

}  // namespace ptor
