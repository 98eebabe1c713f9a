#include "ptor/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include "ptor/errors.hpp"

namespace ptor::fft {
namespace {

std::mutex plan_mutex;

fftw_plan plan_for(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> cache;
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto it = cache.find({n, sign});
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> dummy(static_cast<std::size_t>(n) * n);
  auto* ptr = reinterpret_cast<fftw_complex*>(dummy.data());
  fftw_plan p = fftw_plan_dft_2d(n, n, ptr, ptr, sign,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  cache[{n, sign}] = p;
  return p;
}

}  // namespace

void transform2d(std::vector<std::complex<double>>& data, int n, int sign) {
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  if (data.size() != nn) throw invalid_field_error("transform2d: size mismatch");
  fftw_plan p = plan_for(n, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD);
  auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(p, ptr, ptr);
  if (sign > 0) {
    const double scale = 1.0 / static_cast<double>(nn);
    for (auto& z : data) z *= scale;
  }
}

void apply_derivative_symbol(std::vector<std::complex<double>>& spectrum,
                             int n, int axis) {
  const double twopi = 2.0 * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int k = axis == 1 ? freq(i, n) : freq(j, n);
      std::complex<double>& z = spectrum[static_cast<std::size_t>(i) * n + j];
      if (2 * k == -n)
        z = 0.0;  // Nyquist mode: derivative coefficient zeroed
      else
        z *= std::complex<double>(0.0, twopi * k);
    }
  }
}

void helmholtz_solve(std::vector<std::complex<double>>& f, int n, double a11,
                     double a12, double a22, double sigma) {
  transform2d(f, n, -1);
  const double twopi = 2.0 * std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double k1 = twopi * freq(i, n);
      const double k2 = twopi * freq(j, n);
      const double denom =
          a11 * k1 * k1 + 2.0 * a12 * k1 * k2 + a22 * k2 * k2 + sigma;
      std::complex<double>& z = f[static_cast<std::size_t>(i) * n + j];
      if (denom == 0.0)
        z = 0.0;  // zero mode with sigma = 0: fix the mean to zero
      else
        z /= denom;
    }
  }
  transform2d(f, n, +1);
}

}  // namespace ptor::fft
