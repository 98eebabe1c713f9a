#pragma once

#include <complex>
#include <vector>

namespace ptor::fft {

/// In-place 2D DFT of an n×n row-major complex array.
/// sign = -1 forward, +1 inverse; the inverse includes the 1/n² factor.
void transform2d(std::vector<std::complex<double>>& data, int n, int sign);

/// Signed integer frequency of row/column index i on an n-point grid,
/// in [-n/2, n/2).
inline int freq(int i, int n) { return i < n - n / 2 ? i : i - n; }

/// Multiply the spectrum in place by the derivative symbol 2πi·k along
/// `axis` (1 = row index, 2 = column index), zeroing the Nyquist mode.
void apply_derivative_symbol(std::vector<std::complex<double>>& spectrum,
                             int n, int axis);

/// Solve (-a11 ∂₁² - 2 a12 ∂₁∂₂ - a22 ∂₂² + sigma) u = f for periodic u.
/// Requires sigma > 0 or mean(f) = 0 (with sigma = 0 the zero mode of u is
/// set to zero).
void helmholtz_solve(std::vector<std::complex<double>>& f, int n, double a11,
                     double a12, double a22, double sigma);

}  // namespace ptor::fft
