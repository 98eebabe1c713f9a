#pragma once

#include <cstddef>
#include <string>

namespace ptor::simd {

// Elementwise kernels over contiguous double arrays. Each backend must agree
// with the scalar reference to within pairwise-summation tolerance (1e-13
// relative) on the reductions and bit-exactly on the maps without fma
// contraction differences larger than 1 ulp per element.
struct Kernels {
  void (*add)(const double* a, const double* b, double* out, std::size_t n);
  void (*sub)(const double* a, const double* b, double* out, std::size_t n);
  void (*mul)(const double* a, const double* b, double* out, std::size_t n);
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  void (*scale)(double alpha, const double* x, double* out, std::size_t n);
  // interleaved (re,im) complex elementwise product: out = a*b
  void (*cmul)(const double* a, const double* b, double* out, std::size_t n);
  double (*dot)(const double* a, const double* b, std::size_t n);
  double (*sum)(const double* a, std::size_t n);
  const char* name;
};

const Kernels& scalar_kernels();
#if defined(PTOR_HAVE_AVX2)
const Kernels& avx2_kernels();
#endif

/// Best backend for this machine, chosen once at startup.
const Kernels& ops();

/// Force a backend by name ("scalar", "avx2"); returns false if unavailable.
bool select_backend(const std::string& name);

}  // namespace ptor::simd
