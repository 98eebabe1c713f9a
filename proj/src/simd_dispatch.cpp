#include "ptor/simd.hpp"

namespace ptor::simd {
namespace {

const Kernels* detect() {
#if defined(PTOR_HAVE_AVX2)
  if (__builtin_cpu_supports("avx2")) return &avx2_kernels();
#endif
  return &scalar_kernels();
}

const Kernels*& current() {
  static const Kernels* k = detect();
  return k;
}

}  // namespace

const Kernels& ops() { return *current(); }

bool select_backend(const std::string& name) {
  if (name == "scalar") {
    current() = &scalar_kernels();
    return true;
  }
#if defined(PTOR_HAVE_AVX2)
  if (name == "avx2" && __builtin_cpu_supports("avx2")) {
    current() = &avx2_kernels();
    return true;
  }
#endif
  return false;
}

}  // namespace ptor::simd
