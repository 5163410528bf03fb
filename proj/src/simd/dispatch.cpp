#include "abscat/simd/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace abscat::simd {

const KernelTable &scalar_kernels();
#if defined(ABSCAT_HAVE_AVX2_TU)
const KernelTable &avx2_kernels();
#endif

namespace {

bool cpu_has_avx2() {
#if defined(ABSCAT_HAVE_AVX2_TU) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  if (const char *env = std::getenv("ABSCAT_SIMD")) {
    if (std::string(env) == "scalar")
      return Backend::Scalar;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<int> &forced() {
  static std::atomic<int> value{-1};
  return value;
}

} // namespace

bool backend_available(Backend b) {
  return b == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() {
  const int f = forced().load();
  if (f >= 0)
    return static_cast<Backend>(f);
  static const Backend detected = detect();
  return detected;
}

void force_backend(Backend b) {
  if (!backend_available(b))
    throw std::invalid_argument("SIMD backend not available on this CPU");
  forced().store(static_cast<int>(b));
}

const KernelTable &kernels(Backend b) {
#if defined(ABSCAT_HAVE_AVX2_TU)
  if (b == Backend::Avx2) {
    if (!cpu_has_avx2())
      throw std::invalid_argument("AVX2 kernels requested on a CPU without AVX2");
    return avx2_kernels();
  }
#else
  if (b == Backend::Avx2)
    throw std::invalid_argument("AVX2 kernels not compiled in");
#endif
  return scalar_kernels();
}

const KernelTable &kernels() { return kernels(active_backend()); }

std::string_view backend_name(Backend b) {
  return b == Backend::Avx2 ? "avx2" : "scalar";
}

} // namespace abscat::simd
