#pragma once
// Data-parallel inner loops. Every kernel has a scalar reference version and,
// on x86-64, an AVX2/FMA version chosen at runtime from CPUID. The two must
// agree to rounding; tests/test_simd.cpp checks that on random inputs.

#include <complex>
#include <cstddef>
#include <string_view>

namespace abscat::simd {

enum class Backend { Scalar, Avx2 };

//! One image row of parallel-beam back-projection.
struct BackprojectRow {
  double *row = nullptr;     //!< accumulated in place, nx values
  std::size_t nx = 0;
  double x_first = 0.0;      //!< x1 of the first pixel centre
  double dx = 0.0;
  double y = 0.0;            //!< x2 of the row
  double cos_phi = 1.0;
  double sin_phi = 0.0;
  const double *proj = nullptr; //!< filtered projection, nq samples
  std::size_t nq = 0;
  double p_first = 0.0;      //!< detector offset of proj[0]
  double dp = 1.0;
};

struct KernelTable {
  //! sum_k a[k] * b[k]
  std::complex<double> (*complex_dot)(const std::complex<double> *a,
                                      const std::complex<double> *b,
                                      std::size_t n);
  //! sum_k w[k] * z[k] with real weights
  std::complex<double> (*weighted_sum)(const double *w,
                                       const std::complex<double> *z,
                                       std::size_t n);
  //! row[i] += linear interpolation of proj at p = -x_i sin(phi) + y cos(phi);
  //! samples with floor index outside [0, nq-2] contribute 0.
  void (*backproject_row)(const BackprojectRow &args);
};

bool backend_available(Backend b);
//! Backend picked on first use: AVX2 when the CPU reports avx2+fma, unless the
//! environment variable ABSCAT_SIMD=scalar forces the reference path.
Backend active_backend();
//! Overrides the runtime choice; throws if the backend is unavailable.
void force_backend(Backend b);
const KernelTable &kernels();
const KernelTable &kernels(Backend b);
std::string_view backend_name(Backend b);

} // namespace abscat::simd
