#include "abscat/simd/kernels.hpp"

#include <cmath>

namespace abscat::simd {
namespace {

std::complex<double> complex_dot(const std::complex<double> *a,
                                 const std::complex<double> *b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
  }
  return {re, im};
}

std::complex<double> weighted_sum(const double *w,
                                  const std::complex<double> *z,
                                  std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    re += w[k] * z[k].real();
    im += w[k] * z[k].imag();
  }
  return {re, im};
}

void backproject_row(const BackprojectRow &a) {
  const double inv_dp = 1.0 / a.dp;
  const double base = a.y * a.cos_phi - a.p_first;
  const double last = static_cast<double>(a.nq) - 2.0;
  for (std::size_t i = 0; i < a.nx; ++i) {
    const double x = a.x_first + static_cast<double>(i) * a.dx;
    const double u = (base - x * a.sin_phi) * inv_dp;
    const double fl = std::floor(u);
    if (fl < 0.0 || fl > last)
      continue;
    const auto k = static_cast<std::size_t>(fl);
    const double t = u - fl;
    a.row[i] += a.proj[k] + t * (a.proj[k + 1] - a.proj[k]);
  }
}

} // namespace

const KernelTable &scalar_kernels() {
  static const KernelTable table{complex_dot, weighted_sum, backproject_row};
  return table;
}

} // namespace abscat::simd
