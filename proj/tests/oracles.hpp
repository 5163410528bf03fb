#pragma once
// Independent reference values used by the tests. Nothing here calls the
// library's own numerics.

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

//! 60-term ascending series in long double with the C library's tgammal.
inline double bessel_series(double nu, double x) {
  if (x == 0.0)
    return nu == 0.0 ? 1.0 : 0.0;
  const long double half = 0.5L * x;
  long double sum = 0.0L;
  for (int k = 0; k < 60; ++k) {
    const long double term = std::pow(half, static_cast<long double>(nu) + 2.0L * k) /
                             (std::tgamma(static_cast<long double>(k) + 1.0L) *
                              std::tgamma(static_cast<long double>(nu) + k + 1.0L));
    sum += (k % 2 == 0) ? term : -term;
  }
  return static_cast<double>(sum);
}

//! Exact eigenvalue on mode m.
inline std::complex<double> eigenvalue(double alpha, int m) {
  return std::polar(1.0, (m >= alpha ? 1.0 : -1.0) * std::numbers::pi * alpha);
}

//! Plane wave e^{i k omega.x}.
inline std::complex<double> plane_wave(double k, double ox, double oy, double x, double y) {
  return std::polar(1.0, k * (ox * x + oy * y));
}

} // namespace oracle
