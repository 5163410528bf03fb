// Compiled with -mavx2 -mfma; only reached after a CPUID check.
#include "abscat/simd/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace abscat::simd {
namespace {

double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

std::complex<double> complex_dot(const std::complex<double> *a,
                                 const std::complex<double> *b, std::size_t n) {
  const auto *pa = reinterpret_cast<const double *>(a);
  const auto *pb = reinterpret_cast<const double *>(b);
  // rr lanes: ar*br, ai*bi ; ri lanes: ar*bi, ai*br
  __m256d rr = _mm256_setzero_pd();
  __m256d ri = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 2 <= n; k += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * k);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * k);
    rr = _mm256_fmadd_pd(va, vb, rr);
    ri = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0b0101), ri);
  }
  alignas(32) double r[4];
  _mm256_store_pd(r, rr);
  double re = (r[0] + r[2]) - (r[1] + r[3]);
  double im = hsum(ri);
  for (; k < n; ++k) {
    re += a[k].real() * b[k].real() - a[k].imag() * b[k].imag();
    im += a[k].real() * b[k].imag() + a[k].imag() * b[k].real();
  }
  return {re, im};
}

std::complex<double> weighted_sum(const double *w,
                                  const std::complex<double> *z,
                                  std::size_t n) {
  const auto *pz = reinterpret_cast<const double *>(z);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    // [w0 w0 w1 w1], [w2 w2 w3 w3]
    const __m256d wv = _mm256_loadu_pd(w + k);
    const __m256d w01 = _mm256_permute4x64_pd(wv, 0b01010000);
    const __m256d w23 = _mm256_permute4x64_pd(wv, 0b11111010);
    acc0 = _mm256_fmadd_pd(w01, _mm256_loadu_pd(pz + 2 * k), acc0);
    acc1 = _mm256_fmadd_pd(w23, _mm256_loadu_pd(pz + 2 * k + 4), acc1);
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, _mm256_add_pd(acc0, acc1));
  double re = s[0] + s[2];
  double im = s[1] + s[3];
  for (; k < n; ++k) {
    re += w[k] * z[k].real();
    im += w[k] * z[k].imag();
  }
  return {re, im};
}

void backproject_row(const BackprojectRow &a) {
  const double inv_dp = 1.0 / a.dp;
  const double base = a.y * a.cos_phi - a.p_first;
  const double last = static_cast<double>(a.nq) - 2.0;

  const __m256d v_base = _mm256_set1_pd(base);
  const __m256d v_sin = _mm256_set1_pd(a.sin_phi);
  const __m256d v_inv = _mm256_set1_pd(inv_dp);
  const __m256d v_dx = _mm256_set1_pd(a.dx);
  const __m256d v_x0 = _mm256_set1_pd(a.x_first);
  const __m256d v_zero = _mm256_setzero_pd();
  const __m256d v_last = _mm256_set1_pd(last);
  const __m256d lane = _mm256_set_pd(3.0, 2.0, 1.0, 0.0);

  std::size_t i = 0;
  if (a.nq >= 2) {
    for (; i + 4 <= a.nx; i += 4) {
      const __m256d idx = _mm256_add_pd(_mm256_set1_pd(static_cast<double>(i)), lane);
      const __m256d x = _mm256_fmadd_pd(idx, v_dx, v_x0);
      const __m256d u = _mm256_mul_pd(_mm256_fnmadd_pd(x, v_sin, v_base), v_inv);
      const __m256d fl = _mm256_floor_pd(u);
      const __m256d ok = _mm256_and_pd(_mm256_cmp_pd(fl, v_zero, _CMP_GE_OQ),
                                       _mm256_cmp_pd(fl, v_last, _CMP_LE_OQ));
      if (_mm256_movemask_pd(ok) == 0)
        continue;
      const __m256d clamped = _mm256_min_pd(_mm256_max_pd(fl, v_zero), v_last);
      const __m128i k = _mm256_cvtpd_epi32(clamped);
      const __m256d q0 = _mm256_i32gather_pd(a.proj, k, 8);
      const __m256d q1 = _mm256_i32gather_pd(a.proj + 1, k, 8);
      const __m256d t = _mm256_sub_pd(u, fl);
      const __m256d val = _mm256_fmadd_pd(t, _mm256_sub_pd(q1, q0), q0);
      const __m256d row = _mm256_loadu_pd(a.row + i);
      _mm256_storeu_pd(a.row + i, _mm256_add_pd(row, _mm256_and_pd(val, ok)));
    }
  }
  for (; i < a.nx; ++i) {
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

const KernelTable &avx2_kernels() {
  static const KernelTable table{complex_dot, weighted_sum, backproject_row};
  return table;
}

} // namespace abscat::simd
