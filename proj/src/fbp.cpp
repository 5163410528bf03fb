#include "abscat/errors.hpp"
#include "abscat/parallel.hpp"
#include "abscat/simd/kernels.hpp"
#include "abscat/xray.hpp"

#include <fftw3.h>

#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>

namespace abscat::xray {
namespace {

constexpr double kPi = std::numbers::pi;

struct FftwFree {
  void operator()(void *p) const { fftw_free(p); }
};
template <class T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <class T>
FftwBuffer<T> fftw_buffer(std::size_t n) {
  auto *p = static_cast<T *>(fftw_malloc(sizeof(T) * n));
  if (!p)
    throw std::bad_alloc();
  return FftwBuffer<T>(p);
}

// Planner calls are not thread-safe; execution on fresh arrays is.
std::mutex &planner_mutex() {
  static std::mutex m;
  return m;
}

std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n)
    p *= 2;
  return p;
}

// Frequency response of the band-limited Ram-Lak kernel times a Hann window.
std::vector<double> filter_response(std::size_t len, double dp, fftw_plan forward,
                                    double *in, fftw_complex *out) {
  for (std::size_t k = 0; k < len; ++k)
    in[k] = 0.0;
  in[0] = 1.0 / (4.0 * dp * dp);
  for (std::size_t k = 1; k < len / 2; k += 2) {
    const double v = -1.0 / (kPi * kPi * static_cast<double>(k * k) * dp * dp);
    in[k] = v;
    in[len - k] = v;
  }
  fftw_execute_dft_r2c(forward, in, out);
  std::vector<double> response(len / 2 + 1);
  for (std::size_t k = 0; k <= len / 2; ++k) {
    const double hann = 0.5 * (1.0 + std::cos(2.0 * kPi * static_cast<double>(k) / static_cast<double>(len)));
    response[k] = out[k][0] * hann;
  }
  return response;
}

} // namespace

Vec2 Reconstruction::pixel_center(std::size_t row, std::size_t col) const {
  const double h = pixel_size();
  return {-extent + (static_cast<double>(col) + 0.5) * h,
          -extent + (static_cast<double>(row) + 0.5) * h};
}

Reconstruction radon_invert(const Sinogram &sino, std::size_t grid_n, unsigned threads) {
  if (grid_n < 2)
    throw DomainError("reconstruction grid needs at least 2 pixels per side");
  if (sino.values.size() != sino.n_p * sino.n_phi)
    throw DomainError("sinogram dimensions are inconsistent");

  Reconstruction rec;
  rec.n = grid_n;
  rec.extent = sino.p_max;
  rec.values.assign(grid_n * grid_n, 0.0);
  const double dp = 2.0 * sino.p_max / static_cast<double>(sino.n_p - 1);
  if (sino.n_phi < grid_n)
    rec.warnings.push_back("angular undersampling: " + std::to_string(sino.n_phi) +
                           " angles for a " + std::to_string(grid_n) + "-pixel grid");
  if (dp > rec.pixel_size())
    rec.warnings.push_back("offset spacing exceeds the pixel size");

  const std::size_t len = next_pow2(2 * sino.n_p);
  const std::size_t half = len / 2 + 1;
  fftw_plan forward, backward;
  std::vector<double> response;
  {
    auto in = fftw_buffer<double>(len);
    auto out = fftw_buffer<fftw_complex>(half);
    std::lock_guard lock(planner_mutex());
    forward = fftw_plan_dft_r2c_1d(static_cast<int>(len), in.get(), out.get(), FFTW_ESTIMATE);
    backward = fftw_plan_dft_c2r_1d(static_cast<int>(len), out.get(), in.get(), FFTW_ESTIMATE);
    response = filter_response(len, dp, forward, in.get(), out.get());
  }

  // filtered projections, one contiguous row per angle
  std::vector<double> filtered(sino.n_phi * sino.n_p);
  parallel_for(sino.n_phi, threads, [&](std::size_t j) {
    auto in = fftw_buffer<double>(len);
    auto out = fftw_buffer<fftw_complex>(half);
    for (std::size_t k = 0; k < len; ++k)
      in[k] = k < sino.n_p ? sino.at(k, j) : 0.0;
    fftw_execute_dft_r2c(forward, in.get(), out.get());
    for (std::size_t k = 0; k < half; ++k) {
      out[k][0] *= response[k];
      out[k][1] *= response[k];
    }
    fftw_execute_dft_c2r(backward, out.get(), in.get());
    const double scale = dp / static_cast<double>(len);
    for (std::size_t k = 0; k < sino.n_p; ++k)
      filtered[j * sino.n_p + k] = in[k] * scale;
  });
  {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(forward);
    fftw_destroy_plan(backward);
  }

  const auto &kern = simd::kernels();
  const double weight = kPi / static_cast<double>(sino.n_phi);
  parallel_for(grid_n, threads, [&](std::size_t row) {
    simd::BackprojectRow args;
    args.row = rec.values.data() + row * grid_n;
    args.nx = grid_n;
    args.x_first = rec.pixel_center(row, 0).x;
    args.dx = rec.pixel_size();
    args.y = rec.pixel_center(row, 0).y;
    args.nq = sino.n_p;
    args.p_first = sino.offset(0);
    args.dp = dp;
    for (std::size_t j = 0; j < sino.n_phi; ++j) {
      const double phi = sino.angle(j);
      args.cos_phi = std::cos(phi);
      args.sin_phi = std::sin(phi);
      args.proj = filtered.data() + j * sino.n_p;
      kern.backproject_row(args);
    }
    for (std::size_t col = 0; col < grid_n; ++col)
      args.row[col] *= weight;
  });
  return rec;
}

} // namespace abscat::xray
