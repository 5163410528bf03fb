#include "abscat/simd/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace abscat::simd;
using cplx = std::complex<double>;

namespace {

std::vector<cplx> random_complex(std::size_t n, std::mt19937_64 &rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(n);
  for (auto &z : v)
    z = {u(rng), u(rng)};
  return v;
}

} // namespace

TEST_CASE("backend selection") {
  CHECK(backend_available(Backend::Scalar));
  CHECK(backend_name(Backend::Scalar) == "scalar");
  CHECK(backend_name(Backend::Avx2) == "avx2");
  const Backend before = active_backend();
  force_backend(Backend::Scalar);
  CHECK(active_backend() == Backend::Scalar);
  CHECK(&kernels() == &kernels(Backend::Scalar));
  if (!backend_available(Backend::Avx2))
    CHECK_THROWS(force_backend(Backend::Avx2));
  force_backend(before);
}

TEST_CASE("AVX2 kernels agree with the scalar reference") {
  if (!backend_available(Backend::Avx2)) {
    MESSAGE("AVX2 unavailable; skipped");
    return;
  }
  const auto &s = kernels(Backend::Scalar);
  const auto &v = kernels(Backend::Avx2);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);

  for (std::size_t n : {0u, 1u, 2u, 3u, 5u, 8u, 17u, 64u, 1001u, 4096u}) {
    const auto a = random_complex(n, rng), b = random_complex(n, rng);
    std::vector<double> w(n);
    for (auto &x : w)
      x = u(rng);
    const double scale = 1e-14 * (1.0 + static_cast<double>(n));
    CHECK(std::abs(s.complex_dot(a.data(), b.data(), n) - v.complex_dot(a.data(), b.data(), n)) <= scale);
    CHECK(std::abs(s.weighted_sum(w.data(), a.data(), n) - v.weighted_sum(w.data(), a.data(), n)) <= scale);
  }

  for (std::size_t nx : {1u, 3u, 4u, 7u, 64u, 129u}) {
    std::vector<double> proj(101);
    for (auto &x : proj)
      x = u(rng);
    std::vector<double> r1(nx, 0.5), r2(nx, 0.5);
    BackprojectRow args;
    args.nx = nx;
    args.x_first = -4.2;
    args.dx = 8.4 / static_cast<double>(nx);
    args.y = u(rng) * 4.0;
    const double phi = u(rng) * 3.0;
    args.cos_phi = std::cos(phi);
    args.sin_phi = std::sin(phi);
    args.proj = proj.data();
    args.nq = proj.size();
    args.p_first = -3.0; // pixels near the corners fall outside
    args.dp = 0.06;
    args.row = r1.data();
    s.backproject_row(args);
    args.row = r2.data();
    v.backproject_row(args);
    for (std::size_t i = 0; i < nx; ++i)
      CHECK(std::abs(r1[i] - r2[i]) <= 1e-13);
  }
}
