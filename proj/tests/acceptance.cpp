// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
// failure. Reference values come from tests/oracles.hpp or closed forms.

#include "abscat/abwave.hpp"
#include "abscat/gaugefield.hpp"
#include "abscat/inverse.hpp"
#include "abscat/smatrix.hpp"
#include "abscat/specfun.hpp"
#include "abscat/xray.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace abscat;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome ac1() {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> nu(0.0, 10.0), x(0.0, 20.0);
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  std::vector<std::pair<double, double>> pts(200);
  for (auto &p : pts)
    p = {nu(rng), x(rng)};
  for (auto [n, z] : pts)
    worst = std::max(worst, std::abs(specfun::bessel_j(n, z) - oracle::bessel_series(n, z)));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-10 && secs < 1.0, fmt("max error %.3g, %.3f s", worst, secs)};
}

Outcome ac2() {
  const auto t0 = std::chrono::steady_clock::now();
  const Vec2 omega = from_angle(0.4);
  const abwave::ABWaveSpec spec{0.0, 1.0, omega, abwave::WaveSign::Plus, 60};
  double worst = 0.0;
  const int n = 101;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec2 x{-10.0 + 20.0 * i / (n - 1), -10.0 + 20.0 * j / (n - 1)};
      if (norm(x) > 10.0)
        continue;
      worst = std::max(worst, std::abs(abwave::eval_ab_wave(spec, x) -
                                       oracle::plane_wave(1.0, omega.x, omega.y, x.x, x.y)));
    }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {worst <= 1e-8 && secs < 5.0, fmt("sup error %.3g, %.3f s", worst, secs)};
}

Outcome ac3() {
  const auto spec = abwave::ABWaveSpec::for_radius(0.5, 1.0, {1.0, 0.0}, abwave::WaveSign::Plus, 6.0);
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> r(1.0, 5.0), t(0.0, 2 * kPi);
  double coarse = 0.0, fine = 0.0;
  for (int i = 0; i < 100; ++i) {
    const Vec2 x = from_angle(t(rng)) * r(rng);
    coarse = std::max(coarse, std::abs(abwave::pde_residual(spec, x, 0.02)));
    fine = std::max(fine, std::abs(abwave::pde_residual(spec, x, 0.01)));
  }
  const double ratio = coarse / fine;
  return {ratio >= 3.5, fmt("ratio %.3f (%.3g -> %.3g)", ratio, coarse, fine)};
}

Outcome ac4() {
  double worst = 0.0;
  for (int k = 1; k <= 19; ++k) {
    if (k == 10)
      continue;
    const double alpha = 0.1 * k;
    for (int m = -8; m <= 8; ++m)
      worst = std::max(worst, std::abs(smatrix::apply_kernel_to_mode(alpha, m, 2048) -
                                       oracle::eigenvalue(alpha, m)));
  }
  return {worst <= 1e-6, fmt("max eigenvalue error %.3g", worst)};
}

Outcome ac5() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = smatrix::sample_kernel(0.5, 4096);
  const double v = -smatrix::strip_integral(g, {0.0, kPi, 0.025}).real();
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const double rel = std::abs(v - std::log(2.0)) / std::log(2.0);
  return {rel <= 0.05 && secs < 10.0, fmt("-Re strip %.6f vs log 2, rel %.3g, %.3f s", v, rel, secs)};
}

Outcome ac6() {
  std::mt19937_64 rng(106);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  double clean = 0.0, grid = 0.0;
  for (int i = 0; i < 20; ++i) {
    double alpha = u(rng);
    while (std::abs(alpha - std::round(alpha)) < 1e-3)
      alpha = u(rng);
    clean = std::max(clean, std::abs(*inverse::recover_flux_from_modes(smatrix::build_partial_wave(alpha, 8)).alpha - alpha));
    grid = std::max(grid, std::abs(*inverse::recover_flux_from_modes(smatrix::sample_kernel(alpha, 1024)).alpha - alpha));
  }
  return {clean <= 1e-9 && grid <= 1e-4, fmt("clean %.3g, grid %.3g", clean, grid)};
}

Outcome ac7() {
  double worst = 0.0;
  bool exact = true;
  for (double alpha : {0.3, -1.45, 2.6})
    for (int n = -2; n <= 2; ++n) {
      const auto c = smatrix::conjugate(smatrix::build_partial_wave(alpha, 8), n);
      const auto target = smatrix::build_partial_wave(alpha + n, 12);
      for (int m = c.first_mode(); m <= c.last_mode(); ++m)
        worst = std::max(worst, std::abs(c.eigenvalue(m) - target.eigenvalue(m)));
      const auto g = smatrix::sample_kernel(alpha, 256);
      exact = exact && inverse::detect_conjugation(g, smatrix::conjugate(g, n), 3).n == n;
    }
  return {worst <= 1e-9 && exact, fmt("mode-space error %.3g, detection %s", worst, exact ? "exact" : "wrong")};
}

Outcome ac8() {
  gaugefield::VectorPotential pot;
  pot.alpha = 0.45;
  pot.bumps = {{{0.6, -0.2}, 1.0, 0.5}, {{3.5, 2.0}, -0.4, 0.8}};
  std::mt19937_64 rng(108);
  std::uniform_real_distribution<double> p(2.0, 6.0), phi(0.0, 2 * kPi);
  std::vector<xray::LineSpec> lines;
  for (int i = 0; i < 50; ++i)
    lines.push_back(xray::LineSpec::parallel_beam((i % 2 ? -1.0 : 1.0) * p(rng), phi(rng)));

  double phase = 0.0, integer = 0.0;
  for (int n : {-2, 2, 4}) {
    const gaugefield::GaugeElement g{n, {{{-3.0, 1.0}, 2.0, 0.7}}};
    const auto q = gaugefield::gauge_transform(pot, g);
    for (const auto &l : lines) {
      const auto a = xray::line_integral_A(pot, l), b = xray::line_integral_A(q, l);
      phase = std::max(phase, std::abs(a.phase - b.phase));
      const double turns = (b.raw - a.raw) / (2 * kPi);
      integer = std::max(integer, std::abs(turns - std::round(turns)));
    }
  }
  auto shifted = pot;
  shifted.alpha += 2.0;
  const auto report = xray::flux_parity_test(xray::raw_phase_sinogram(pot, 64, 64, 8.0),
                                             xray::raw_phase_sinogram(shifted, 64, 64, 8.0), 2.0);
  const bool ok = phase <= 1e-8 && integer <= 1e-8 && report.phases_match && report.certificate == 2;
  return {ok, fmt("phase %.3g, non-integer %.3g, certificate %d", phase, integer, report.certificate)};
}

Outcome ac9() {
  const auto t0 = std::chrono::steady_clock::now();
  gaugefield::VectorPotential pot;
  pot.scalar = {{{3.0, 1.0}, 1.0, 0.6}, {{-2.5, -3.0}, 0.7, 0.8}, {{0.0, 0.0}, 2.0, 1.0}};
  const auto rec = xray::radon_invert(xray::radon_forward(pot, 257, 180, 8.0), 128);
  double num = 0.0, den = 0.0;
  for (std::size_t r = 0; r < rec.n; ++r)
    for (std::size_t c = 0; c < rec.n; ++c) {
      const Vec2 x = rec.pixel_center(r, c);
      if (norm(x) <= 2.2 || norm(x) >= 7.0)
        continue;
      const double t = pot.scalar_potential(x);
      num += (rec.at(r, c) - t) * (rec.at(r, c) - t);
      den += t * t;
    }
  const double err = std::sqrt(num / den);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {err <= 0.05 && secs < 30.0, fmt("annulus rel L2 %.4f, %.3f s", err, secs)};
}

Outcome ac10() {
  gaugefield::VectorPotential pot;
  pot.alpha = 0.65;
  pot.bumps = {{{1.0, 1.0}, 0.8, 0.6}, {{-2.0, 0.5}, -0.5, 1.0}};
  pot.grad_l = {{{0.0, -2.0}, 1.2, 0.9}};
  std::mt19937_64 rng(110);
  std::uniform_real_distribution<double> u(-5.0, 5.0), ang(0.0, 2 * kPi), mag(0.3, 2.0);
  double transport = 0.0, formula = 0.0;
  int count = 0;
  while (count < 100) {
    const Vec2 x{u(rng), u(rng)};
    const Vec2 xi = from_angle(ang(rng)) * mag(rng);
    const auto sign = count % 2 ? gaugefield::RaySign::Minus : gaugefield::RaySign::Plus;
    if (!gaugefield::in_eikonal_domain(sign, x, xi))
      continue;
    ++count;
    const gaugefield::EikonalPhase phase{sign, pot};
    transport = std::max(transport, gaugefield::phase_gradient_check(phase, x, xi));
    const Vec2 d = gaugefield::eikonal_gradient_fd(phase, x, xi) - gaugefield::eikonal_gradient_formula(phase, x, xi);
    formula = std::max(formula, std::max(std::abs(d.x), std::abs(d.y)));
  }
  return {transport <= 1e-6 && formula <= 1e-6, fmt("transport %.3g, formula %.3g", transport, formula)};
}

} // namespace

int main() {
  const std::vector<std::function<Outcome()>> criteria{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i]();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::printf("AC%zu %s %s\n", i + 1, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  std::fflush(stdout);
  return failed == 0 ? 0 : 1;
}
