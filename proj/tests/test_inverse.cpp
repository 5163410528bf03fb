#include "abscat/errors.hpp"
#include "abscat/inverse.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace abscat;
using namespace abscat::inverse;
using smatrix::build_partial_wave;
using smatrix::cplx;
using smatrix::sample_kernel;

namespace {
constexpr double kPi = std::numbers::pi;

// Adds eta * f(theta, theta') to every off-diagonal entry.
template <class F>
KernelGrid perturbed(KernelGrid g, double eta, F &&f) {
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t k = 0; k < g.size(); ++k)
      if (j != k)
        g.set(j, k, g(j, k) + eta * f(g.angle(j), g.angle(k)));
  return g;
}

std::vector<StripDomain> strips(double a, double b) {
  return {{a, b, 0.1}, {a, b, 0.05}, {a, b, 0.025}};
}
} // namespace

TEST_CASE("flux from partial waves") {
  auto e = recover_flux_from_modes(build_partial_wave(0.5, 8));
  CHECK(std::abs(*e.alpha - 0.5) <= 1e-9);
  CHECK(*e.ceil_alpha == 1);

  e = recover_flux_from_modes(build_partial_wave(1.7, 8));
  CHECK(std::abs(*e.alpha - 1.7) <= 1e-9);
  CHECK(*e.ceil_alpha == 2);
  CHECK(e.sin_pi_alpha == doctest::Approx(std::sin(1.7 * kPi)));

  CHECK_THROWS_AS(recover_flux_from_modes(build_partial_wave(0.0, 8)), IntegerFluxError);
  CHECK_THROWS_AS(recover_flux_from_modes(build_partial_wave(3.0, 8)), IntegerFluxError);
  // a flip outside the window is indistinguishable from integer flux
  CHECK_THROWS_AS(recover_flux_from_modes(build_partial_wave(-7.5, 6)), IntegerFluxError);

  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const double alpha = u(rng);
    const auto est = recover_flux_from_modes(build_partial_wave(alpha, 8));
    CHECK(std::abs(*est.alpha - alpha) <= 1e-9);
    CHECK(*est.ceil_alpha == static_cast<int>(std::ceil(alpha)));
    CHECK(est.residual <= 1e-12);
  }
}

TEST_CASE("flux from kernel grids") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int i = 0; i < 5; ++i) {
    const double alpha = u(rng);
    CHECK(std::abs(*recover_flux_from_modes(sample_kernel(alpha, 1024)).alpha - alpha) <= 1e-4);
  }
  // a perturbation with no diagonal mode elements leaves the modes alone
  const auto g = perturbed(sample_kernel(1.7, 512), 0.05, [](double t, double s) { return std::cos(t + s); });
  CHECK(std::abs(*recover_flux_from_modes(g).alpha - 1.7) <= 1e-4);
}

TEST_CASE("sin(pi alpha) from strips") {
  const auto half = recover_flux_from_strip(sample_kernel(0.5, 4096), strips(0.0, kPi));
  CHECK(half.sin_pi_alpha == doctest::Approx(1.0).epsilon(0.05));
  CHECK_FALSE(half.alpha.has_value());

  CHECK(std::abs(recover_flux_from_strip(sample_kernel(0.0, 1024), strips(0.0, kPi)).sin_pi_alpha) <= 1e-4);

  const auto quarter = perturbed(sample_kernel(0.25, 2048), 0.05, [](double t, double s) { return std::cos(t + s) + 1.0; });
  CHECK(recover_flux_from_strip(quarter, strips(0.3, 2.8)).sin_pi_alpha ==
        doctest::Approx(std::sin(kPi / 4)).epsilon(0.05));

  // the strip data cannot tell alpha from 1 - alpha
  const double a = recover_flux_from_strip(sample_kernel(0.3, 2048), strips(0.0, kPi)).sin_pi_alpha;
  const double b = recover_flux_from_strip(sample_kernel(0.7, 2048), strips(0.0, kPi)).sin_pi_alpha;
  CHECK(std::abs(a - b) < 1e-6);
}

TEST_CASE("strip estimate is robust to smooth perturbations") {
  const auto clean = sample_kernel(0.6, 2048);
  const double base = recover_flux_from_strip(clean, strips(0.0, kPi)).sin_pi_alpha;
  for (double eta : {0.02, 0.05, 0.1}) {
    const auto g = perturbed(clean, eta, [](double t, double s) { return cplx{std::cos(t - 2 * s), 0.5}; });
    const double est = recover_flux_from_strip(g, strips(0.0, kPi)).sin_pi_alpha;
    CHECK(std::abs(est - std::sin(0.6 * kPi)) <= 0.5 * eta + 0.02);
    CHECK(std::abs(est - base) <= 0.5 * eta + 0.02);
  }
}

TEST_CASE("strongly singular perturbations are rejected") {
  // |tau|^{-1} log-type growth does not settle as eps shrinks
  const auto g = perturbed(sample_kernel(0.5, 4096), 1.0, [](double t, double s) {
    double tau = std::remainder(t - s, 2 * kPi);
    return -std::log(std::abs(tau)) / std::abs(tau);
  });
  CHECK_THROWS_AS(recover_flux_from_strip(g, strips(0.0, kPi)), PerturbationTooSingularError);
}

TEST_CASE("conjugation detection") {
  const auto s = sample_kernel(0.5, 256);
  const auto self = detect_conjugation(s, s, 3);
  CHECK(self.n == 0);
  CHECK(self.residual <= 1e-12);
  CHECK(self.equivalent);

  const auto two = detect_conjugation(s, smatrix::conjugate(s, 2), 3);
  CHECK(two.n == 2);
  CHECK(two.residual <= 1e-9);

  for (int n = -3; n <= 3; ++n) {
    const auto base = sample_kernel(-0.35, 256);
    const auto rep = detect_conjugation(base, smatrix::conjugate(base, n), 3);
    CHECK(rep.n == n);
    CHECK(rep.equivalent);
  }

  const auto diff = detect_conjugation(s, sample_kernel(0.7, 256), 3);
  CHECK_FALSE(diff.equivalent);
  CHECK(diff.residual > 1e-3);

  CHECK_THROWS_AS(detect_conjugation(s, sample_kernel(0.5, 128), 1), DomainError);
}

TEST_CASE("flux identification") {
  const double eps[] = {0.1, 0.05, 0.025};
  const auto st = default_strips(eps);

  const auto v = identify_flux(sample_kernel(0.5, 1024), true, st);
  CHECK(std::abs(*v.estimate.alpha - 0.5) <= 1e-6);
  CHECK(*v.estimate.ceil_alpha == 1);
  CHECK(v.witness);
  REQUIRE(v.witness_values.size() == 3);
  for (double w : v.witness_values)
    CHECK(w == doctest::Approx(2.0 / kPi).epsilon(0.05));
  CHECK(std::abs(std::sin(kPi * *v.estimate.alpha) - v.estimate.sin_pi_alpha) <= 0.05);

  CHECK_THROWS_AS(identify_flux(sample_kernel(0.0, 1024), true, st), IntegerFluxError);
  CHECK_THROWS_AS(identify_flux(sample_kernel(0.5, 1024), false, st), DomainError);

  const auto g = perturbed(sample_kernel(1.7, 2048), 0.05, [](double t, double s) { return std::cos(t + s); });
  const auto p = identify_flux(g, true, st);
  CHECK(std::abs(*p.estimate.alpha - 1.7) <= 1e-4);
  CHECK(p.estimate.sin_pi_alpha == doctest::Approx(std::sin(1.7 * kPi)).epsilon(0.05));
  CHECK(std::abs(p.estimate.sin_pi_alpha) <= 1.0 + 1e-3);
}
