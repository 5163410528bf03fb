#include "abscat/abwave.hpp"

#include "abscat/errors.hpp"
#include "abscat/parallel.hpp"
#include "abscat/specfun.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace abscat::abwave {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Adds sum_{l in [lo, hi]} exp(i(s*order*pi/2 + l*gamma)) J_order(k r), with
// order = |l - alpha|, using one ladder per branch of |l - alpha|.
std::complex<double> series_sum(double alpha, double s, double gamma, double kr,
                                int lo, int hi) {
  std::complex<double> sum{0.0, 0.0};
  if (lo > hi)
    return sum;
  const int c = static_cast<int>(std::ceil(alpha));

  // l >= c: order = (c - alpha) + (l - c)
  const int up_lo = std::max(lo, c);
  if (up_lo <= hi) {
    const double nu0 = (c - alpha) + (up_lo - c);
    const auto count = static_cast<std::size_t>(hi - up_lo + 1);
    const auto j = specfun::bessel_j_ladder(specfun::BesselOrder(nu0), count, kr);
    for (std::size_t k = 0; k < count; ++k) {
      const int l = up_lo + static_cast<int>(k);
      const double order = nu0 + static_cast<double>(k);
      sum += std::polar(j[k], s * order * kPi / 2.0 + l * gamma);
    }
  }
  // l <= c - 1: order = (alpha - c + 1) + (c - 1 - l)
  const int down_hi = std::min(hi, c - 1);
  if (lo <= down_hi) {
    const double nu0 = (alpha - c + 1.0) + (c - 1 - down_hi);
    const auto count = static_cast<std::size_t>(down_hi - lo + 1);
    const auto j = specfun::bessel_j_ladder(specfun::BesselOrder(nu0), count, kr);
    for (std::size_t k = 0; k < count; ++k) {
      const int l = down_hi - static_cast<int>(k);
      const double order = nu0 + static_cast<double>(k);
      sum += std::polar(j[k], s * order * kPi / 2.0 + l * gamma);
    }
  }
  return sum;
}

} // namespace

int ABWaveSpec::truncation_for(double lambda, double r_max) {
  return static_cast<int>(std::ceil(std::sqrt(lambda) * r_max)) + kTruncationMargin;
}

ABWaveSpec ABWaveSpec::for_radius(double alpha, double lambda, Vec2 omega,
                                  WaveSign sign, double r_max) {
  ABWaveSpec spec{alpha, lambda, omega, sign, truncation_for(lambda, r_max)};
  spec.validate();
  return spec;
}

double ABWaveSpec::max_radius() const {
  return static_cast<double>(truncation - kTruncationMargin) / std::sqrt(lambda);
}

void ABWaveSpec::validate() const {
  if (!(lambda > 0.0))
    throw DomainError("AB wave: lambda must be positive");
  if (std::abs(norm(omega) - 1.0) > 1e-12)
    throw DomainError("AB wave: omega must be a unit vector");
  if (truncation < 1)
    throw DomainError("AB wave: truncation must be at least 1");
  if (!std::isfinite(alpha))
    throw DomainError("AB wave: alpha must be finite");
}

AzimuthAngle::AzimuthAngle(double v) : value_(v) {
  if (!(v >= 0.0 && v < kTwoPi))
    throw DomainError("azimuth angle outside [0, 2pi)");
}

AzimuthAngle azimuth(Vec2 x, Vec2 omega) {
  if (x.x == 0.0 && x.y == 0.0)
    throw DomainError("azimuth undefined at x = 0");
  double g = std::atan2(cross(omega, x), dot(omega, x));
  if (g < 0.0)
    g += kTwoPi;
  if (g >= kTwoPi)
    g = 0.0;
  return AzimuthAngle(g);
}

std::complex<double> ab_partial_sum(const ABWaveSpec &spec, Vec2 x, int l_min,
                                    int l_max) {
  spec.validate();
  const double s = sign_value(spec.sign);
  const double r = norm(x);
  const double gamma = r == 0.0 ? 0.0 : azimuth(x, spec.omega * s).value();
  return series_sum(spec.alpha, s, gamma, std::sqrt(spec.lambda) * r, l_min, l_max);
}

std::complex<double> eval_ab_wave(const ABWaveSpec &spec, Vec2 x) {
  spec.validate();
  if (norm(x) > spec.max_radius() * (1.0 + 1e-12))
    throw PrecisionError("AB wave: truncation " + std::to_string(spec.truncation) +
                         " too small for |x| = " + std::to_string(norm(x)));
  return ab_partial_sum(spec, x, -spec.truncation, spec.truncation);
}

Vec2 flux_potential(double alpha, Vec2 x) {
  const double r2 = dot(x, x);
  return Vec2{-x.y, x.x} * (alpha / r2);
}

std::complex<double> pde_residual(const ABWaveSpec &spec, Vec2 x, double h) {
  const auto psi = [&](Vec2 p) { return eval_ab_wave(spec, p); };
  const std::complex<double> c = psi(x);
  const std::complex<double> e = psi(x + Vec2{h, 0.0});
  const std::complex<double> w = psi(x - Vec2{h, 0.0});
  const std::complex<double> n = psi(x + Vec2{0.0, h});
  const std::complex<double> s = psi(x - Vec2{0.0, h});
  const std::complex<double> lap = (e + w + n + s - 4.0 * c) / (h * h);
  const std::complex<double> dx = (e - w) / (2.0 * h);
  const std::complex<double> dy = (n - s) / (2.0 * h);
  const Vec2 a = flux_potential(spec.alpha, x);
  const std::complex<double> i{0.0, 1.0};
  return -lap + 2.0 * i * (a.x * dx + a.y * dy) + (dot(a, a) - spec.lambda) * c;
}

DecayFit asymptotic_decay_check(const ABWaveSpec &spec, Vec2 direction,
                                std::span<const double> radii) {
  spec.validate();
  const double s = sign_value(spec.sign);
  const Vec2 xhat = unit(direction);
  if (norm(xhat + spec.omega * s) <= 0.5)
    throw DomainError("asymptotic expansion invalid: |xhat +- omega| <= 0.5");
  if (radii.size() < 3)
    throw DomainError("decay check needs at least three radii");
  if (radii.front() < 20.0)
    throw DomainError("decay check radii must be >= 20");
  for (std::size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw DomainError("decay check radii must be ascending");

  const double k = std::sqrt(spec.lambda);
  const std::complex<double> i{0.0, 1.0};
  std::vector<std::complex<double>> remainder(radii.size());
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const Vec2 x = xhat * radii[j];
    ABWaveSpec local = spec;
    local.truncation = std::max(spec.truncation, ABWaveSpec::truncation_for(spec.lambda, radii[j]));
    const double g = azimuth(x, spec.omega * (-s)).value();
    const std::complex<double> plane =
        std::exp(i * (spec.alpha * (g - kPi))) * std::exp(i * (k * dot(spec.omega, x)));
    remainder[j] = eval_ab_wave(local, x) - plane;
  }

  DecayFit fit;
  fit.radii.assign(radii.begin(), radii.end());
  const double r_last = radii.back();
  fit.c0 = remainder.back() * std::sqrt(r_last) * std::exp(i * (s * k * r_last));
  double largest = 0.0;
  for (std::size_t j = 0; j < radii.size(); ++j) {
    const double r = radii[j];
    const double res = std::abs(remainder[j] - fit.c0 * std::exp(-i * (s * k * r)) / std::sqrt(r));
    fit.residuals.push_back(res);
    largest = std::max(largest, res);
  }
  if (largest < 1e-8)
    return fit;

  // least squares over all but the matching radius
  const std::size_t m = radii.size() - 1;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t j = 0; j < m; ++j) {
    const double lx = std::log(radii[j]);
    const double ly = std::log(std::max(fit.residuals[j], 1e-300));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double dm = static_cast<double>(m);
  fit.slope = (dm * sxy - sx * sy) / (dm * sxx - sx * sx);
  fit.slope_defined = true;
  return fit;
}

std::vector<WaveSample> eval_grid(const ABWaveSpec &spec, double extent,
                                  std::size_t n, unsigned threads) {
  if (n < 2)
    throw DomainError("wave grid needs n >= 2");
  std::vector<WaveSample> out(n * n);
  const double step = 2.0 * extent / static_cast<double>(n - 1);
  parallel_for(n, threads, [&](std::size_t row) {
    const double y = -extent + step * static_cast<double>(row);
    for (std::size_t col = 0; col < n; ++col) {
      const Vec2 x{-extent + step * static_cast<double>(col), y};
      out[row * n + col] = {x, eval_ab_wave(spec, x)};
    }
  });
  return out;
}

} // namespace abscat::abwave
