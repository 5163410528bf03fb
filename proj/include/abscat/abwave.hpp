#pragma once
#include "abscat/vec2.hpp"

#include <complex>
#include <span>
#include <vector>

namespace abscat::abwave {

enum class WaveSign { Plus = 1, Minus = -1 };

inline double sign_value(WaveSign s) { return s == WaveSign::Plus ? 1.0 : -1.0; }

//! Extra partial waves kept beyond sqrt(lambda) * r_max.
inline constexpr int kTruncationMargin = 40;

//! Truncated Aharonov-Bohm distorted plane wave: sum over l in [-L, L].
struct ABWaveSpec {
  double alpha = 0.0;
  double lambda = 1.0;
  Vec2 omega{1.0, 0.0};
  WaveSign sign = WaveSign::Plus;
  int truncation = 60;

  //! Smallest truncation valid up to radius r_max.
  static int truncation_for(double lambda, double r_max);
  static ABWaveSpec for_radius(double alpha, double lambda, Vec2 omega,
                               WaveSign sign, double r_max);
  //! Largest |x| the truncation covers.
  double max_radius() const;
  //! DomainError on lambda <= 0, |omega| != 1 or truncation < 1.
  void validate() const;
};

//! Counterclockwise angle from omega to x/|x|, in [0, 2 pi).
class AzimuthAngle {
public:
  explicit AzimuthAngle(double v);
  double value() const { return value_; }

private:
  double value_;
};

//! DomainError when x = 0.
AzimuthAngle azimuth(Vec2 x, Vec2 omega);

//! psi_AB at x; PrecisionError if |x| exceeds spec.max_radius().
std::complex<double> eval_ab_wave(const ABWaveSpec &spec, Vec2 x);

//! Partial sum of the same series over l in [l_min, l_max] (no truncation
//! policy check). At x = 0 the azimuth is taken as 0.
std::complex<double> ab_partial_sum(const ABWaveSpec &spec, Vec2 x, int l_min,
                                    int l_max);

//! Flux part of the potential, alpha (-x2, x1) / |x|^2.
Vec2 flux_potential(double alpha, Vec2 x);

//! Finite-difference residual of (-i grad - A0)^2 psi - lambda psi at x,
//! five-point Laplacian and central gradient with step h.
std::complex<double> pde_residual(const ABWaveSpec &spec, Vec2 x, double h);

struct DecayFit {
  std::vector<double> radii;
  std::vector<double> residuals;
  std::complex<double> c0;
  double slope = 0.0;
  //! False when every residual is below 1e-8 (the expansion is exact).
  bool slope_defined = false;
};

//! Fits log|psi - leading| against log r, where the leading part is
//! exp(i alpha (gamma(x; -+omega) - pi)) e^{i sqrt(lambda) omega.x}
//!   + c0 e^{-+ i sqrt(lambda) r} / sqrt(r)
//! and c0 is matched at the largest radius. Requires |xhat +- omega| > 0.5,
//! at least three ascending radii, smallest >= 20. The truncation is raised
//! per radius as needed.
DecayFit asymptotic_decay_check(const ABWaveSpec &spec, Vec2 direction,
                                std::span<const double> radii);

struct WaveSample {
  Vec2 x;
  std::complex<double> value;
};

//! n x n grid over [-extent, extent]^2, row-major in x2 then x1.
std::vector<WaveSample> eval_grid(const ABWaveSpec &spec, double extent,
                                  std::size_t n, unsigned threads = 1);

} // namespace abscat::abwave
