#pragma once
#include "abscat/vec2.hpp"

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace abscat::gaugefield {

//! s * exp(-|x - c|^2 / w^2)
struct GaussianBump {
  Vec2 center;
  double strength = 0.0;
  double width = 1.0;

  double value(Vec2 x) const;
  Vec2 gradient(Vec2 x) const;
  double laplacian(Vec2 x) const;
  //! Radius beyond which the bump and its first derivatives are below 1e-14.
  double support_radius() const;
  bool operator==(const GaussianBump &) const = default;
};

//! A = alpha (-x2, x1)/|x|^2 + A', with
//!   A' = sum over `bumps` of curl(psi) = (d2 psi, -d1 psi)  (divergence free)
//!      + sum over `grad_l` of grad L,
//!   V  = sum over `scalar` of the bump values.
struct VectorPotential {
  double alpha = 0.0;
  std::vector<GaussianBump> bumps;
  std::vector<GaussianBump> grad_l;
  std::vector<GaussianBump> scalar;
  double r0 = 0.0;

  Vec2 flux_part(Vec2 x) const;
  Vec2 aprime(Vec2 x) const;
  Vec2 operator()(Vec2 x) const { return flux_part(x) + aprime(x); }
  //! curl of A' (the flux part adds 2 pi alpha delta at the origin only).
  double magnetic_field(Vec2 x) const;
  double scalar_potential(Vec2 x) const;
  bool operator==(const VectorPotential &) const = default;
};

//! g(x) = exp(i n theta(x) + i L(x)), L a sum of Gaussian bumps.
struct GaugeElement {
  int n = 0;
  std::vector<GaussianBump> l;

  double l_value(Vec2 x) const;
  Vec2 l_gradient(Vec2 x) const;
  std::complex<double> operator()(Vec2 x) const;
};

struct FluxResult {
  std::vector<double> radii;
  std::vector<double> values; //!< (1/2 pi) circulation at each radius
  double estimate = 0.0;      //!< value at the largest radius
  bool converged = true;      //!< top two radii agree within 1e-3
  std::string warning;
};

//! Trapezoid circulation (>= 1024 nodes) on each circle |x| = r.
//! DomainError unless radii are ascending and exceed r0.
FluxResult flux(const VectorPotential &pot, std::span<const double> radii);

//! Total phase increment of g around |x| = r, divided by 2 pi. Sampling is
//! doubled until every step is below pi/2; SamplingError if a step of pi or
//! more survives 2^22 samples.
int winding_number(const std::function<std::complex<double>(Vec2)> &g, double r);
int winding_number(const GaugeElement &g, double r);

//! alpha' = alpha + n, A'' = A' + grad L, V unchanged.
VectorPotential gauge_transform(const VectorPotential &pot, const GaugeElement &g);

enum class RaySign { Plus = 1, Minus = -1 };

//! delta defining the admissible region for the eikonal phases.
inline constexpr double kEikonalDelta = 0.1;

struct EikonalPhase {
  RaySign sign = RaySign::Plus;
  VectorPotential potential;
  //! Cutoff of the A' ray integral; 0 chooses it from the bump supports.
  double s_max = 0.0;
  //! Gauss-Legendre panels per unit bump width.
  int panels_per_width = 4;
};

//! |x| > delta, |xi| > delta and +-xhat.xihat >= -1 + delta.
bool in_eikonal_domain(RaySign sign, Vec2 x, Vec2 xi, double delta = kEikonalDelta);

//! Phi_{+-}(x, xi) = -+ int_0^inf A(x +- s xi) . xi ds. The flux part uses
//! its arctan primitive, A' composite Gauss-Legendre quadrature.
double eikonal_phase(const EikonalPhase &phase, Vec2 x, Vec2 xi);

//! int_0^inf B(x +- s xi) ds for the smooth part of the field.
double ray_field_integral(const EikonalPhase &phase, Vec2 x, Vec2 xi);

//! grad_x Phi by central differences with h = 1e-5 (1 + |x|).
Vec2 eikonal_gradient_fd(const EikonalPhase &phase, Vec2 x, Vec2 xi);
//! grad_x Phi from (-+ xi2, +- xi1) int B ds + A(x).
Vec2 eikonal_gradient_formula(const EikonalPhase &phase, Vec2 x, Vec2 xi);

//! |xi . (grad_x Phi - A(x))| with the finite-difference gradient.
double phase_gradient_check(const EikonalPhase &phase, Vec2 x, Vec2 xi);

} // namespace abscat::gaugefield
