#include "abscat/gaugefield.hpp"

#include "abscat/errors.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace abscat::gaugefield {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

using Rule = boost::math::quadrature::gauss<double, 10>;

double sign_of(RaySign s) { return s == RaySign::Plus ? 1.0 : -1.0; }

// Parameter range s >= 0 where x + s d lies within `radius` of c.
bool ray_interval(Vec2 x, Vec2 d, Vec2 c, double radius, double &lo, double &hi) {
  const double dd = dot(d, d);
  const Vec2 rel = x - c;
  const double b = dot(rel, d);
  const double disc = b * b - dd * (dot(rel, rel) - radius * radius);
  if (disc <= 0.0)
    return false;
  const double root = std::sqrt(disc);
  lo = std::max(0.0, (-b - root) / dd);
  hi = (-b + root) / dd;
  return hi > lo;
}

// Composite Gauss-Legendre of f over [lo, hi] with panels no longer than `panel`.
template <class F>
double composite(F &&f, double lo, double hi, double panel) {
  const auto count = std::max<long>(1, static_cast<long>(std::ceil((hi - lo) / panel)));
  const double len = (hi - lo) / static_cast<double>(count);
  double sum = 0.0;
  for (long p = 0; p < count; ++p) {
    const double a = lo + len * static_cast<double>(p);
    sum += Rule::integrate(f, a, a + len);
  }
  return sum;
}

// int_0^inf of f(x + s d) summed over bumps, each over its own support.
template <class F>
double ray_sum(const std::vector<GaussianBump> &bumps, Vec2 x, Vec2 d,
               double s_max, int panels_per_width, F &&f) {
  double total = 0.0;
  const double speed = norm(d);
  for (const GaussianBump &b : bumps) {
    double lo = 0.0, hi = 0.0;
    if (!ray_interval(x, d, b.center, b.support_radius(), lo, hi))
      continue;
    if (s_max > 0.0)
      hi = std::min(hi, s_max);
    if (hi <= lo)
      continue;
    const double panel = b.width / (speed * static_cast<double>(panels_per_width));
    total += composite([&](double s) { return f(b, x + d * s); }, lo, hi, panel);
  }
  return total;
}

Vec2 stream_velocity(const GaussianBump &b, Vec2 x) {
  const Vec2 g = b.gradient(x);
  return {g.y, -g.x};
}

} // namespace

double GaussianBump::value(Vec2 x) const {
  const Vec2 r = x - center;
  return strength * std::exp(-dot(r, r) / (width * width));
}

Vec2 GaussianBump::gradient(Vec2 x) const {
  const Vec2 r = x - center;
  return r * (-2.0 * value(x) / (width * width));
}

double GaussianBump::laplacian(Vec2 x) const {
  const Vec2 r = x - center;
  const double w2 = width * width;
  return value(x) * (4.0 * dot(r, r) / (w2 * w2) - 4.0 / w2);
}

double GaussianBump::support_radius() const {
  const double scale = std::max(std::abs(strength), 1.0) * std::max(1.0, 4.0 / (width * width));
  return width * (std::sqrt(std::log(scale * 1e14)) + 1.0);
}

Vec2 VectorPotential::flux_part(Vec2 x) const {
  const double r2 = dot(x, x);
  return Vec2{-x.y, x.x} * (alpha / r2);
}

Vec2 VectorPotential::aprime(Vec2 x) const {
  Vec2 a{};
  for (const auto &b : bumps)
    a += stream_velocity(b, x);
  for (const auto &b : grad_l)
    a += b.gradient(x);
  return a;
}

double VectorPotential::magnetic_field(Vec2 x) const {
  double field = 0.0;
  for (const auto &b : bumps)
    field -= b.laplacian(x);
  return field;
}

double VectorPotential::scalar_potential(Vec2 x) const {
  double v = 0.0;
  for (const auto &b : scalar)
    v += b.value(x);
  return v;
}

double GaugeElement::l_value(Vec2 x) const {
  double v = 0.0;
  for (const auto &b : l)
    v += b.value(x);
  return v;
}

Vec2 GaugeElement::l_gradient(Vec2 x) const {
  Vec2 g{};
  for (const auto &b : l)
    g += b.gradient(x);
  return g;
}

std::complex<double> GaugeElement::operator()(Vec2 x) const {
  return std::polar(1.0, n * std::atan2(x.y, x.x) + l_value(x));
}

FluxResult flux(const VectorPotential &pot, std::span<const double> radii) {
  if (radii.empty())
    throw DomainError("flux: no radii given");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > pot.r0))
      throw DomainError("flux: radii must exceed R0");
    if (i > 0 && !(radii[i] > radii[i - 1]))
      throw DomainError("flux: radii must be ascending");
  }
  double min_width = 1.0;
  for (const auto &b : pot.bumps)
    min_width = std::min(min_width, b.width);
  for (const auto &b : pot.grad_l)
    min_width = std::min(min_width, b.width);

  FluxResult res;
  res.radii.assign(radii.begin(), radii.end());
  for (double r : radii) {
    std::size_t nodes = 1024;
    while (static_cast<double>(nodes) < 8.0 * kTwoPi * r / min_width && nodes < (1u << 22))
      nodes *= 2;
    const double h = kTwoPi / static_cast<double>(nodes);
    double sum = 0.0;
    for (std::size_t k = 0; k < nodes; ++k) {
      const double t = h * static_cast<double>(k);
      const Vec2 dir{std::cos(t), std::sin(t)};
      const Vec2 tangent{-dir.y, dir.x};
      sum += dot(pot(dir * r), tangent) * r;
    }
    res.values.push_back(sum * h / kTwoPi);
  }
  res.estimate = res.values.back();
  if (res.values.size() >= 2) {
    const double var = std::abs(res.values.back() - res.values[res.values.size() - 2]);
    if (var > 1e-3) {
      res.converged = false;
      res.warning = "flux sequence not converged: top two radii differ by " + std::to_string(var);
    }
  }
  return res;
}

int winding_number(const std::function<std::complex<double>(Vec2)> &g, double r) {
  if (!(r > 0.0))
    throw DomainError("winding number: radius must be positive");
  constexpr std::size_t kCap = 1u << 22;
  for (std::size_t nodes = 256;; nodes *= 2) {
    const double h = kTwoPi / static_cast<double>(nodes);
    std::complex<double> prev = g(Vec2{r, 0.0});
    const std::complex<double> first = prev;
    double total = 0.0, worst = 0.0;
    for (std::size_t k = 1; k <= nodes; ++k) {
      const std::complex<double> cur = k == nodes ? first : g(from_angle(h * static_cast<double>(k)) * r);
      const double jump = std::arg(cur / prev);
      worst = std::max(worst, std::abs(jump));
      total += jump;
      prev = cur;
    }
    if (worst < kPi / 2.0 || (nodes >= kCap && worst < kPi))
      return static_cast<int>(std::lround(total / kTwoPi));
    if (nodes >= kCap)
      throw SamplingError("winding number: phase jump >= pi after refinement");
  }
}

int winding_number(const GaugeElement &g, double r) {
  return winding_number([&g](Vec2 x) { return g(x); }, r);
}

VectorPotential gauge_transform(const VectorPotential &pot, const GaugeElement &g) {
  VectorPotential out = pot;
  out.alpha += g.n;
  out.grad_l.insert(out.grad_l.end(), g.l.begin(), g.l.end());
  return out;
}

bool in_eikonal_domain(RaySign sign, Vec2 x, Vec2 xi, double delta) {
  const double nx = norm(x), nxi = norm(xi);
  if (!(nx > delta) || !(nxi > delta))
    return false;
  return sign_of(sign) * dot(x, xi) / (nx * nxi) >= -1.0 + delta;
}

double eikonal_phase(const EikonalPhase &phase, Vec2 x, Vec2 xi) {
  if (!in_eikonal_domain(phase.sign, x, xi))
    throw DomainError("eikonal phase: (x, xi) outside the admissible region");
  const double s = sign_of(phase.sign);
  const Vec2 d = xi * s;
  const VectorPotential &pot = phase.potential;

  // flux part: alpha cross(x, xi) int_0^inf ds / |x + s d|^2 = alpha * subtended angle
  const double flux = pot.alpha * std::atan2(cross(x, xi), s * dot(x, xi));

  auto stream = [&](const GaussianBump &b, Vec2 y) { return dot(stream_velocity(b, y), xi); };
  auto gauge = [&](const GaussianBump &b, Vec2 y) { return dot(b.gradient(y), xi); };
  const double smooth =
      ray_sum(pot.bumps, x, d, phase.s_max, phase.panels_per_width, stream) +
      ray_sum(pot.grad_l, x, d, phase.s_max, phase.panels_per_width, gauge);
  return -s * (flux + smooth);
}

double ray_field_integral(const EikonalPhase &phase, Vec2 x, Vec2 xi) {
  if (!in_eikonal_domain(phase.sign, x, xi))
    throw DomainError("ray field integral: (x, xi) outside the admissible region");
  const Vec2 d = xi * sign_of(phase.sign);
  auto field = [](const GaussianBump &b, Vec2 y) { return -b.laplacian(y); };
  return ray_sum(phase.potential.bumps, x, d, phase.s_max, phase.panels_per_width, field);
}

Vec2 eikonal_gradient_fd(const EikonalPhase &phase, Vec2 x, Vec2 xi) {
  const double h = 1e-5 * (1.0 + norm(x));
  const Vec2 ex{h, 0.0}, ey{0.0, h};
  return {(eikonal_phase(phase, x + ex, xi) - eikonal_phase(phase, x - ex, xi)) / (2.0 * h),
          (eikonal_phase(phase, x + ey, xi) - eikonal_phase(phase, x - ey, xi)) / (2.0 * h)};
}

Vec2 eikonal_gradient_formula(const EikonalPhase &phase, Vec2 x, Vec2 xi) {
  const double s = sign_of(phase.sign);
  const double ib = ray_field_integral(phase, x, xi);
  const Vec2 a = phase.potential(x);
  return {-s * xi.y * ib + a.x, s * xi.x * ib + a.y};
}

double phase_gradient_check(const EikonalPhase &phase, Vec2 x, Vec2 xi) {
  const Vec2 grad = eikonal_gradient_fd(phase, x, xi);
  return std::abs(dot(xi, grad - phase.potential(x)));
}

} // namespace abscat::gaugefield
