#include "abscat/xray.hpp"

#include "abscat/errors.hpp"
#include "abscat/parallel.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace abscat::xray {
namespace {

using gaugefield::GaussianBump;
using Kronrod = boost::math::quadrature::gauss_kronrod<double, 31>;

// Chord of the line within the bump's support, integrated adaptively.
template <class F>
double chord_integral(const GaussianBump &b, const LineSpec &line, F &&f) {
  const Vec2 rel = b.center - line.x0;
  const double mid = dot(rel, line.omega);
  const double dist = std::abs(cross(line.omega, rel));
  const double radius = b.support_radius();
  if (dist >= radius)
    return 0.0;
  const double half = std::sqrt(radius * radius - dist * dist);
  auto g = [&](double s) { return f(line.x0 + line.omega * s); };
  return Kronrod::integrate(g, mid - half, mid + half, 15, 1e-13);
}

} // namespace

LineSpec LineSpec::parallel_beam(double p, double phi) {
  const double c = std::cos(phi), s = std::sin(phi);
  return {Vec2{-s, c} * p, Vec2{c, s}};
}

void LineSpec::validate() const {
  if (std::abs(norm(omega) - 1.0) > 1e-12)
    throw DomainError("line direction must be a unit vector");
}

double line_integral_V(const VectorPotential &pot, const LineSpec &line) {
  line.validate();
  double total = 0.0;
  for (const GaussianBump &b : pot.scalar)
    total += chord_integral(b, line, [&](Vec2 y) { return b.value(y); });
  return total;
}

LinePhase line_integral_A(const VectorPotential &pot, const LineSpec &line) {
  line.validate();
  const double side = cross(line.x0, line.omega);
  if (std::abs(side) < 1e-12 * (1.0 + norm(line.x0)))
    throw DomainError("line passes through the flux origin");

  double raw = pot.alpha * std::numbers::pi * (side > 0.0 ? 1.0 : -1.0);
  for (const GaussianBump &b : pot.bumps)
    raw += chord_integral(b, line, [&](Vec2 y) { return cross(line.omega, b.gradient(y)); });
  for (const GaussianBump &b : pot.grad_l)
    raw += chord_integral(b, line, [&](Vec2 y) { return dot(b.gradient(y), line.omega); });
  return {raw, std::polar(1.0, raw)};
}

Sinogram::Sinogram(std::size_t np, std::size_t nphi, double pmax)
    : n_p(np), n_phi(nphi), p_max(pmax), values(np * nphi, 0.0) {
  if (np < 2 || nphi < 1 || !(pmax > 0.0))
    throw DomainError("sinogram: need n_p >= 2, n_phi >= 1 and p_max > 0");
}

double Sinogram::offset(std::size_t i) const {
  return -p_max + 2.0 * p_max * static_cast<double>(i) / static_cast<double>(n_p - 1);
}

double Sinogram::angle(std::size_t j) const {
  return std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_phi);
}

LineSpec Sinogram::line(std::size_t i, std::size_t j) const {
  return LineSpec::parallel_beam(offset(i), angle(j));
}

namespace {

template <class F>
Sinogram tabulate(std::size_t n_p, std::size_t n_phi, double p_max, unsigned threads, F &&f) {
  if (n_p < 64 || n_phi < 64)
    throw DomainError("sinogram grids must have at least 64 offsets and angles");
  Sinogram sino(n_p, n_phi, p_max);
  parallel_for(n_p, threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < n_phi; ++j)
      sino.at(i, j) = f(sino.line(i, j));
  });
  return sino;
}

} // namespace

Sinogram radon_forward(const VectorPotential &pot, std::size_t n_p, std::size_t n_phi,
                       double p_max, unsigned threads) {
  return tabulate(n_p, n_phi, p_max, threads,
                  [&](const LineSpec &l) { return line_integral_V(pot, l); });
}

Sinogram raw_phase_sinogram(const VectorPotential &pot, std::size_t n_p,
                            std::size_t n_phi, double p_max, unsigned threads) {
  return tabulate(n_p, n_phi, p_max, threads, [&](const LineSpec &l) {
    if (std::abs(cross(l.x0, l.omega)) < 1e-12 * (1.0 + norm(l.x0)))
      return std::numeric_limits<double>::quiet_NaN();
    return line_integral_A(pot, l).raw;
  });
}

ParityReport flux_parity_test(const Sinogram &raw1, const Sinogram &raw2,
                              double exclusion_radius) {
  if (raw1.n_p != raw2.n_p || raw1.n_phi != raw2.n_phi || raw1.p_max != raw2.p_max)
    throw DomainError("parity test: sinograms are on different line grids");

  ParityReport report;
  std::vector<double> turns;
  for (std::size_t i = 0; i < raw1.n_p; ++i) {
    const double p = raw1.offset(i);
    if (std::abs(p) < exclusion_radius)
      continue;
    // x0 x omega = -p for the parallel-beam family
    const double side = p < 0.0 ? 1.0 : -1.0;
    for (std::size_t j = 0; j < raw1.n_phi; ++j) {
      const double r1 = raw1.at(i, j), r2 = raw2.at(i, j);
      if (!std::isfinite(r1) || !std::isfinite(r2))
        continue;
      report.max_phase_discrepancy =
          std::max(report.max_phase_discrepancy, std::abs(std::polar(1.0, r2) - std::polar(1.0, r1)));
      turns.push_back(side * (r2 - r1) / std::numbers::pi);
    }
  }
  report.lines_used = turns.size();
  if (turns.empty())
    throw DomainError("parity test: no lines outside the exclusion radius");
  report.phases_match = report.max_phase_discrepancy <= 1e-6;
  if (!report.phases_match)
    return report;

  const long first = std::lround(turns.front());
  for (double t : turns) {
    const long k = std::lround(t);
    if (std::abs(t - static_cast<double>(k)) > 1e-6)
      throw DataInconsistencyError("parity test: raw difference is not a multiple of pi");
    if (k != first)
      throw DataInconsistencyError("parity test: integer differs across lines (" +
                                   std::to_string(first) + " vs " + std::to_string(k) + ")");
  }
  report.certificate = static_cast<int>(first);
  return report;
}

} // namespace abscat::xray
