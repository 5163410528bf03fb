#include "abscat/inverse.hpp"

#include "abscat/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace abscat::inverse {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDegenerate = 1e-6;
constexpr double kEquivalent = 1e-3;
// steps below this (normalized units) are treated as quadrature noise
constexpr double kSingularStepFloor = 1e-3;

// Least-squares polynomial of degree `deg` in x, evaluated at 0.
double extrapolate_to_zero(const std::vector<double> &x, const std::vector<double> &y, int deg) {
  const std::size_t cols = static_cast<std::size_t>(deg) + 1;
  std::vector<double> ata(cols * cols, 0.0), aty(cols, 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    std::vector<double> row(cols, 1.0);
    for (std::size_t c = 1; c < cols; ++c)
      row[c] = row[c - 1] * x[i];
    for (std::size_t r = 0; r < cols; ++r) {
      aty[r] += row[r] * y[i];
      for (std::size_t c = 0; c < cols; ++c)
        ata[r * cols + c] += row[r] * row[c];
    }
  }
  // Gaussian elimination with partial pivoting on the normal equations
  for (std::size_t p = 0; p < cols; ++p) {
    std::size_t best = p;
    for (std::size_t r = p + 1; r < cols; ++r)
      if (std::abs(ata[r * cols + p]) > std::abs(ata[best * cols + p]))
        best = r;
    for (std::size_t c = 0; c < cols; ++c)
      std::swap(ata[p * cols + c], ata[best * cols + c]);
    std::swap(aty[p], aty[best]);
    for (std::size_t r = p + 1; r < cols; ++r) {
      const double f = ata[r * cols + p] / ata[p * cols + p];
      for (std::size_t c = p; c < cols; ++c)
        ata[r * cols + c] -= f * ata[p * cols + c];
      aty[r] -= f * aty[p];
    }
  }
  std::vector<double> coef(cols);
  for (std::size_t r = cols; r-- > 0;) {
    double acc = aty[r];
    for (std::size_t c = r + 1; c < cols; ++c)
      acc -= ata[r * cols + c] * coef[c];
    coef[r] = acc / ata[r * cols + r];
  }
  return coef[0];
}

} // namespace

FluxEstimate recover_flux_from_modes(const PartialWaveSMatrix &s) {
  const auto eig = s.eigenvalues();
  if (eig.size() < 2)
    throw DomainError("flux recovery needs at least two modes");
  double spread = 0.0;
  for (const auto &a : eig)
    for (const auto &b : eig)
      spread = std::max(spread, std::abs(a - b));
  if (spread <= kDegenerate)
    throw IntegerFluxError("flux in Z, undetermined integer: all mode eigenvalues coincide");

  const smatrix::cplx upper = eig.back();
  const smatrix::cplx lower = eig.front();
  // smallest m from which every eigenvalue sits with the large-m limit
  int flip = s.last_mode();
  for (int m = s.last_mode(); m >= s.first_mode(); --m) {
    const auto v = s.eigenvalue(m);
    if (std::abs(v - upper) > std::abs(v - lower))
      break;
    flip = m;
  }
  if (flip == s.first_mode())
    throw DomainError("mode flip not inside the window; need M > |alpha| + 2");

  const double theta = std::arg(upper) / kPi; // alpha mod 2, in (-1, 1]
  const double shift = std::floor((flip - theta) / 2.0);
  double alpha = theta + 2.0 * shift;
  if (!(alpha > flip - 1))
    alpha += 2.0; // only reachable on noisy data

  FluxEstimate est;
  est.ceil_alpha = flip;
  est.alpha = alpha;
  est.sin_pi_alpha = std::sin(kPi * alpha);
  const smatrix::cplx up = std::polar(1.0, kPi * alpha), down = std::conj(up);
  for (int m = s.first_mode(); m <= s.last_mode(); ++m)
    est.residual = std::max(est.residual, std::abs(s.eigenvalue(m) - (m >= alpha ? up : down)));
  return est;
}

FluxEstimate recover_flux_from_modes(const KernelGrid &g, int M) {
  return recover_flux_from_modes(smatrix::extract_modes(g, M));
}

StripFit fit_strips(const KernelGrid &g, std::span<const StripDomain> strips) {
  if (strips.empty())
    throw DomainError("strip recovery needs at least one strip");
  std::vector<StripDomain> sorted(strips.begin(), strips.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const StripDomain &x, const StripDomain &y) { return x.eps > y.eps; });

  StripFit fit;
  for (const auto &s : sorted) {
    const auto value = smatrix::strip_integral(g, s);
    fit.eps.push_back(s.eps);
    fit.normalized.push_back(-value.real() * kPi / ((s.b - s.a) * std::log(2.0)));
  }
  const int deg = static_cast<int>(std::min<std::size_t>(fit.eps.size() - 1, 2));
  const double limit = deg == 0 ? fit.normalized.front()
                                : extrapolate_to_zero(fit.eps, fit.normalized, deg);

  // Shrinking eps should shrink the step between estimates; a step that stays
  // put (log growth) or grows means the perturbation is too singular.
  for (std::size_t k = 2; k < fit.normalized.size(); ++k) {
    const double prev = std::abs(fit.normalized[k - 1] - fit.normalized[k - 2]);
    const double step = std::abs(fit.normalized[k] - fit.normalized[k - 1]);
    if (step > kSingularStepFloor && step > 0.75 * prev)
      throw PerturbationTooSingularError(
          "strip estimates do not settle as eps shrinks");
  }

  fit.estimate.sin_pi_alpha = limit;
  fit.estimate.residual = std::abs(fit.normalized.back() - limit);
  return fit;
}

FluxEstimate recover_flux_from_strip(const KernelGrid &g, std::span<const StripDomain> strips) {
  return fit_strips(g, strips).estimate;
}

ConjugationReport detect_conjugation(const KernelGrid &s1, const KernelGrid &s2, int n_range) {
  if (s1.size() != s2.size())
    throw DomainError("conjugation test: grids differ in size");
  if (n_range < 0)
    throw DomainError("conjugation test: n_range must be >= 0");
  const std::size_t n = s1.size();
  const double h = s1.step();

  ConjugationReport best;
  best.residual = std::numeric_limits<double>::infinity();
  for (int w = -n_range; w <= n_range; ++w) {
    const double parity = (w % 2 == 0) ? 1.0 : -1.0;
    double res = std::abs(s2.delta_coeff() - parity * s1.delta_coeff());
    // e^{i w (t_j - t_k - pi)} depends on j - k only
    std::vector<smatrix::cplx> phase(n);
    for (std::size_t d = 0; d < n; ++d)
      phase[d] = parity * std::polar(1.0, w * h * static_cast<double>(d));
    for (std::size_t j = 0; j < n && res < best.residual; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (j == k)
          continue;
        const std::size_t d = (j + n - k) % n;
        res = std::max(res, std::abs(s2(j, k) - phase[d] * s1(j, k)));
      }
    if (res < best.residual) {
      best.residual = res;
      best.n = w;
    }
  }
  best.equivalent = best.residual <= kEquivalent;
  return best;
}

std::vector<StripDomain> default_strips(std::span<const double> eps) {
  std::vector<StripDomain> out;
  for (double e : eps)
    out.push_back({0.0, kPi, e});
  return out;
}

Verdict identify_flux(const KernelGrid &g, bool obstacle_convex,
                      std::span<const StripDomain> strips, int M) {
  if (!obstacle_convex)
    throw DomainError("flux identification requires a convex obstacle (pass the convexity flag)");

  const FluxEstimate modes = recover_flux_from_modes(g, M);
  const FluxEstimate strip = recover_flux_from_strip(g, strips);

  Verdict v;
  v.estimate = modes;
  v.estimate.sin_pi_alpha = strip.sin_pi_alpha;
  v.estimate.residual = std::max(modes.residual, std::abs(std::sin(kPi * *modes.alpha) - strip.sin_pi_alpha));

  // (e^{2i(t - t')} - 1) S: the delta part drops out
  const std::size_t n = g.size();
  KernelGrid multiplied(n, {0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      if (j != k)
        multiplied.set(j, k, (std::polar(1.0, 2.0 * (g.angle(j) - g.angle(k))) - 1.0) * g(j, k));
  v.witness = true;
  for (const auto &s : strips) {
    const double avg = std::abs(smatrix::strip_integral(multiplied, s)) / ((s.b - s.a) * s.eps);
    v.witness_values.push_back(avg);
    v.witness = v.witness && avg > 1e-3;
  }
  return v;
}

} // namespace abscat::inverse
