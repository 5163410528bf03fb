#include "abscat/smatrix.hpp"

#include "abscat/errors.hpp"
#include "abscat/simd/kernels.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

namespace abscat::smatrix {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr cplx kI{0.0, 1.0};

std::size_t wrap(long i, std::size_t n) {
  const long m = static_cast<long>(n);
  long r = i % m;
  if (r < 0)
    r += m;
  return static_cast<std::size_t>(r);
}

// Integrals of the hat functions centred on t_i = i h over [lo, hi]; with
// `inverse` the integrand carries the weight 1/t (requires 0 < lo).
std::vector<std::pair<long, double>> hat_weights(double lo, double hi, double h,
                                                 bool inverse) {
  std::vector<std::pair<long, double>> out;
  const long first = static_cast<long>(std::floor(lo / h));
  const long last = static_cast<long>(std::ceil(hi / h));
  for (long i = first; i <= last; ++i) {
    const double ti = static_cast<double>(i) * h;
    double w = 0.0;
    // rising piece on [t_{i-1}, t_i]: (t - t_{i-1}) / h
    {
      const double t0 = ti - h;
      const double p = std::max(lo, t0), q = std::min(hi, ti);
      if (q > p)
        w += inverse ? (q - p - t0 * std::log(q / p)) / h
                     : ((q - t0) * (q - t0) - (p - t0) * (p - t0)) / (2.0 * h);
    }
    // falling piece on [t_i, t_{i+1}]: (t_{i+1} - t) / h
    {
      const double t1 = ti + h;
      const double p = std::max(lo, ti), q = std::min(hi, t1);
      if (q > p)
        w += inverse ? (t1 * std::log(q / p) - (q - p)) / h
                     : ((t1 - p) * (t1 - p) - (t1 - q) * (t1 - q)) / (2.0 * h);
    }
    if (w != 0.0)
      out.emplace_back(i, w);
  }
  return out;
}

// Lagrange weights extrapolating samples at u = 1, 4, 9, 16 to u = 0.
constexpr std::array<double, 4> kExtrapolation{1.6, -0.8, 64.0 / 280.0, -36.0 / 1260.0};

} // namespace

int flux_ceiling(double alpha) { return static_cast<int>(std::ceil(alpha)); }

PartialWaveSMatrix::PartialWaveSMatrix(int first_mode, std::vector<cplx> eigenvalues,
                                       std::optional<double> alpha)
    : first_(first_mode), eig_(std::move(eigenvalues)), alpha_(alpha) {
  if (eig_.empty())
    throw DomainError("partial-wave S-matrix needs at least one mode");
}

cplx PartialWaveSMatrix::eigenvalue(int m) const {
  if (!contains(m))
    throw std::out_of_range("mode " + std::to_string(m) + " outside stored window");
  return eig_[static_cast<std::size_t>(m - first_)];
}

PartialWaveSMatrix build_partial_wave(double alpha, int M) {
  if (M < 1)
    throw DomainError("partial-wave cutoff M must be >= 1");
  const cplx up = std::polar(1.0, kPi * alpha);
  const cplx down = std::polar(1.0, -kPi * alpha);
  std::vector<cplx> eig;
  eig.reserve(static_cast<std::size_t>(2 * M + 1));
  for (int m = -M; m <= M; ++m)
    eig.push_back(static_cast<double>(m) >= alpha ? up : down);
  return {-M, std::move(eig), alpha};
}

PartialWaveSMatrix conjugate(const PartialWaveSMatrix &s, int n) {
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  std::vector<cplx> eig(s.eigenvalues().begin(), s.eigenvalues().end());
  for (cplx &v : eig)
    v *= sign;
  std::optional<double> alpha;
  if (s.alpha())
    alpha = *s.alpha() + n;
  return {s.first_mode() + n, std::move(eig), alpha};
}

cplx regular_kernel(double alpha, double t) {
  const double s = std::sin(kPi * alpha);
  if (s == 0.0)
    return {0.0, 0.0};
  const int c = flux_ceiling(alpha);
  // 1 / (1 - e^{it}) = 1/2 + (i/2) cot(t/2)
  const cplx inv = cplx{0.5, 0.5 / std::tan(0.5 * t)};
  return kI * (s / kPi) * std::polar(1.0, c * t) * inv;
}

cplx pv_trapezoid(std::span<const cplx> values, cplx diagonal_limit) {
  const std::size_t n = values.size();
  if (n < 2 || n % 2 != 0)
    throw DomainError("p.v. trapezoid needs an even node count");
  cplx sum = diagonal_limit;
  for (std::size_t k = 1; k < n / 2; ++k)
    sum += values[k] + values[n - k];
  sum += values[n / 2];
  return sum * (kTwoPi / static_cast<double>(n));
}

cplx apply_kernel_to_mode(double alpha, int m, int n_quad) {
  if (n_quad < 512 || n_quad % 2 != 0)
    throw DomainError("apply_kernel_to_mode: n_quad must be even and >= 512");
  const auto n = static_cast<std::size_t>(n_quad);
  const double h = kTwoPi / static_cast<double>(n);
  // integrand in t = theta - theta' at theta = 0: s(t) e^{-i m t}
  std::vector<cplx> values(n);
  for (std::size_t k = 1; k < n; ++k) {
    const double t = h * static_cast<double>(k);
    values[k] = regular_kernel(alpha, t) * std::polar(1.0, -m * t);
  }
  // R(t) ~ D / t + E with E = (i s/pi)(1/2 - c), D = -s/pi; phi(0) = 1, phi'(0) = -i m
  const double s = std::sin(kPi * alpha);
  const int c = flux_ceiling(alpha);
  const cplx even = kI * (s / kPi) * (0.5 - c);
  const cplx odd = -s / kPi;
  const cplx limit = even + odd * cplx{0.0, -static_cast<double>(m)};
  return std::cos(kPi * alpha) + pv_trapezoid(values, limit);
}

KernelGrid::KernelGrid(std::size_t n, cplx delta_coeff, std::optional<double> alpha_hint)
    : n_(n), delta_(delta_coeff), alpha_hint_(alpha_hint), values_(n * n) {
  if (n < 2)
    throw DomainError("kernel grid needs n >= 2");
}

double KernelGrid::step() const { return kTwoPi / static_cast<double>(n_); }

KernelGrid sample_kernel(double alpha, std::size_t n) {
  if (n < 64)
    throw DomainError("sample_kernel: n must be >= 64");
  KernelGrid g(n, std::cos(kPi * alpha), alpha);
  // circulant: entry (j, k) depends on (j - k) mod n only
  std::vector<cplx> by_offset(n);
  const double h = g.step();
  for (std::size_t d = 1; d < n; ++d)
    by_offset[d] = regular_kernel(alpha, h * static_cast<double>(d));
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t k = 0; k < n; ++k)
      g.set(j, k, by_offset[(j + n - k) % n]);
  return g;
}

KernelGrid conjugate(const KernelGrid &g, int n) {
  const std::size_t size = g.size();
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  std::optional<double> hint;
  if (g.alpha_hint())
    hint = *g.alpha_hint() + n;
  KernelGrid out(size, g.delta_coeff() * sign, hint);
  const double h = g.step();
  for (std::size_t j = 0; j < size; ++j)
    for (std::size_t k = 0; k < size; ++k) {
      if (j == k)
        continue;
      const double t = h * (static_cast<double>(j) - static_cast<double>(k));
      out.set(j, k, g(j, k) * std::polar(1.0, n * (t - kPi)));
    }
  return out;
}

void StripDomain::validate() const {
  if (!(a < b))
    throw DomainError("strip: need a < b");
  if (!(eps > 0.0 && eps < kPi / 4.0))
    throw DomainError("strip: eps must lie in (0, pi/4)");
  if (!(2.0 * eps < b - a))
    throw DomainError("strip: need 2 eps < b - a");
}

cplx strip_integral(const KernelGrid &g, const StripDomain &strip) {
  strip.validate();
  const std::size_t n = g.size();
  const double h = g.step();
  if (strip.eps < 4.0 * h * (1.0 - 1e-12))
    throw ResolutionError("strip: eps " + std::to_string(strip.eps) +
                          " below 4 grid steps (" + std::to_string(4.0 * h) + ")");

  const auto theta_w = hat_weights(strip.a, strip.b, h, false);
  const auto tau_w = hat_weights(strip.eps, 2.0 * strip.eps, h, true);
  // weight on R(theta_i, theta_i - tau_d) is (product weight) * tau_d
  std::vector<double> w(tau_w.size());
  for (std::size_t q = 0; q < tau_w.size(); ++q)
    w[q] = tau_w[q].second * h * static_cast<double>(tau_w[q].first);

  const auto &kern = simd::kernels();
  std::vector<cplx> buf(tau_w.size());
  cplx total{0.0, 0.0};
  for (const auto &[i, wt] : theta_w) {
    const std::size_t j = wrap(i, n);
    for (std::size_t q = 0; q < tau_w.size(); ++q)
      buf[q] = g(j, wrap(i - tau_w[q].first, n));
    total += wt * kern.weighted_sum(w.data(), buf.data(), buf.size());
  }
  return total;
}

DiagonalLimits diagonal_limits(const KernelGrid &g, std::size_t j) {
  const std::size_t n = g.size();
  if (n < 16)
    throw ResolutionError("diagonal limits need n >= 16");
  DiagonalLimits lim{{0.0, 0.0}, {0.0, 0.0}};
  const double h = g.step();
  for (std::size_t d = 1; d <= 4; ++d) {
    // t = +d h  <->  theta' = theta_j - d h
    const cplx plus = g(j, (j + n - d) % n);
    const cplx minus = g(j, (j + d) % n);
    const double t = h * static_cast<double>(d);
    lim.even += kExtrapolation[d - 1] * 0.5 * (plus + minus);
    lim.odd += kExtrapolation[d - 1] * 0.5 * t * (plus - minus);
  }
  return lim;
}

PartialWaveSMatrix extract_modes(const KernelGrid &g, int M) {
  if (M < 1)
    throw DomainError("extract_modes: M must be >= 1");
  const std::size_t n = g.size();
  const double h = g.step();
  const auto &kern = simd::kernels();

  std::vector<DiagonalLimits> limits(n);
  for (std::size_t j = 0; j < n; ++j)
    limits[j] = diagonal_limits(g, j);

  std::vector<cplx> eig;
  std::vector<cplx> wave(n);
  for (int m = -M; m <= M; ++m) {
    for (std::size_t k = 0; k < n; ++k)
      wave[k] = std::polar(1.0, m * h * static_cast<double>(k));
    cplx acc{0.0, 0.0};
    for (std::size_t j = 0; j < n; ++j) {
      const cplx row = kern.complex_dot(g.row(j).data(), wave.data(), n);
      const cplx node = limits[j].even + limits[j].odd * cplx{0.0, -static_cast<double>(m)};
      acc += (row * std::conj(wave[j]) + node) * h;
    }
    eig.push_back(g.delta_coeff() + acc / static_cast<double>(n));
  }
  return {-M, std::move(eig), g.alpha_hint()};
}

SampledAmplitude sample_amplitude(const Amplitude &F, std::size_t n) {
  SampledAmplitude s;
  s.n = n;
  s.f.resize(n * n);
  s.df.resize(n * n);
  const double h = kTwoPi / static_cast<double>(n);
  constexpr double d = 1e-3;
  for (std::size_t l = 0; l < n; ++l) {
    const double t = h * static_cast<double>(l);
    for (std::size_t k = 0; k < n; ++k) {
      const double w = h * static_cast<double>(k);
      s.f[l * n + k] = F(t, w);
      s.df[l * n + k] = (8.0 * (F(t + d, w) - F(t - d, w)) - (F(t + 2 * d, w) - F(t - 2 * d, w))) /
                        (12.0 * d);
    }
  }
  return s;
}

KernelGrid compose_with_amplitude(const KernelGrid &g, const SampledAmplitude &F) {
  const std::size_t n = g.size();
  if (F.n != n || F.f.size() != n * n || F.df.size() != n * n)
    throw DomainError("compose: amplitude grid does not match kernel grid");
  const double h = g.step();
  const auto &kern = simd::kernels();

  // transpose so column k of F is contiguous
  std::vector<cplx> ft(n * n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k)
      ft[k * n + l] = F.f[l * n + k];

  KernelGrid out = g;
  for (std::size_t j = 0; j < n; ++j) {
    const DiagonalLimits lim = diagonal_limits(g, j);
    for (std::size_t k = 0; k < n; ++k) {
      if (j == k)
        continue;
      const cplx fjk = F.f[j * n + k];
      // phi(t) = F(theta_j - t, omega_k), phi'(0) = -dF/dtheta
      const cplx node = lim.even * fjk - lim.odd * F.df[j * n + k];
      const cplx pv = (kern.complex_dot(g.row(j).data(), ft.data() + k * n, n) + node) * h;
      out.set(j, k, g(j, k) - kTwoPi * kI * (g.delta_coeff() * fjk + pv));
    }
  }
  return out;
}

KernelGrid compose_with_amplitude(const KernelGrid &g, const Amplitude &F) {
  return compose_with_amplitude(g, sample_amplitude(F, g.size()));
}

} // namespace abscat::smatrix
