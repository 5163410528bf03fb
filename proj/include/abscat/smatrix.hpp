#pragma once
// Aharonov-Bohm scattering kernel
//   s_alpha(t) = cos(pi alpha) delta(t)
//              + (i sin(pi alpha) / pi) p.v. e^{i [[alpha]] t} / (1 - e^{i t}),
// its diagonal form on angular modes e^{i m t}, and grid quadratures of it.

#include <complex>
#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace abscat::smatrix {

using cplx = std::complex<double>;

//! [[alpha]]: least integer >= alpha.
int flux_ceiling(double alpha);

//! Diagonal unitary operator on modes m in [first, first + size).
class PartialWaveSMatrix {
public:
  PartialWaveSMatrix(int first_mode, std::vector<cplx> eigenvalues,
                     std::optional<double> alpha = std::nullopt);

  int first_mode() const { return first_; }
  int last_mode() const { return first_ + static_cast<int>(eig_.size()) - 1; }
  std::size_t size() const { return eig_.size(); }
  bool contains(int m) const { return m >= first_ && m <= last_mode(); }
  //! std::out_of_range outside the stored window.
  cplx eigenvalue(int m) const;
  std::span<const cplx> eigenvalues() const { return eig_; }
  std::optional<double> alpha() const { return alpha_; }

private:
  int first_;
  std::vector<cplx> eig_;
  std::optional<double> alpha_;
};

//! e^{i pi alpha} for m >= alpha, e^{-i pi alpha} for m < alpha, m in [-M, M].
PartialWaveSMatrix build_partial_wave(double alpha, int M);

//! e^{i n theta} S e^{-i n (theta + pi)}: mode m+n carries (-1)^n lambda_m.
PartialWaveSMatrix conjugate(const PartialWaveSMatrix &s, int n);

//! Regular (off-delta) part of s_alpha at angle difference t, t != 0 mod 2 pi.
cplx regular_kernel(double alpha, double t);

//! Corrected symmetric-pair trapezoid for p.v. int_{-pi}^{pi} R(t) phi(t) dt.
/*! `values[k]` holds R(t_k) phi(t_k) at t_k = 2 pi k / n (k = 1 .. n-1, index
    0 ignored). The singular node is replaced by its symmetric limit
    `diagonal_limit` = lim (R(t) phi(t) + R(-t) phi(-t)) / 2. Spectrally
    accurate for smooth periodic phi when R ~ c / t + smooth. */
cplx pv_trapezoid(std::span<const cplx> values, cplx diagonal_limit);

//! int s_alpha(0 - t') e^{i m t'} dt' by p.v. quadrature with n_quad nodes
//! (even, >= 512) plus the analytic delta contribution cos(pi alpha).
cplx apply_kernel_to_mode(double alpha, int m, int n_quad);

//! Kernel sampled on the uniform grid theta_j = 2 pi j / n.
//! Diagonal entries are not data (distributional) and are stored as 0.
class KernelGrid {
public:
  KernelGrid(std::size_t n, cplx delta_coeff,
             std::optional<double> alpha_hint = std::nullopt);

  std::size_t size() const { return n_; }
  double step() const;
  double angle(std::size_t j) const { return step() * static_cast<double>(j); }
  cplx delta_coeff() const { return delta_; }
  void set_delta_coeff(cplx d) { delta_ = d; }
  std::optional<double> alpha_hint() const { return alpha_hint_; }
  void set_alpha_hint(std::optional<double> a) { alpha_hint_ = a; }
  static bool valid(std::size_t j, std::size_t k) { return j != k; }

  cplx operator()(std::size_t j, std::size_t k) const { return values_[j * n_ + k]; }
  //! Writes to the diagonal are ignored.
  void set(std::size_t j, std::size_t k, cplx v) {
    if (j != k)
      values_[j * n_ + k] = v;
  }
  std::span<const cplx> row(std::size_t j) const {
    return {values_.data() + j * n_, n_};
  }
  std::span<const cplx> data() const { return values_; }

private:
  std::size_t n_;
  cplx delta_;
  std::optional<double> alpha_hint_;
  std::vector<cplx> values_;
};

//! DomainError for n < 64.
KernelGrid sample_kernel(double alpha, std::size_t n);

//! e^{i n (theta - theta' - pi)} applied entrywise; delta picks up (-1)^n.
KernelGrid conjugate(const KernelGrid &g, int n);

//! Pi_eps = {a < theta < b, eps < theta - theta' < 2 eps}.
struct StripDomain {
  double a = 0.0;
  double b = 0.0;
  double eps = 0.0;
  //! DomainError unless a < b, 2 eps < b - a and 0 < eps < pi/4.
  void validate() const;
};

//! Product-integration quadrature of the regular kernel part over Pi_eps
//! (piecewise-linear in theta; tau * kernel piecewise-linear in tau against
//! the exact 1/tau weight). ResolutionError when eps < 4 * 2 pi / n.
cplx strip_integral(const KernelGrid &g, const StripDomain &strip);

//! Symmetric and antisymmetric diagonal limits of row j:
//!   even = lim (R(t) + R(-t)) / 2,  odd = lim t (R(t) - R(-t)) / 2,
//! with R(t) = g(theta_j, theta_j - t), by extrapolation in t^2 from the four
//! nearest off-diagonal pairs.
struct DiagonalLimits {
  cplx even;
  cplx odd;
};
DiagonalLimits diagonal_limits(const KernelGrid &g, std::size_t j);

//! <e_m, S e_m> / 2 pi averaged over rows, for m in [-M, M].
PartialWaveSMatrix extract_modes(const KernelGrid &g, int M);

//! F sampled on the grid: f[l * n + k] = F(theta_l, omega_k), with its
//! theta-derivative df in the same layout.
struct SampledAmplitude {
  std::size_t n = 0;
  std::vector<cplx> f;
  std::vector<cplx> df;
};

using Amplitude = std::function<cplx(double theta, double omega)>;

//! Samples F and dF/dtheta (fourth-order central difference) on the grid.
SampledAmplitude sample_amplitude(const Amplitude &F, std::size_t n);

//! Full S-matrix kernel: delta part unchanged, regular part
//!   R - 2 pi i (delta F + p.v. int R(theta, theta') F(theta', omega) dtheta').
KernelGrid compose_with_amplitude(const KernelGrid &g, const SampledAmplitude &F);
KernelGrid compose_with_amplitude(const KernelGrid &g, const Amplitude &F);

} // namespace abscat::smatrix
