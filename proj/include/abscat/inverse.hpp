#pragma once
// Flux recovery from scattering data and gauge-equivalence tests.

#include "abscat/smatrix.hpp"

#include <optional>
#include <span>
#include <vector>

namespace abscat::inverse {

using smatrix::KernelGrid;
using smatrix::PartialWaveSMatrix;
using smatrix::StripDomain;

struct FluxEstimate {
  double sin_pi_alpha = 0.0;
  std::optional<int> ceil_alpha;
  std::optional<double> alpha;
  double residual = 0.0;
};

//! Flip index and phase of the large-m eigenvalue. Exact on clean data.
//! IntegerFluxError when all eigenvalues agree within 1e-6; DomainError when
//! the flip lies at the window edge (need M > |alpha| + 2).
FluxEstimate recover_flux_from_modes(const PartialWaveSMatrix &s);
//! Extracts modes |m| <= M from the grid first.
FluxEstimate recover_flux_from_modes(const KernelGrid &g, int M = 8);

struct StripFit {
  std::vector<double> eps;       //!< descending
  std::vector<double> normalized; //!< -Re strip / ((b - a) log 2 / pi)
  FluxEstimate estimate;          //!< sin component only
};

//! Polynomial extrapolation to eps = 0 of the normalized strip integrals.
//! PerturbationTooSingularError when successive differences do not shrink.
StripFit fit_strips(const KernelGrid &g, std::span<const StripDomain> strips);
FluxEstimate recover_flux_from_strip(const KernelGrid &g, std::span<const StripDomain> strips);

struct ConjugationReport {
  int n = 0;
  double residual = 0.0;
  bool equivalent = false; //!< residual <= 1e-3
};

//! Winding n in [-n_range, n_range] minimizing
//!   max(|d2 - (-1)^n d1|, max_{j != k} |S2 - e^{i n (t_j - t_k - pi)} S1|).
ConjugationReport detect_conjugation(const KernelGrid &s1, const KernelGrid &s2, int n_range);

//! Strips a = 0, b = pi for each eps.
std::vector<StripDomain> default_strips(std::span<const double> eps);

struct Verdict {
  FluxEstimate estimate;
  //! |strip integral| / ((b - a) eps) of (e^{2 i m (t - t')} - 1) S, per strip.
  std::vector<double> witness_values;
  //! every witness value exceeds 1e-3
  bool witness = false;
};

//! Full flux identification: mode flip and phase for ceil(alpha) and alpha,
//! strips for sin(pi alpha), and the multiplied-kernel witness (m = 1).
//! DomainError unless the obstacle is declared convex.
Verdict identify_flux(const KernelGrid &g, bool obstacle_convex,
                      std::span<const StripDomain> strips, int M = 8);

} // namespace abscat::inverse
