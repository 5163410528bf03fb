#pragma once
// Line integrals of V and A . omega over the parallel-beam line family
//   x0 = p (-sin phi, cos phi),  omega = (cos phi, sin phi),
// sinograms, filtered back-projection and the flux parity test.

#include "abscat/gaugefield.hpp"
#include "abscat/vec2.hpp"

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace abscat::xray {

using gaugefield::VectorPotential;

struct LineSpec {
  Vec2 x0;
  Vec2 omega;
  static LineSpec parallel_beam(double p, double phi);
  //! DomainError unless |omega| = 1.
  void validate() const;
};

//! int V(x0 + s omega) ds, each Gaussian integrated adaptively over the
//! chord where its envelope exceeds 1e-14.
double line_integral_V(const VectorPotential &pot, const LineSpec &line);

struct LinePhase {
  double raw = 0.0;
  std::complex<double> phase;
};

//! raw = int A . omega ds; the flux part contributes alpha pi sgn(x0 x omega).
//! DomainError if the line passes through the origin.
LinePhase line_integral_A(const VectorPotential &pot, const LineSpec &line);

//! Real samples on offsets p_i = -p_max + i * 2 p_max / (n_p - 1) and angles
//! phi_j = j pi / n_phi; values[i * n_phi + j].
struct Sinogram {
  std::size_t n_p = 0;
  std::size_t n_phi = 0;
  double p_max = 0.0;
  std::vector<double> values;

  Sinogram() = default;
  Sinogram(std::size_t n_p, std::size_t n_phi, double p_max);
  double offset(std::size_t i) const;
  double angle(std::size_t j) const;
  LineSpec line(std::size_t i, std::size_t j) const;
  double &at(std::size_t i, std::size_t j) { return values[i * n_phi + j]; }
  double at(std::size_t i, std::size_t j) const { return values[i * n_phi + j]; }
};

//! Sinogram of V. DomainError for n_p or n_phi below 64.
Sinogram radon_forward(const VectorPotential &pot, std::size_t n_p, std::size_t n_phi,
                       double p_max, unsigned threads = 0);

//! Raw A . omega integrals. Lines through the origin (p = 0) are stored as NaN.
Sinogram raw_phase_sinogram(const VectorPotential &pot, std::size_t n_p,
                            std::size_t n_phi, double p_max, unsigned threads = 0);

//! grid_n x grid_n pixels covering [-p_max, p_max]^2, row-major with row = x2.
struct Reconstruction {
  std::size_t n = 0;
  double extent = 0.0;
  std::vector<double> values;
  std::vector<std::string> warnings;

  double pixel_size() const { return 2.0 * extent / static_cast<double>(n); }
  Vec2 pixel_center(std::size_t row, std::size_t col) const;
  double at(std::size_t row, std::size_t col) const { return values[row * n + col]; }
};

//! Filtered back-projection with a Ram-Lak filter and Hann apodization.
//! Warnings are attached when angles or offsets undersample the grid.
Reconstruction radon_invert(const Sinogram &sino, std::size_t grid_n, unsigned threads = 0);

struct ParityReport {
  bool phases_match = false;
  double max_phase_discrepancy = 0.0;
  //! (raw2 - raw1) / pi on lines passing the origin on the side x0 x omega > 0.
  int certificate = 0;
  std::size_t lines_used = 0;
};

//! Compares two raw A-sinograms on lines with |p| >= exclusion_radius.
//! phases_match is false (mismatch report) when some |e^{i raw2} - e^{i raw1}|
//! exceeds 1e-6. DataInconsistencyError when the per-line integers disagree
//! or are not integers.
ParityReport flux_parity_test(const Sinogram &raw1, const Sinogram &raw2,
                              double exclusion_radius);

} // namespace abscat::xray
