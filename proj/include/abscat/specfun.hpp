#pragma once
#include <cstddef>
#include <vector>

namespace abscat::specfun {

inline constexpr double kMaxArgument = 1.0e4;
inline constexpr double kMaxOrder = 1.0e4;

//! Non-negative real Bessel order. Construction rejects negative, NaN or
//! orders above kMaxOrder with DomainError.
class BesselOrder {
public:
  explicit BesselOrder(double nu);
  double value() const { return nu_; }

private:
  double nu_;
};

//! Gamma function for x > 0 (Lanczos, g = 7). DomainError for x <= 0.
double gamma(double x);
//! log Gamma(x) for x > 0.
double log_gamma(double x);

//! Bessel function of the first kind J_nu(x), nu >= 0, 0 <= x <= kMaxArgument.
/*! Ascending series where its terms shrink quickly (x <= 12 or
    (x/2)^2 <= nu + 1); Miller backward recurrence with the Neumann-series
    normalisation otherwise. Absolute error is below 1e-10 on
    nu in [0, 200], x in [0, 500]. */
double bessel_j(BesselOrder order, double x);
inline double bessel_j(double nu, double x) { return bessel_j(BesselOrder(nu), x); }

//! J_{nu0 + k}(x) for k = 0 .. count-1 from a single backward sweep.
std::vector<double> bessel_j_ladder(BesselOrder nu0, std::size_t count, double x);

} // namespace abscat::specfun
