#include "abscat/specfun.hpp"

#include "abscat/errors.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace abscat::specfun {
namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos{
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

// Lanczos sum A(z) for Gamma(z + 1).
double lanczos_sum(double z) {
  double a = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i)
    a += kLanczos[i] / (z + static_cast<double>(i));
  return a;
}

void check_argument(double x) {
  if (!(x >= 0.0) || x > kMaxArgument)
    throw DomainError("bessel_j: argument " + std::to_string(x) +
                      " outside [0, 1e4]");
}

bool series_region(double nu, double x) {
  const double h = 0.5 * x;
  return x <= 12.0 || h * h <= nu + 1.0;
}

double series(double nu, double x) {
  if (x == 0.0)
    return nu == 0.0 ? 1.0 : 0.0;
  const double h = 0.5 * x;
  double term = nu < 100.0 ? std::pow(h, nu) / gamma(nu + 1.0)
                           : std::exp(nu * std::log(h) - log_gamma(nu + 1.0));
  if (term == 0.0)
    return 0.0;
  const double h2 = h * h;
  double sum = term;
  for (int k = 1; k < 500; ++k) {
    term *= -h2 / (static_cast<double>(k) * (nu + static_cast<double>(k)));
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum) && static_cast<double>(k) > h)
      break;
  }
  return sum;
}

// Miller recurrence. Fills out[k] = J_{mu + first + k}(x), k < out.size().
void miller(double mu, std::size_t first, double x, std::vector<double> &out) {
  const std::size_t top = first + out.size() - 1;
  const double reach = std::max(static_cast<double>(top) + mu, x);
  const auto start = static_cast<std::size_t>(
      std::ceil(reach + 32.0 + std::sqrt(60.0 * reach)));

  // Neumann normalisation coefficients c_j for orders mu + 2j.
  const std::size_t half = start / 2 + 1;
  std::vector<double> coef(half + 1);
  coef[0] = gamma(mu + 1.0);
  double g = coef[0]; // Gamma(mu + j) / j!
  for (std::size_t j = 1; j <= half; ++j) {
    if (j > 1)
      g *= (mu + static_cast<double>(j) - 1.0) / static_cast<double>(j);
    coef[j] = (mu + 2.0 * static_cast<double>(j)) * g;
  }

  constexpr double kBig = 1e250;
  constexpr double kRescale = 1e-250;
  double f_above = 0.0;
  double f = 1e-30;
  double norm = 0.0;
  const double two_over_x = 2.0 / x;
  for (std::size_t k = start;; --k) {
    if (k % 2 == 0)
      norm += coef[k / 2] * f;
    if (k >= first && k <= top)
      out[k - first] = f;
    if (k == 0)
      break;
    const double f_below = two_over_x * (mu + static_cast<double>(k)) * f - f_above;
    f_above = f;
    f = f_below;
    if (std::abs(f) > kBig) {
      f *= kRescale;
      f_above *= kRescale;
      norm *= kRescale;
      for (std::size_t i = (k - 1 > first ? k - 1 - first : 0); i < out.size(); ++i)
        out[i] *= kRescale;
    }
  }
  const double scale = std::pow(0.5 * x, mu) / norm;
  for (double &v : out)
    v *= scale;
}

} // namespace

BesselOrder::BesselOrder(double nu) : nu_(nu) {
  if (!(nu >= 0.0) || nu > kMaxOrder)
    throw DomainError("bessel order " + std::to_string(nu) +
                      " outside [0, 1e4]");
}

double gamma(double x) {
  if (!(x > 0.0))
    throw DomainError("gamma: argument must be positive");
  if (x > 171.6)
    return HUGE_VAL;
  if (x < 0.5) // reflection keeps the Lanczos sum in its accurate range
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * gamma(1.0 - x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  // t^(z+1/2) overflows before gamma does; split the power
  const double half_pow = std::pow(t, 0.5 * (z + 0.5));
  return std::sqrt(2.0 * std::numbers::pi) * half_pow * (std::exp(-t) * half_pow) *
         lanczos_sum(z);
}

double log_gamma(double x) {
  if (!(x > 0.0))
    throw DomainError("log_gamma: argument must be positive");
  if (x < 0.5)
    return std::log(gamma(x));
  const double z = x - 1.0;
  const double t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
         std::log(lanczos_sum(z));
}

double bessel_j(BesselOrder order, double x) {
  check_argument(x);
  const double nu = order.value();
  if (series_region(nu, x))
    return series(nu, x);
  const double fl = std::floor(nu);
  std::vector<double> out(1);
  miller(nu - fl, static_cast<std::size_t>(fl), x, out);
  return out[0];
}

std::vector<double> bessel_j_ladder(BesselOrder nu0, std::size_t count, double x) {
  check_argument(x);
  std::vector<double> out(count);
  if (count == 0)
    return out;
  const double nu = nu0.value();
  BesselOrder(nu + static_cast<double>(count - 1)); // range check on the top order
  if (x <= 12.0) {
    for (std::size_t k = 0; k < count; ++k)
      out[k] = series(nu + static_cast<double>(k), x);
    return out;
  }
  const double fl = std::floor(nu);
  miller(nu - fl, static_cast<std::size_t>(fl), x, out);
  return out;
}

} // namespace abscat::specfun
