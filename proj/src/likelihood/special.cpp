#include "rdsize/special.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <boost/math/special_functions/beta.hpp>

namespace rdsize::special {
namespace {

constexpr double kHalfLog2Pi = 0.91893853320467274178032973640562;

// Stirling correction: log Gamma(x) - [(x - 1/2) log x - x + log(2 pi)/2].
double stirling_correction(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  return r * (1.0 / 12 +
              r2 * (-1.0 / 360 +
                    r2 * (1.0 / 1260 +
                          r2 * (-1.0 / 1680 + r2 * (1.0 / 1188 + r2 * (-691.0 / 360360 + r2 * (1.0 / 156)))))));
}

void require_positive(double x, const char* what) {
  if (!(x > 0.0)) throw std::domain_error(std::string(what) + ": argument must be positive");
}

}  // namespace

double log_gamma_asymptotic(double x) {
  return (x - 0.5) * std::log(x) - x + kHalfLog2Pi + stirling_correction(x);
}

double digamma_asymptotic(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  const double tail =
      r2 * (1.0 / 12 +
            r2 * (-1.0 / 120 +
                  r2 * (1.0 / 252 + r2 * (-1.0 / 240 + r2 * (1.0 / 132 + r2 * (-691.0 / 32760 + r2 * (1.0 / 12)))))));
  return std::log(x) - 0.5 * r - tail;
}

double trigamma_asymptotic(double x) {
  const double r = 1.0 / x;
  const double r2 = r * r;
  const double tail =
      r2 * r * (1.0 / 6 +
                r2 * (-1.0 / 30 +
                      r2 * (1.0 / 42 + r2 * (-1.0 / 30 + r2 * (5.0 / 66 + r2 * (-691.0 / 2730 + r2 * (7.0 / 6)))))));
  return r + 0.5 * r2 + tail;
}

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x >= kAsymptoticFrom) return log_gamma_asymptotic(x);
  double prod = 1.0;
  while (x < kAsymptoticFrom) {
    prod *= x;
    x += 1.0;
  }
  return log_gamma_asymptotic(x) - std::log(prod);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  while (x < kAsymptoticFrom) {
    shift += 1.0 / x;
    x += 1.0;
  }
  return digamma_asymptotic(x) - shift;
}

double trigamma(double x) {
  require_positive(x, "trigamma");
  double shift = 0.0;
  while (x < kAsymptoticFrom) {
    shift += 1.0 / (x * x);
    x += 1.0;
  }
  return trigamma_asymptotic(x) + shift;
}

double log_beta(double a, double b) {
  require_positive(a, "log_beta");
  require_positive(b, "log_beta");
  const double p = std::min(a, b);
  const double q = std::max(a, b);
  const double total = p + q;
  if (p >= kAsymptoticFrom) {
    const double corr = stirling_correction(p) + stirling_correction(q) - stirling_correction(total);
    return -0.5 * std::log(q) + kHalfLog2Pi + corr + (p - 0.5) * std::log(p / total) + q * std::log1p(-p / total);
  }
  if (q >= kAsymptoticFrom) {
    const double corr = stirling_correction(q) - stirling_correction(total);
    return log_gamma(p) + corr + p - p * std::log(total) + (q - 0.5) * std::log1p(-p / total);
  }
  return log_gamma(p) + log_gamma(q) - log_gamma(total);
}

double log_choose(double n, double k) {
  if (k < 0.0 || k > n) throw std::domain_error("log_choose: need 0 <= k <= n");
  if (k == 0.0 || k == n) return 0.0;
  return -std::log1p(n) - log_beta(k + 1.0, n - k + 1.0);
}

double incomplete_beta(double a, double b, double x) {
  require_positive(a, "incomplete_beta");
  require_positive(b, "incomplete_beta");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  return boost::math::ibeta(a, b, x);
}

}  // namespace rdsize::special
