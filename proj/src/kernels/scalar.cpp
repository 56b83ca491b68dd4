#include <cmath>

#include "kernels/impl.hpp"
#include "rdsize/special.hpp"

namespace rdsize::kernels::scalar {

double sum_log_ratio(const double* s, std::size_t len, double delta) {
  double acc = 0.0;
  for (std::size_t k = 0; k < len; ++k) acc += std::log((s[k] + delta) / s[k]);
  return acc;
}

double gamma_diff_sum(GammaFn fn, double shift, const double* hi, const double* lo, std::size_t len) {
  double acc = 0.0;
  switch (fn) {
    case GammaFn::log_gamma:
      for (std::size_t k = 0; k < len; ++k)
        acc += special::log_gamma(shift + hi[k]) - special::log_gamma(shift + lo[k]);
      break;
    case GammaFn::digamma:
      for (std::size_t k = 0; k < len; ++k)
        acc += special::digamma(shift + hi[k]) - special::digamma(shift + lo[k]);
      break;
    case GammaFn::trigamma:
      for (std::size_t k = 0; k < len; ++k)
        acc += special::trigamma(shift + hi[k]) - special::trigamma(shift + lo[k]);
      break;
  }
  return acc;
}

}  // namespace rdsize::kernels::scalar
