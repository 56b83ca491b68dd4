#include <cmath>

#include "rdsize/error.hpp"
#include "rdsize/sampler.hpp"

namespace rdsize {
namespace {

double golden_section_max(const NConditional& cond, double lo, double hi) {
  const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - ratio * (b - a);
  double x2 = a + ratio * (b - a);
  double f1 = cond.value(x1);
  double f2 = cond.value(x2);
  for (int it = 0; it < 300 && (b - a) > 1e-9 * std::max(1.0, a); ++it) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + ratio * (b - a);
      f2 = cond.value(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - ratio * (b - a);
      f1 = cond.value(x1);
    }
  }
  return 0.5 * (a + b);
}

double bracket_and_search(const NConditional& cond, double N_min, double start) {
  double hi = std::max(start, N_min + 1.0);
  while (cond.d1(hi) > 0.0) {
    hi *= 2.0;
    if (hi > 1e15) throw NumericalError("cannot bracket the mode of the N conditional");
  }
  return golden_section_max(cond, N_min, hi);
}

}  // namespace

NMode newton_mode_N(const NConditional& cond, double N_min, double variance_floor) {
  NMode out;
  if (cond.d1(N_min) <= 0.0) {
    out.N_hat = N_min;
  } else {
    double x = std::max(N_min, 2.0 * cond.size());
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
      const double g = cond.d1(x);
      const double h = cond.d2(x);
      if (!std::isfinite(g) || !std::isfinite(h) || h >= 0.0) break;
      double next = x - g / h;
      if (next < N_min) next = N_min;
      if (std::abs(next - x) <= 1e-10 * std::max(1.0, x)) {
        x = next;
        converged = true;
        break;
      }
      x = next;
    }
    if (converged && x == N_min && cond.d1(N_min) > 0.0) converged = false;
    out.N_hat = converged ? x : bracket_and_search(cond, N_min, x);
  }

  const double h = cond.d2(out.N_hat);
  double v = -1.0 / h;
  if (!std::isfinite(v) || v <= out.N_hat) v = std::max(std::isfinite(v) ? v : 0.0, variance_floor * out.N_hat);
  out.variance = v;
  return out;
}

}  // namespace rdsize
