#include "rdsize/elicitation.hpp"

#include <algorithm>
#include <boost/math/distributions/students_t.hpp>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "rdsize/error.hpp"
#include "rdsize/special.hpp"

namespace rdsize {

double p_lower_bound(const ObservedData& obs, double N_hat) {
  const double n = obs.size();
  const double denom = n * N_hat - n * (n + 1.0) / 2.0;
  if (!(denom > 0.0)) throw std::domain_error("p_lower_bound: n N_hat - n(n+1)/2 must be positive");
  double numer = 0.0;
  for (int k = 0; k < obs.size(); ++k) {
    const int i = k + 1;
    numer += std::max(obs.recruits_made(k), obs.degree(k) - i + 1);
  }
  return numer / denom;
}

double solve_beta_tail(double alpha, double p_lo, double level) {
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(p_lo > 0.0 && p_lo < 1.0)) throw ConfigError("p_lo must lie in (0, 1)");
  if (!(level > 0.0 && level < 1.0)) throw ConfigError("level must lie in (0, 1)");
  // Pr(p > p_lo) = 1 - I_{p_lo}(alpha, beta) falls as beta grows.
  auto upper_tail = [&](double beta) { return 1.0 - special::incomplete_beta(alpha, beta, p_lo); };
  double lo = std::log(1e-6);
  double hi = std::log(1e12);
  while (upper_tail(std::exp(lo)) < level && lo > -700.0) lo -= 10.0;
  while (upper_tail(std::exp(hi)) > level && hi < 700.0) hi += 10.0;
  if (upper_tail(std::exp(lo)) < level || upper_tail(std::exp(hi)) > level)
    throw NumericalError("solve_beta_tail: cannot bracket the root");
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (upper_tail(std::exp(mid)) > level)
      lo = mid;
    else
      hi = mid;
  }
  return std::exp(0.5 * (lo + hi));
}

Priors moment_match_priors(double p, double lambda, double alpha, double v_lambda, double c) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must lie in (0, 1)");
  if (!(lambda > 0.0) || !(alpha > 0.0) || !(v_lambda > 0.0)) throw ConfigError("lambda, alpha and v must be positive");
  Priors out;
  out.alpha = alpha;
  out.beta = alpha * (1.0 - p) / p;
  out.eta = lambda * lambda / v_lambda;
  out.xi = lambda / v_lambda;
  out.c = c;
  out.gamma = -std::log(p / (1.0 - p));
  return out;
}

double estimate_N(std::int64_t du_total, int n, double p_bar) {
  if (!(p_bar > 0.0) || n <= 0) throw std::domain_error("estimate_N: need p_bar > 0 and n > 0");
  return (n + 1.0) / 2.0 + static_cast<double>(du_total) / (p_bar * n);
}

double estimate_p(std::int64_t du_total, int n, double N) {
  const double nd = n;
  const double denom = nd * N - nd * (nd + 1.0) / 2.0;
  if (!(denom > 0.0)) throw std::domain_error("estimate_p: n N - n(n+1)/2 must be positive");
  return static_cast<double>(du_total) / denom;
}

TrendFit degree_trend(std::span<const int> degrees, std::optional<int> max_degree) {
  std::vector<double> x, y;
  for (std::size_t k = 0; k < degrees.size(); ++k) {
    if (max_degree && degrees[k] > *max_degree) continue;
    x.push_back(static_cast<double>(k + 1));
    y.push_back(degrees[k]);
  }
  const std::size_t m = x.size();
  if (m < 3) throw std::domain_error("degree_trend: need at least three subjects");

  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    sxx += (x[k] - mx) * (x[k] - mx);
    sxy += (x[k] - mx) * (y[k] - my);
  }
  TrendFit fit;
  fit.used = static_cast<int>(m);
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double rss = 0.0;
  for (std::size_t k = 0; k < m; ++k) {
    const double r = y[k] - fit.intercept - fit.slope * x[k];
    rss += r * r;
  }
  const double df = static_cast<double>(m) - 2.0;
  fit.residual_sd = std::sqrt(rss / df);
  if (rss > 0.0) {
    fit.std_error = std::sqrt(rss / df / sxx);
    const double t = fit.slope / *fit.std_error;
    boost::math::students_t dist(df);
    fit.p_value = 2.0 * boost::math::cdf(boost::math::complement(dist, std::abs(t)));
  }
  return fit;
}

}  // namespace rdsize
