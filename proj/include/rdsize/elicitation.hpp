#pragma once

#include <cstdint>
#include <optional>
#include <span>

#include "rdsize/likelihood.hpp"
#include "rdsize/observed_data.hpp"

namespace rdsize {

// Lower bound on the edge probability given a prior guess N_hat of N:
// sum_i max(r_i, d_i - i + 1) / (n N_hat - n(n+1)/2), 1-based i, r_i the
// number of recruits of subject i. Throws std::domain_error when the
// denominator is not positive.
double p_lower_bound(const ObservedData& obs, double N_hat);

// beta with Pr(p > p_lo | alpha, beta) = level, by bisection in log beta.
double solve_beta_tail(double alpha, double p_lo, double level = 0.99);

// alpha, beta = alpha (1-p)/p, eta = lambda^2/v, xi = lambda/v,
// gamma = -log(p/(1-p)).
Priors moment_match_priors(double p, double lambda, double alpha, double v_lambda, double c);

// (n+1)/2 + D / (p_bar n)
double estimate_N(std::int64_t du_total, int n, double p_bar);
// D / (n N - n(n+1)/2)
double estimate_p(std::int64_t du_total, int n, double N);

struct TrendFit {
  double slope = 0.0;
  double intercept = 0.0;
  std::optional<double> std_error;  // empty when the fit has no residual variance
  std::optional<double> p_value;    // two-sided, t with n-2 df
  int used = 0;                     // subjects left after the outlier filter
  double residual_sd = 0.0;
};

// OLS of degree on the 1-based recruitment index. Subjects with degree above
// `max_degree` (when given) are dropped first. Throws std::domain_error for
// fewer than three usable subjects.
TrendFit degree_trend(std::span<const int> degrees, std::optional<int> max_degree = std::nullopt);
inline TrendFit degree_trend(const ObservedData& obs, std::optional<int> max_degree = std::nullopt) {
  return degree_trend(obs.degrees(), max_degree);
}

}  // namespace rdsize
