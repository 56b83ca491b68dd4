#include "rdsize/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "rdsize/error.hpp"
#include "rdsize/kernels.hpp"
#include "rdsize/special.hpp"

namespace rdsize {

void Priors::validate() const {
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(std::string(name) + " must be positive and finite");
  };
  positive(alpha, "alpha");
  positive(beta, "beta");
  positive(eta, "eta");
  positive(xi, "xi");
  if (!(c >= 0.0) || !std::isfinite(c)) throw ConfigError("c must be non-negative and finite");
  if (!std::isfinite(gamma)) throw ConfigError("gamma must be finite");
  if (!(alpha + c > 1.0)) throw ConfigError("improper posterior (alpha + c <= 1)");
}

int Priors::finite_moments() const noexcept {
  // Tail of the posterior behaves like N^-(alpha + c).
  const double tail = alpha + c;
  if (tail > 3.0) return 2;
  if (tail > 2.0) return 1;
  return 0;
}

double log_lik_N_p(std::int64_t N, double p, std::span<const int> du) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("log_lik_N_p: p must lie in (0, 1)");
  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  double total = 0.0;
  for (std::size_t k = 0; k < du.size(); ++k) {
    const double trials = static_cast<double>(N) - static_cast<double>(k + 1);
    const double x = du[k];
    if (x < 0 || trials < x)
      throw std::domain_error("log_lik_N_p: du of subject " + std::to_string(k + 1) + " exceeds N - i");
    total += special::log_choose(trials, x) + x * log_p + (trials - x) * log_q;
  }
  return total;
}

double log_lik_GS_lambda(std::span<const std::int64_t> s, double sw, double lambda, const ObservedData& obs) {
  if (!(lambda > 0.0)) throw std::domain_error("log_lik_GS_lambda: lambda must be positive");
  const double log_lambda = std::log(lambda);
  double total = 0.0;
  for (int j = 0; j < obs.size(); ++j) {
    if (obs.is_seed(j)) continue;
    if (s[j] <= 0) throw ImpossibleRecruitment(j);
    total += log_lambda + std::log(static_cast<double>(s[j]));
  }
  return total - lambda * sw;
}

double log_posterior_summand(std::int64_t N, const SubgraphState& state, const Priors& priors) {
  const ObservedData& obs = state.data();
  const int n = obs.size();
  const int m = obs.seed_count();
  const auto s = state.susceptible();
  double log_s = 0.0;
  for (int j = 0; j < n; ++j) {
    if (obs.is_seed(j)) continue;
    if (s[j] <= 0) return -std::numeric_limits<double>::infinity();
    log_s += std::log(static_cast<double>(s[j]));
  }
  const double waiting = log_s - (n - m + priors.eta) * std::log(state.exposure() + priors.xi);

  const auto du = state.pendants();
  double binomials = 0.0;
  for (int k = 0; k < n; ++k) {
    const double trials = static_cast<double>(N) - (k + 1);
    if (trials < du[k])
      throw std::domain_error("log_posterior_summand: N too small for subject " + std::to_string(k + 1));
    binomials += special::log_choose(trials, du[k]);
  }
  const double D = static_cast<double>(state.pendant_total());
  const double nd = n;
  const double b2 = nd * static_cast<double>(N) - nd * (nd + 1.0) / 2.0 - D + priors.beta;
  if (!(b2 > 0.0)) throw std::domain_error("log_posterior_summand: Beta argument is not positive");
  const double beta_term = special::log_beta(D + priors.alpha, b2);

  return waiting + binomials + beta_term - priors.c * std::log(static_cast<double>(N)) -
         priors.gamma * static_cast<double>(state.edge_count());
}

NConditional::NConditional(std::span<const int> du, std::int64_t du_total, const Priors& priors)
    : n_(static_cast<int>(du.size())),
      du_total_(static_cast<double>(du_total)),
      alpha_(priors.alpha),
      beta_(priors.beta),
      c_(priors.c) {
  int max_du = 0;
  for (int k = 0; k < n_; ++k) {
    max_du = std::max(max_du, du[k]);
    if (du[k] <= 0) continue;
    const double i = k + 1;
    hi_.push_back(1.0 - i);
    lo_.push_back(1.0 - i - du[k]);
    log_factorial_sum_ += special::log_gamma(du[k] + 1.0);
  }
  support_min_ = static_cast<double>(n_) + max_du;
}

double NConditional::beta_second(double N) const {
  const double n = n_;
  return n * N - n * (n + 1.0) / 2.0 - du_total_ + beta_;
}

double NConditional::value(double N) const {
  const double binomials =
      kernels::gamma_diff_sum(kernels::GammaFn::log_gamma, N, hi_, lo_) - log_factorial_sum_;
  return binomials + special::log_beta(du_total_ + alpha_, beta_second(N)) - c_ * std::log(N);
}

double NConditional::d1(double N) const {
  const double b = beta_second(N);
  const double binomials = kernels::gamma_diff_sum(kernels::GammaFn::digamma, N, hi_, lo_);
  const double beta_part = n_ * (special::digamma(b) - special::digamma(b + du_total_ + alpha_));
  return binomials + beta_part - c_ / N;
}

double NConditional::d2(double N) const {
  const double b = beta_second(N);
  const double n = n_;
  const double binomials = kernels::gamma_diff_sum(kernels::GammaFn::trigamma, N, hi_, lo_);
  const double beta_part = n * n * (special::trigamma(b) - special::trigamma(b + du_total_ + alpha_));
  return binomials + beta_part + c_ / (N * N);
}

}  // namespace rdsize
