#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rdsize/observed_data.hpp"
#include "rdsize/subgraph_state.hpp"

namespace rdsize {

// Hyperparameters: p ~ Beta(alpha, beta), lambda ~ Gamma(eta, xi) (rate xi),
// pi(N) ~ N^-c, pi(G_S) ~ exp(-gamma |E_S|).
struct Priors {
  double alpha = 1.0;
  double beta = 1.0;
  double eta = 1.0;
  double xi = 1.0;
  double c = 1.0;
  double gamma = 0.0;

  // Throws ConfigError on non-positive alpha/beta/eta/xi, negative c, a
  // non-finite gamma, or alpha + c <= 1 (improper posterior).
  void validate() const;
  // Number of finite posterior moments of N guaranteed by alpha + c.
  int finite_moments() const noexcept;
};

// sum_i log Binomial(du_i; N - i, p) with 1-based i.
double log_lik_N_p(std::int64_t N, double p, std::span<const int> du);

// sum over non-seed j of log(lambda s_j) - lambda sw. Throws
// ImpossibleRecruitment when some non-seed s_j is zero.
double log_lik_GS_lambda(std::span<const std::int64_t> s, double sw, double lambda, const ObservedData& obs);

// log of one summand of the marginal posterior of N for a fixed subgraph,
// with p and lambda integrated out, up to a constant that depends on neither
// N nor the subgraph. Returns -inf when some recruitment has zero rate.
double log_posterior_summand(std::int64_t N, const SubgraphState& state, const Priors& priors);

struct NDerivatives {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

// The N-dependent part of the log posterior for a fixed subgraph, extended to
// real N:
//   l(N) = sum_i log C(N - i, du_i) + log B(D + alpha, nN - n(n+1)/2 - D + beta) - c log N.
// Only subjects with du_i > 0 carry N dependence in the binomial terms; the
// constructor packs them for the kernels.
class NConditional {
 public:
  NConditional(std::span<const int> du, std::int64_t du_total, const Priors& priors);
  NConditional(const SubgraphState& state, const Priors& priors)
      : NConditional(state.pendants(), state.pendant_total(), priors) {}

  // Smallest N with every binomial and Beta argument valid: n + max du.
  double support_min() const noexcept { return support_min_; }
  int size() const noexcept { return n_; }

  double value(double N) const;
  double d1(double N) const;
  double d2(double N) const;
  NDerivatives at(double N) const { return {value(N), d1(N), d2(N)}; }

 private:
  double beta_second(double N) const;  // nN - n(n+1)/2 - D + beta

  int n_;
  double du_total_;
  double alpha_, beta_, c_;
  double log_factorial_sum_ = 0.0;     // sum_i log du_i!
  double support_min_ = 0.0;
  std::vector<double> hi_;  // 1 - i   (argument N - i + 1 after the shift)
  std::vector<double> lo_;  // 1 - i - du_i
};

inline double log_conditional_N_value(double N, const SubgraphState& state, const Priors& priors) {
  return NConditional(state, priors).value(N);
}
inline NDerivatives log_conditional_N(double N, const SubgraphState& state, const Priors& priors) {
  return NConditional(state, priors).at(N);
}

}  // namespace rdsize
