#include <cmath>
#include <algorithm>
#include <boost/math/distributions/negative_binomial.hpp>
#include <random>

#include "rdsize/error.hpp"
#include "rdsize/sampler.hpp"
#include "rdsize/special.hpp"

namespace rdsize {

NegBinProposal::NegBinProposal(double mean, double size) : mean_(mean), size_(size) {
  if (!(mean > 0.0) || !(size > 0.0) || !std::isfinite(mean) || !std::isfinite(size))
    throw NumericalError("negative binomial proposal needs positive finite mean and size");
}

NegBinProposal NegBinProposal::from_mean_variance(double mean, double variance) {
  if (!(variance > mean)) throw NumericalError("negative binomial proposal needs variance > mean");
  return NegBinProposal(mean, mean * mean / (variance - mean));
}

std::int64_t NegBinProposal::sample(Rng& rng) const {
  // Gamma-Poisson mixture.
  std::gamma_distribution<double> rate(size_, mean_ / size_);
  const double lambda = rate(rng);
  if (lambda <= 0.0) return 0;
  std::poisson_distribution<std::int64_t> count(lambda);
  return count(rng);
}

double NegBinProposal::log_pmf(std::int64_t k) const {
  if (k < 0) return -INFINITY;
  const double x = static_cast<double>(k);
  const double r = size_;
  // C(k + r - 1, k) (r/(r+mu))^r (mu/(r+mu))^k
  const double log_total = std::log(r + mean_);
  const double coef = special::log_gamma(x + r) - special::log_gamma(r) - special::log_gamma(x + 1.0);
  return coef + r * (std::log(r) - log_total) + (k > 0 ? x * (std::log(mean_) - log_total) : 0.0);
}

LomaxTail::LomaxTail(std::int64_t N_min, double scale, double shape) : N_min_(N_min), scale_(scale), shape_(shape) {
  if (!(scale > 0.0) || !(shape > 0.0) || !std::isfinite(scale)) throw NumericalError("Lomax tail needs positive scale and shape");
}

double LomaxTail::log_survival(std::int64_t m) const {
  if (m < N_min_) return 0.0;
  return -shape_ * std::log1p(static_cast<double>(m - N_min_ + 1) / scale_);
}

std::int64_t LomaxTail::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  constexpr double kCap = 1e15;
  for (;;) {
    const double u = 1.0 - unif(rng);  // (0, 1]
    const double excess = scale_ * std::expm1(-std::log(u) / shape_);
    if (excess < kCap) return N_min_ + static_cast<std::int64_t>(std::floor(excess));
  }
}

double LomaxTail::log_pmf(std::int64_t k) const {
  if (k < N_min_) return -INFINITY;
  // log S(k) - log S(k-1) in closed form, exact for large k
  const double step = -shape_ * std::log1p(1.0 / (scale_ + static_cast<double>(k - N_min_)));
  return log_survival(k - 1) + std::log(-std::expm1(step));
}

NProposal::NProposal(const NegBinProposal& body, std::int64_t N_min, double tail_weight, double tail_shape)
    : body_(body),
      tail_(N_min,
            std::max(body.mean() - static_cast<double>(N_min), std::sqrt(body.mean() + body.mean() * body.mean() / body.size())) + 1.0,
            tail_shape),
      N_min_(N_min), weight_(tail_weight) {
  if (!(tail_weight > 0.0 && tail_weight < 1.0)) throw NumericalError("tail weight must lie in (0, 1)");
  const double r = body.size();
  const boost::math::negative_binomial_distribution<double> nb(r, r / (r + body.mean()));
  const double mass = N_min > 0 ? boost::math::cdf(boost::math::complement(nb, static_cast<double>(N_min - 1))) : 1.0;
  if (!(mass > 0.0)) throw NumericalError("N proposal has no mass above N_min");
  log_body_mass_ = std::log(mass);
}

NProposal NProposal::at_mode(const NMode& mode, std::int64_t N_min, const Priors& priors, double tail_weight) {
  // pmf tail of the Lomax is k^-(1+shape); keep it heavier than k^-(alpha+c).
  const double shape = std::min(0.5, 0.5 * (priors.alpha + priors.c - 1.0));
  return NProposal(NegBinProposal::from_mean_variance(mode.N_hat, mode.variance), N_min, tail_weight, shape);
}

std::int64_t NProposal::sample(Rng& rng) const {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (unif(rng) < weight_) return tail_.sample(rng);
  for (int tries = 0; tries < 10000; ++tries) {
    const std::int64_t draw = body_.sample(rng);
    if (draw >= N_min_) return draw;
  }
  throw NumericalError("N proposal kept falling below N_min");
}

double NProposal::log_pmf(std::int64_t k) const {
  if (k < N_min_) return -INFINITY;
  const double a = std::log1p(-weight_) + body_.log_pmf(k) - log_body_mass_;
  const double b = std::log(weight_) + tail_.log_pmf(k);
  const double hi = std::max(a, b);
  if (hi == -INFINITY) return hi;
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

}  // namespace rdsize
