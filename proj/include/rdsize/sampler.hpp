#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rdsize/likelihood.hpp"
#include "rdsize/observed_data.hpp"
#include "rdsize/random.hpp"
#include "rdsize/subgraph_state.hpp"

namespace rdsize {

struct SamplerConfig {
  std::int64_t iterations = 20000;
  std::int64_t burn_in = 5000;
  std::int64_t thin = 1;
  // Edge moves per Gibbs iteration; 0 means n.
  std::int64_t edge_moves = 0;
  std::uint64_t seed = 1;
  int chains = 1;
  // v is raised to at least this multiple of N_hat before building the
  // negative binomial proposal.
  double variance_floor = 1.5;
  // Probability that an N proposal comes from the heavy-tailed component.
  double tail_weight = 0.1;
  // Leading burn-in iterations in which N is set to the rounded conditional
  // mode instead of being sampled; -1 means burn_in / 4. Lets the subgraph
  // leave the sparse starting point before the independence proposal for N
  // takes over.
  std::int64_t warmup = -1;
  // Re-check every cache against a full recomputation after each sweep.
  bool verify_each_sweep = false;

  void validate() const;  // throws ConfigError
};

struct ChainRecord {
  std::int64_t iteration = 0;
  std::int64_t N = 0;
  std::int64_t edges = 0;
  std::int64_t du_total = 0;
  double log_summand = 0.0;
};

struct AcceptanceCounts {
  std::int64_t add_proposed = 0, add_accepted = 0;
  std::int64_t remove_proposed = 0, remove_accepted = 0;
  std::int64_t edge_noop = 0;
  std::int64_t n_proposed = 0, n_accepted = 0;

  std::int64_t total_proposals() const noexcept {
    return add_proposed + remove_proposed + edge_noop + n_proposed;
  }
  AcceptanceCounts& operator+=(const AcceptanceCounts& o);
};

struct PosteriorChain {
  std::uint64_t seed = 0;
  std::vector<ChainRecord> records;
  AcceptanceCounts counts;
};

// Minimal compatible start: the undirected recruitment forest.
SubgraphState init_subgraph(const ObservedData& obs);

// log MH ratio of `move` for the subgraph block given N, from the closed-form
// expressions (pre-move quantities), including the proposal correction.
double edge_log_ratio(const SubgraphState& state, const EdgeMove& move, std::int64_t N, const Priors& priors);

struct EdgeStepResult {
  std::optional<EdgeMove> move;  // nullopt: no valid move
  bool accepted = false;
};

EdgeStepResult edge_step(SubgraphState& state, std::int64_t N, const Priors& priors, Rng& rng);

struct NMode {
  double N_hat = 0.0;
  double variance = 0.0;
};

// Mode of the continuous conditional l(N) on [N_min, inf) and the proposal
// variance -1/l''(N_hat) after the floor. Throws NumericalError if the mode
// cannot be bracketed.
NMode newton_mode_N(const NConditional& cond, double N_min, double variance_floor = 1.5);

// Negative binomial with mean mu and size r.
class NegBinProposal {
 public:
  NegBinProposal(double mean, double size);
  static NegBinProposal from_mean_variance(double mean, double variance);

  double mean() const noexcept { return mean_; }
  double size() const noexcept { return size_; }
  std::int64_t sample(Rng& rng) const;
  double log_pmf(std::int64_t k) const;

 private:
  double mean_, size_;
};

// Discrete Lomax on {N_min, N_min+1, ...}: Pr(X > m) = (1 + (m - N_min + 1)/scale)^-shape.
class LomaxTail {
 public:
  LomaxTail(std::int64_t N_min, double scale, double shape);
  std::int64_t sample(Rng& rng) const;
  double log_pmf(std::int64_t k) const;

 private:
  double log_survival(std::int64_t m) const;  // log Pr(X > m)
  std::int64_t N_min_;
  double scale_, shape_;
};

// Independence proposal for N given the subgraph: the negative binomial at the
// conditional mode truncated to [N_min, inf), mixed with a Lomax tail whose
// decay is slower than the N^-(alpha+c) tail of the target. Without the tail
// component the importance weight is unbounded and a chain that reaches large
// N can sit there for a very long time.
class NProposal {
 public:
  NProposal(const NegBinProposal& body, std::int64_t N_min, double tail_weight, double tail_shape);
  // Built from the conditional mode and the priors.
  static NProposal at_mode(const NMode& mode, std::int64_t N_min, const Priors& priors, double tail_weight);

  std::int64_t sample(Rng& rng) const;  // throws NumericalError if the body keeps falling below N_min
  double log_pmf(std::int64_t k) const;
  const NegBinProposal& body() const noexcept { return body_; }

 private:
  NegBinProposal body_;
  LomaxTail tail_;
  std::int64_t N_min_;
  double weight_;
  double log_body_mass_;  // log Pr(body >= N_min)
};

struct NStepResult {
  std::int64_t N = 0;
  bool accepted = false;
};

// log MH ratio for moving N from `from` to `to` under the independence
// proposal; zero when from == to.
double n_log_ratio(const NConditional& cond, const NProposal& proposal, std::int64_t from, std::int64_t to);

// One MH update of N with the subgraph held fixed.
NStepResult n_step(const SubgraphState& state, std::int64_t N, const Priors& priors, Rng& rng,
                   double variance_floor = 1.5, double tail_weight = 0.1);

// Called after each kept draw; may be empty.
using ChainObserver = std::function<void(const ChainRecord&)>;

// Single chain with the given RNG seed.
PosteriorChain run_gibbs(const ObservedData& obs, const Priors& priors, const SamplerConfig& config,
                         std::uint64_t chain_seed, const ChainObserver& observer = {});

// config.chains independent chains on worker threads, chain k seeded with
// derive_seed(config.seed, k).
std::vector<PosteriorChain> run_chains(const ObservedData& obs, const Priors& priors, const SamplerConfig& config);

}  // namespace rdsize
