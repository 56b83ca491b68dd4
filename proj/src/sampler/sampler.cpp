#include "rdsize/sampler.hpp"

#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "rdsize/error.hpp"

namespace rdsize {

void SamplerConfig::validate() const {
  if (iterations <= 0) throw ConfigError("iterations must be positive");
  if (burn_in < 0) throw ConfigError("burn-in must be non-negative");
  if (burn_in >= iterations) throw ConfigError("burn-in leaves no iterations to record");
  if (thin < 1) throw ConfigError("thin must be at least 1");
  if (edge_moves < 0) throw ConfigError("edge moves per iteration must be non-negative");
  if (warmup > burn_in) throw ConfigError("warm-up must not exceed burn-in");
  if (chains < 1) throw ConfigError("chains must be at least 1");
  if (!(variance_floor > 1.0)) throw ConfigError("variance floor must exceed 1");
  if (!(tail_weight > 0.0 && tail_weight < 1.0)) throw ConfigError("tail weight must lie in (0, 1)");
}

AcceptanceCounts& AcceptanceCounts::operator+=(const AcceptanceCounts& o) {
  add_proposed += o.add_proposed;
  add_accepted += o.add_accepted;
  remove_proposed += o.remove_proposed;
  remove_accepted += o.remove_accepted;
  edge_noop += o.edge_noop;
  n_proposed += o.n_proposed;
  n_accepted += o.n_accepted;
  return *this;
}

SubgraphState init_subgraph(const ObservedData& obs) { return SubgraphState(obs); }

double edge_log_ratio(const SubgraphState& state, const EdgeMove& move, std::int64_t N, const Priors& priors) {
  const MoveEffect eff = state.evaluate(move);
  if (!(eff.log_s_ratio > -std::numeric_limits<double>::infinity()))
    return -std::numeric_limits<double>::infinity();

  const ObservedData& obs = state.data();
  const double n = obs.size();
  const double m = obs.seed_count();
  const double Nd = static_cast<double>(N);
  const double K = n * Nd - n * (n + 1.0) / 2.0;
  const double D = static_cast<double>(eff.du_total);
  const double d = eff.du_later;
  const double q = move.j + 1.0;  // 1-based position of the later endpoint

  double lr;
  if (move.add) {
    lr = std::log(d) - std::log(Nd - q - d + 1.0) + std::log(K - D + priors.beta) - std::log(D - 1.0 + priors.alpha) -
         priors.gamma;
  } else {
    const double room = Nd - q - d;
    if (room <= 0.0) return -std::numeric_limits<double>::infinity();
    lr = std::log(room) - std::log(d + 1.0) + std::log(D + priors.alpha) - std::log(K - D - 1.0 + priors.beta) +
         priors.gamma;
  }
  lr += eff.log_s_ratio;
  lr += (n - m + priors.eta) * (std::log(state.exposure() + priors.xi) - std::log(eff.sw_after + priors.xi));
  lr += std::log(static_cast<double>(state.valid_moves())) - std::log(static_cast<double>(eff.valid_after));
  return lr;
}

EdgeStepResult edge_step(SubgraphState& state, std::int64_t N, const Priors& priors, Rng& rng) {
  EdgeStepResult out;
  out.move = state.propose(rng);
  if (!out.move) return out;
  const double lr = edge_log_ratio(state, *out.move, N, priors);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (lr >= 0.0 || std::log(unif(rng)) < lr) {
    state.apply(*out.move);
    out.accepted = true;
  }
  return out;
}

double n_log_ratio(const NConditional& cond, const NProposal& proposal, std::int64_t from, std::int64_t to) {
  if (from == to) return 0.0;
  return cond.value(static_cast<double>(to)) - cond.value(static_cast<double>(from)) + proposal.log_pmf(from) -
         proposal.log_pmf(to);
}

NStepResult n_step(const SubgraphState& state, std::int64_t N, const Priors& priors, Rng& rng,
                   double variance_floor, double tail_weight) {
  const NConditional cond(state, priors);
  const auto N_min = state.data().min_population();
  const NMode mode = newton_mode_N(cond, static_cast<double>(N_min), variance_floor);
  const NProposal proposal = NProposal::at_mode(mode, N_min, priors, tail_weight);
  const std::int64_t candidate = proposal.sample(rng);

  NStepResult out{N, false};
  const double lr = n_log_ratio(cond, proposal, N, candidate);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  if (lr >= 0.0 || std::log(unif(rng)) < lr) {
    out.N = candidate;
    out.accepted = true;
  }
  return out;
}

PosteriorChain run_gibbs(const ObservedData& obs, const Priors& priors, const SamplerConfig& config,
                         std::uint64_t chain_seed, const ChainObserver& observer) {
  priors.validate();
  config.validate();

  PosteriorChain chain;
  chain.seed = chain_seed;
  Rng rng(chain_seed);
  SubgraphState state = init_subgraph(obs);
  const auto N_min = obs.min_population();
  const std::int64_t sweep = config.edge_moves > 0 ? config.edge_moves : obs.size();

  const NMode start = newton_mode_N(NConditional(state, priors), static_cast<double>(N_min), config.variance_floor);
  std::int64_t N = std::max<std::int64_t>(N_min, std::llround(start.N_hat));

  const std::int64_t warmup = config.warmup >= 0 ? config.warmup : config.burn_in / 4;
  const auto kept = (config.iterations - config.burn_in) / config.thin;
  chain.records.reserve(static_cast<std::size_t>(kept));
  AcceptanceCounts& counts = chain.counts;

  for (std::int64_t it = 1; it <= config.iterations; ++it) {
    for (std::int64_t e = 0; e < sweep; ++e) {
      const EdgeStepResult r = edge_step(state, N, priors, rng);
      if (!r.move) {
        ++counts.edge_noop;
      } else if (r.move->add) {
        ++counts.add_proposed;
        counts.add_accepted += r.accepted ? 1 : 0;
      } else {
        ++counts.remove_proposed;
        counts.remove_accepted += r.accepted ? 1 : 0;
      }
    }
    if (config.verify_each_sweep) {
      if (auto err = state.verify(); !err.empty()) throw NumericalError("subgraph cache drift: " + err);
    }

    if (it <= warmup) {
      const NMode mode = newton_mode_N(NConditional(state, priors), static_cast<double>(N_min), config.variance_floor);
      N = std::max<std::int64_t>(N_min, std::llround(mode.N_hat));
    } else {
      const NStepResult ns = n_step(state, N, priors, rng, config.variance_floor, config.tail_weight);
      ++counts.n_proposed;
      counts.n_accepted += ns.accepted ? 1 : 0;
      N = ns.N;
    }

    if (it > config.burn_in && (it - config.burn_in) % config.thin == 0) {
      ChainRecord rec{it, N, state.edge_count(), state.pendant_total(), log_posterior_summand(N, state, priors)};
      chain.records.push_back(rec);
      if (observer) observer(rec);
    }
  }
  return chain;
}

std::vector<PosteriorChain> run_chains(const ObservedData& obs, const Priors& priors, const SamplerConfig& config) {
  priors.validate();
  config.validate();
  const int k = config.chains;
  std::vector<PosteriorChain> chains(k);
  std::vector<std::exception_ptr> errors(k);
  auto work = [&](int c) {
    try {
      chains[c] = run_gibbs(obs, priors, config, derive_seed(config.seed, static_cast<std::uint64_t>(c)));
    } catch (...) {
      errors[c] = std::current_exception();
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(k, std::thread::hardware_concurrency()));
  for (int base = 0; base < k; base += static_cast<int>(workers)) {
    std::vector<std::jthread> pool;
    for (int c = base; c < std::min(k, base + static_cast<int>(workers)); ++c) pool.emplace_back(work, c);
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return chains;
}

}  // namespace rdsize
