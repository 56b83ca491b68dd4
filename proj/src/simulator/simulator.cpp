#include "rdsize/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "rdsize/error.hpp"

namespace rdsize {

void SimConfig::validate() const {
  if (N < 1) throw ConfigError("N must be at least 1");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("p must lie in (0, 1)");
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw ConfigError("lambda must be positive");
  if (n_target < 1 || n_target > N) throw ConfigError("target sample size must lie in [1, N]");
  if (seeds < 1 || seeds > n_target) throw ConfigError("seed count must lie in [1, n]");
  if (coupons < 1) throw ConfigError("coupons must be at least 1");
}

EdgeList gen_er_graph(int N, double p, Rng& rng) {
  EdgeList edges;
  if (N < 2) return edges;
  edges.reserve(static_cast<std::size_t>(p * N * (N - 1) / 2 * 1.1) + 16);
  // Walk the pairs (v, w), w < v, skipping geometric gaps.
  std::geometric_distribution<std::int64_t> skip(p);
  std::int64_t v = 1;
  std::int64_t w = -1;
  while (v < N) {
    w += 1 + skip(rng);
    while (w >= v && v < N) {
      w -= v;
      ++v;
    }
    if (v < N) edges.emplace_back(static_cast<int>(w), static_cast<int>(v));
  }
  return edges;
}

namespace {

class SusceptibleSet {
 public:
  void add(int holder, int target) {
    const auto key = pack(holder, target);
    if (index_.contains(key)) return;
    index_.emplace(key, items_.size());
    items_.emplace_back(holder, target);
  }
  void remove(int holder, int target) {
    const auto it = index_.find(pack(holder, target));
    if (it == index_.end()) return;
    const std::size_t pos = it->second;
    index_.erase(it);
    if (pos + 1 != items_.size()) {
      items_[pos] = items_.back();
      index_[pack(items_[pos].first, items_[pos].second)] = pos;
    }
    items_.pop_back();
  }
  std::size_t size() const noexcept { return items_.size(); }
  const std::pair<int, int>& operator[](std::size_t k) const { return items_[k]; }

 private:
  static std::uint64_t pack(int a, int b) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(a)) << 32) | static_cast<std::uint32_t>(b);
  }
  std::vector<std::pair<int, int>> items_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

std::vector<int> pick_seeds(const std::vector<std::vector<int>>& nbrs, const SimConfig& cfg, Rng& rng) {
  const int N = static_cast<int>(nbrs.size());
  std::vector<int> chosen;
  if (cfg.seed_policy == SeedPolicy::degree_biased) {
    std::vector<double> weight(N);
    for (int v = 0; v < N; ++v) weight[v] = static_cast<double>(nbrs[v].size());
    for (int k = 0; k < cfg.seeds; ++k) {
      if (std::accumulate(weight.begin(), weight.end(), 0.0) <= 0.0) break;
      std::discrete_distribution<int> pick(weight.begin(), weight.end());
      const int v = pick(rng);
      chosen.push_back(v);
      weight[v] = 0.0;
    }
    if (static_cast<int>(chosen.size()) == cfg.seeds) return chosen;
  }
  // Uniform without replacement (also fills up a degree-biased draw that ran
  // out of positive-degree vertices).
  std::vector<char> taken(N, 0);
  for (int v : chosen) taken[v] = 1;
  std::uniform_int_distribution<int> any(0, N - 1);
  while (static_cast<int>(chosen.size()) < cfg.seeds) {
    const int v = any(rng);
    if (taken[v]) continue;
    taken[v] = 1;
    chosen.push_back(v);
  }
  return chosen;
}

}  // namespace

SimOutput simulate_rds(const EdgeList& G, const SimConfig& config, Rng& rng) {
  config.validate();
  const int N = config.N;
  std::vector<std::vector<int>> nbrs(N);
  for (const auto& [a, b] : G) {
    nbrs[a].push_back(b);
    nbrs[b].push_back(a);
  }

  std::vector<int> sample_index(N, -1);
  std::vector<int> coupons_left(N, 0);
  std::vector<ObservedData::Subject> subjects;
  SimTruth truth;
  truth.N = N;
  truth.p = config.p;
  truth.lambda = config.lambda;
  truth.population_edges = G;

  SusceptibleSet susceptible;
  auto enter = [&](int v, int recruiter_vertex, double t) {
    truth.susceptible.push_back(static_cast<std::int64_t>(susceptible.size()));
    const int k = static_cast<int>(subjects.size());
    sample_index[v] = k;
    truth.sampled_vertices.push_back(v);
    subjects.push_back({std::to_string(v), recruiter_vertex < 0 ? -1 : sample_index[recruiter_vertex], t,
                        static_cast<int>(nbrs[v].size()), config.coupons});
    // v is no longer reachable; then it starts recruiting.
    for (int h : nbrs[v])
      if (sample_index[h] >= 0 && coupons_left[h] > 0) susceptible.remove(h, v);
    coupons_left[v] = config.coupons;
    for (int w : nbrs[v])
      if (sample_index[w] < 0) susceptible.add(v, w);
    if (recruiter_vertex >= 0 && --coupons_left[recruiter_vertex] == 0) {
      for (int w : nbrs[recruiter_vertex])
        if (sample_index[w] < 0) susceptible.remove(recruiter_vertex, w);
    }
  };

  for (int v : pick_seeds(nbrs, config, rng)) enter(v, -1, 0.0);

  bool died_out = false;
  double t = 0.0;
  while (static_cast<int>(subjects.size()) < config.n_target) {
    if (susceptible.size() == 0) {
      died_out = true;
      break;
    }
    std::exponential_distribution<double> wait(config.lambda * static_cast<double>(susceptible.size()));
    t += wait(rng);
    std::uniform_int_distribution<std::size_t> pick(0, susceptible.size() - 1);
    const auto [h, v] = susceptible[pick(rng)];
    enter(v, h, t);
  }

  const int n = static_cast<int>(subjects.size());
  truth.subgraph = Adjacency(n);
  for (const auto& [a, b] : G)
    if (sample_index[a] >= 0 && sample_index[b] >= 0) truth.subgraph.set(sample_index[a], sample_index[b], true);

  return SimOutput{ObservedData(std::move(subjects)), std::move(truth), died_out};
}

SimOutput simulate_complete_study(const SimConfig& config, Rng& rng, int* attempts, int max_attempts) {
  config.validate();
  for (int a = 1; a <= max_attempts; ++a) {
    const EdgeList G = gen_er_graph(config.N, config.p, rng);
    SimOutput out = simulate_rds(G, config, rng);
    if (!out.died_out) {
      if (attempts) *attempts = a;
      return out;
    }
  }
  throw NumericalError("recruitment died out in " + std::to_string(max_attempts) + " consecutive simulations");
}

}  // namespace rdsize
