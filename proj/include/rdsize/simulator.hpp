#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rdsize/observed_data.hpp"
#include "rdsize/random.hpp"
#include "rdsize/statistics.hpp"

namespace rdsize {

using EdgeList = std::vector<std::pair<int, int>>;

enum class SeedPolicy { uniform, degree_biased };

struct SimConfig {
  int N = 1000;
  double p = 0.01;
  double lambda = 1.0;
  int n_target = 500;
  int seeds = 10;
  int coupons = 3;
  SeedPolicy seed_policy = SeedPolicy::uniform;

  void validate() const;  // throws ConfigError
};

struct SimTruth {
  int N = 0;
  double p = 0.0;
  double lambda = 0.0;
  EdgeList population_edges;          // the whole population graph, u < v
  std::vector<int> sampled_vertices;  // population label of sample index k
  Adjacency subgraph;                 // true G_S over sample indices
  std::vector<std::int64_t> susceptible;  // S just before each event, as the simulation saw it
};

struct SimOutput {
  ObservedData obs;
  SimTruth truth;
  bool died_out = false;
  int achieved_n() const noexcept { return obs.size(); }
};

// Erdos-Renyi G(N, p) by geometric skipping over the pairs in lexicographic order.
EdgeList gen_er_graph(int N, double p, Rng& rng);

// Continuous-time RDS on the population graph G: seeds enter at time 0,
// every susceptible edge (coupon holder to unrecruited neighbour) fires at
// rate lambda. Stops at config.n_target or when no susceptible edge is left
// (died_out).
SimOutput simulate_rds(const EdgeList& G, const SimConfig& config, Rng& rng);

// gen_er_graph + simulate_rds, redrawn until n_target is reached. `attempts`
// receives the number of simulations run (1 when the first one succeeds).
// Throws NumericalError after max_attempts die-outs.
SimOutput simulate_complete_study(const SimConfig& config, Rng& rng, int* attempts = nullptr,
                                  int max_attempts = 1000);

}  // namespace rdsize
