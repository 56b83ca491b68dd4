#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rdsize/io.hpp"

namespace rdsize::cli {

struct SimulateOptions {
  int N = 0;
  std::optional<double> p;
  std::optional<double> mean_degree;
  double lambda = 1.0;
  int n = 500;
  int seeds = 10;
  int coupons = 3;
  int replicates = 1;
  std::uint64_t seed = 1;
  std::string seed_policy = "uniform";
  std::string out_dir = ".";
};

struct EstimateOptions {
  std::string data;
  std::string out_dir = ".";
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> p_prior_mean;
  std::optional<double> lambda_prior_mean;
  double lambda_prior_var = 1.0;
  std::optional<double> eta;
  std::optional<double> xi;
  double c = 1.0;
  std::optional<double> gamma;
  std::int64_t iterations = 20000;
  std::int64_t burn_in = 5000;
  std::int64_t thin = 1;
  std::int64_t edge_moves = 0;
  std::int64_t warmup = -1;
  double variance_floor = 1.5;
  int chains = 1;
  std::uint64_t seed = 1;
  std::vector<double> reference_pops;
};

struct SummarizeOptions {
  std::vector<std::string> chains;
  std::vector<double> reference_pops;
  std::string out;  // empty: stdout
};

struct ElicitOptions {
  std::string data;
  std::optional<double> N_hat;
  std::vector<double> alphas;
  double level = 0.99;
  std::string out;  // JSON file, optional
};

struct DiagnoseOptions {
  std::string data;
  std::optional<int> max_degree;
  std::string out;
};

struct IngestOptions {
  std::string data;
  std::string out;
};

// The argv the command was invoked with, for the manifest.
struct Invocation {
  std::vector<std::string> argv;
};

int cmd_simulate(const SimulateOptions& o, const Invocation& inv);
int cmd_estimate(const EstimateOptions& o, const Invocation& inv);
int cmd_summarize(const SummarizeOptions& o, const Invocation& inv);
int cmd_elicit(const ElicitOptions& o, const Invocation& inv);
int cmd_diagnose(const DiagnoseOptions& o, const Invocation& inv);
int cmd_ingest(const IngestOptions& o, const Invocation& inv);

// Builds the estimation priors from the option set; throws ConfigError.
Priors resolve_priors(const EstimateOptions& o);

}  // namespace rdsize::cli
