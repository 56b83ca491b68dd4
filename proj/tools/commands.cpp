#include "commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "rdsize/elicitation.hpp"
#include "rdsize/error.hpp"
#include "rdsize/kernels.hpp"
#include "rdsize/sampler.hpp"
#include "rdsize/simulator.hpp"

namespace fs = std::filesystem;

namespace rdsize::cli {
namespace {

using Clock = std::chrono::system_clock;

std::string iso_time(Clock::time_point t) {
  const std::time_t tt = Clock::to_time_t(t);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  std::ostringstream out;
  out << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

class Manifest {
 public:
  Manifest(std::string command, const Invocation& inv) : start_(Clock::now()) {
    doc_["schema_version"] = kSchemaVersion;
    doc_["software_version"] = kSoftwareVersion;
    doc_["command"] = std::move(command);
    doc_["argv"] = inv.argv;
    doc_["kernel_isa"] = std::string(kernels::isa_name(kernels::active().isa));
    doc_["config"] = Json::object();
    doc_["seeds"] = Json::array();
    doc_["inputs"] = Json::array();
    doc_["outputs"] = Json::array();
  }
  Json& config() { return doc_["config"]; }
  void seed(std::uint64_t s) { doc_["seeds"].push_back(s); }
  void input(const std::string& path) { doc_["inputs"].push_back(path); }
  void output(const std::string& path) { doc_["outputs"].push_back(path); }

  void write(const fs::path& dir) {
    const auto end = Clock::now();
    doc_["started"] = iso_time(start_);
    doc_["wall_seconds"] = std::chrono::duration<double>(end - start_).count();
    write_json_file((dir / "manifest.json").string(), doc_);
  }

 private:
  Clock::time_point start_;
  Json doc_;
};

ObservedData load_data(const std::string& path) {
  if (fs::path(path).extension() == ".json") return observed_from_json(read_json_file(path));
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  const auto rows = read_rds_csv(in);
  return ingest_rds_table(rows);
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

std::string replicate_name(int r, int total) {
  std::ostringstream name;
  const int width = std::max<int>(4, static_cast<int>(std::to_string(total).size()));
  name << "rep_" << std::setw(width) << std::setfill('0') << r + 1;
  return name.str();
}

}  // namespace

int cmd_simulate(const SimulateOptions& o, const Invocation& inv) {
  SimConfig cfg;
  cfg.N = o.N;
  if (o.p && o.mean_degree) throw ConfigError("give either --p or --mean-degree, not both");
  if (o.p)
    cfg.p = *o.p;
  else if (o.mean_degree)
    cfg.p = *o.mean_degree / o.N;
  else
    throw ConfigError("one of --p or --mean-degree is required");
  cfg.lambda = o.lambda;
  cfg.n_target = o.n;
  cfg.seeds = o.seeds;
  cfg.coupons = o.coupons;
  if (o.seed_policy == "uniform")
    cfg.seed_policy = SeedPolicy::uniform;
  else if (o.seed_policy == "degree")
    cfg.seed_policy = SeedPolicy::degree_biased;
  else
    throw ConfigError("--seed-policy must be uniform or degree");
  cfg.validate();
  if (o.replicates < 1) throw ConfigError("--replicates must be at least 1");

  const fs::path dir(o.out_dir);
  ensure_dir(dir);
  Manifest manifest("simulate", inv);
  manifest.config() = {{"N", cfg.N},           {"p", cfg.p},         {"lambda", cfg.lambda},
                       {"n", cfg.n_target},    {"seeds", cfg.seeds}, {"coupons", cfg.coupons},
                       {"seed_policy", o.seed_policy}, {"replicates", o.replicates}, {"master_seed", o.seed}};

  for (int r = 0; r < o.replicates; ++r) {
    const std::uint64_t seed = derive_seed(o.seed, static_cast<std::uint64_t>(r));
    Rng rng(seed);
    int attempts = 0;
    const SimOutput sim = simulate_complete_study(cfg, rng, &attempts);
    const std::string base = replicate_name(r, o.replicates);
    const fs::path csv = dir / (base + ".csv");
    const fs::path truth = dir / (base + ".truth.json");
    {
      std::ofstream out(csv);
      if (!out) throw std::runtime_error("cannot write " + csv.string());
      write_rds_csv(out, sim.obs);
    }
    write_json_file(truth.string(), truth_to_json(sim, seed, attempts));
    manifest.seed(seed);
    manifest.output(csv.string());
    manifest.output(truth.string());
  }
  manifest.write(dir);
  return 0;
}

Priors resolve_priors(const EstimateOptions& o) {
  Priors p;
  if (!o.alpha) throw ConfigError("--alpha is required");
  p.alpha = *o.alpha;
  p.c = o.c;
  if (o.p_prior_mean && !(*o.p_prior_mean > 0.0 && *o.p_prior_mean < 1.0))
    throw ConfigError("--p-prior-mean must lie in (0, 1)");
  if (o.beta)
    p.beta = *o.beta;
  else if (o.p_prior_mean)
    p.beta = p.alpha * (1.0 - *o.p_prior_mean) / *o.p_prior_mean;
  else
    throw ConfigError("one of --beta or --p-prior-mean is required");

  if (o.gamma)
    p.gamma = *o.gamma;
  else if (o.p_prior_mean)
    p.gamma = -std::log(*o.p_prior_mean / (1.0 - *o.p_prior_mean));

  if (o.eta.has_value() != o.xi.has_value()) throw ConfigError("--eta and --xi go together");
  if (o.eta) {
    p.eta = *o.eta;
    p.xi = *o.xi;
  } else if (o.lambda_prior_mean) {
    if (!(*o.lambda_prior_mean > 0.0) || !(o.lambda_prior_var > 0.0))
      throw ConfigError("lambda prior mean and variance must be positive");
    p.eta = *o.lambda_prior_mean * *o.lambda_prior_mean / o.lambda_prior_var;
    p.xi = *o.lambda_prior_mean / o.lambda_prior_var;
  }
  if (!(p.alpha + p.c > 1.0)) throw ConfigError("improper posterior (α+c ≤ 1)");
  p.validate();
  return p;
}

int cmd_estimate(const EstimateOptions& o, const Invocation& inv) {
  const Priors priors = resolve_priors(o);
  if (priors.alpha + priors.c <= 3.0)
    std::cerr << "warning: alpha + c = " << priors.alpha + priors.c
              << " <= 3; the posterior variance of N may be infinite\n";

  SamplerConfig cfg;
  cfg.iterations = o.iterations;
  cfg.burn_in = o.burn_in;
  cfg.thin = o.thin;
  cfg.edge_moves = o.edge_moves;
  cfg.warmup = o.warmup;
  cfg.variance_floor = o.variance_floor;
  cfg.chains = o.chains;
  cfg.seed = o.seed;
  cfg.validate();

  const ObservedData obs = load_data(o.data);
  const fs::path dir(o.out_dir);
  ensure_dir(dir);
  Manifest manifest("estimate", inv);
  manifest.input(o.data);
  manifest.config() = {{"priors", priors_to_json(priors)},
                       {"iterations", cfg.iterations},
                       {"burn_in", cfg.burn_in},
                       {"thin", cfg.thin},
                       {"edge_moves", cfg.edge_moves > 0 ? cfg.edge_moves : obs.size()},
                       {"warmup", cfg.warmup >= 0 ? cfg.warmup : cfg.burn_in / 4},
                       {"variance_floor", cfg.variance_floor},
                       {"chains", cfg.chains},
                       {"master_seed", cfg.seed},
                       {"reference_populations", o.reference_pops}};

  const auto chains = run_chains(obs, priors, cfg);

  std::vector<std::int64_t> pooled;
  Json per_chain = Json::array();
  AcceptanceCounts total;
  for (std::size_t k = 0; k < chains.size(); ++k) {
    const auto& chain = chains[k];
    const fs::path path = dir / ("chain_" + std::to_string(k + 1) + ".csv");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_chain_header(out);
    std::vector<std::int64_t> draws;
    for (const auto& r : chain.records) {
      write_chain_row(out, r);
      draws.push_back(r.N);
    }
    pooled.insert(pooled.end(), draws.begin(), draws.end());
    Json entry = summary_to_json(summarize_draws(draws));
    entry["seed"] = chain.seed;
    entry["acceptance"] = counts_to_json(chain.counts);
    per_chain.push_back(std::move(entry));
    total += chain.counts;
    manifest.seed(chain.seed);
    manifest.output(path.string());
  }

  Json summary;
  summary["schema_version"] = kSchemaVersion;
  summary["n"] = obs.size();
  summary["seeds"] = obs.seed_count();
  summary["N_min"] = obs.min_population();
  summary["priors"] = priors_to_json(priors);
  summary["posterior"] = summary_to_json(summarize_draws(pooled, o.reference_pops));
  summary["acceptance"] = counts_to_json(total);
  summary["chains"] = std::move(per_chain);
  const fs::path summary_path = dir / "summary.json";
  write_json_file(summary_path.string(), summary);
  manifest.output(summary_path.string());
  manifest.write(dir);
  return 0;
}

int cmd_summarize(const SummarizeOptions& o, const Invocation& inv) {
  if (o.chains.empty()) throw ConfigError("no chain files given");
  std::vector<std::int64_t> pooled;
  Manifest manifest("summarize", inv);
  for (const auto& path : o.chains) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open " + path);
    for (const auto& r : read_chain_csv(in)) pooled.push_back(r.N);
    manifest.input(path);
  }
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["files"] = o.chains;
  doc["posterior"] = summary_to_json(summarize_draws(pooled, o.reference_pops));
  if (o.out.empty()) {
    std::cout << doc.dump(2) << '\n';
  } else {
    const fs::path out(o.out);
    const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
    ensure_dir(dir);
    write_json_file(out.string(), doc);
    manifest.config() = {{"reference_populations", o.reference_pops}};
    manifest.output(out.string());
    manifest.write(dir);
  }
  return 0;
}

int cmd_elicit(const ElicitOptions& o, const Invocation& inv) {
  const ObservedData obs = load_data(o.data);
  Json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["n"] = obs.size();
  doc["level"] = o.level;
  std::cout << "n = " << obs.size() << "\n";
  if (!o.N_hat) {
    std::cout << "no --N-hat given; p_lo needs a prior estimate of N\n";
  } else {
    const double p_lo = p_lower_bound(obs, *o.N_hat);
    doc["N_hat"] = *o.N_hat;
    doc["p_lower_bound"] = p_lo;
    std::cout << "N_hat = " << *o.N_hat << "\np_lo = " << std::setprecision(6) << p_lo << "\n";
    Json table = Json::array();
    if (!o.alphas.empty()) std::cout << std::setw(10) << "alpha" << std::setw(16) << "beta" << "\n";
    for (double a : o.alphas) {
      const double b = solve_beta_tail(a, p_lo, o.level);
      table.push_back({{"alpha", a}, {"beta", b}, {"prior_mean_p", a / (a + b)}});
      std::cout << std::setw(10) << a << std::setw(16) << std::setprecision(8) << b << "\n";
    }
    doc["priors"] = std::move(table);
  }
  if (!o.out.empty()) {
    const fs::path out(o.out);
    const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
    ensure_dir(dir);
    write_json_file(out.string(), doc);
    Manifest manifest("elicit", inv);
    manifest.input(o.data);
    manifest.output(out.string());
    manifest.write(dir);
  }
  return 0;
}

int cmd_diagnose(const DiagnoseOptions& o, const Invocation& inv) {
  const ObservedData obs = load_data(o.data);
  const TrendFit fit = degree_trend(obs, o.max_degree);
  std::cout << "degree trend (OLS of degree on recruitment order)\n";
  std::cout << std::setw(12) << "slope" << std::setw(14) << "std.err" << std::setw(12) << "p.value" << std::setw(8)
            << "n" << "\n";
  std::cout << std::setw(12) << std::setprecision(4) << fit.slope;
  if (fit.std_error)
    std::cout << std::setw(14) << *fit.std_error << std::setw(12) << *fit.p_value;
  else
    std::cout << std::setw(14) << "NA" << std::setw(12) << "NA";
  std::cout << std::setw(8) << fit.used << "\n";

  if (!o.out.empty()) {
    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["slope"] = fit.slope;
    doc["intercept"] = fit.intercept;
    doc["std_error"] = fit.std_error ? Json(*fit.std_error) : Json(nullptr);
    doc["p_value"] = fit.p_value ? Json(*fit.p_value) : Json(nullptr);
    doc["used"] = fit.used;
    doc["max_degree"] = o.max_degree ? Json(*o.max_degree) : Json(nullptr);
    const fs::path out(o.out);
    const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
    ensure_dir(dir);
    write_json_file(out.string(), doc);
    Manifest manifest("diagnose", inv);
    manifest.input(o.data);
    manifest.output(out.string());
    manifest.write(dir);
  }
  return 0;
}

int cmd_ingest(const IngestOptions& o, const Invocation& inv) {
  const ObservedData obs = load_data(o.data);
  const Json doc = observed_to_json(obs);
  if (o.out.empty()) {
    std::cout << doc.dump(2) << '\n';
    return 0;
  }
  const fs::path out(o.out);
  const fs::path dir = out.has_parent_path() ? out.parent_path() : fs::path(".");
  ensure_dir(dir);
  write_json_file(out.string(), doc);
  Manifest manifest("ingest", inv);
  manifest.input(o.data);
  manifest.output(out.string());
  manifest.write(dir);
  return 0;
}

}  // namespace rdsize::cli
