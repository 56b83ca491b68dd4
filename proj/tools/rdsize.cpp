// rdsize: population size estimation from respondent-driven sampling data.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"
#include "rdsize/error.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

}  // namespace

int main(int argc, char** argv) {
  using namespace rdsize::cli;
  Invocation inv;
  for (int k = 0; k < argc; ++k) inv.argv.emplace_back(argv[k]);

  CLI::App app{"Bayesian population size estimation for respondent-driven sampling"};
  app.require_subcommand(1);
  app.set_version_flag("--version", rdsize::kSoftwareVersion);

  SimulateOptions sim;
  auto* simulate = app.add_subcommand("simulate", "simulate RDS studies on Erdos-Renyi populations");
  simulate->add_option("--N", sim.N, "population size")->required()->check(CLI::PositiveNumber);
  auto* p_opt = simulate->add_option("--p", sim.p, "edge probability");
  simulate->add_option("--mean-degree", sim.mean_degree, "expected degree N*p")->excludes(p_opt);
  simulate->add_option("--lambda", sim.lambda, "recruitment rate per susceptible edge");
  simulate->add_option("--n", sim.n, "target sample size");
  simulate->add_option("--seeds", sim.seeds, "number of seeds");
  simulate->add_option("--coupons", sim.coupons, "coupons per subject");
  simulate->add_option("--replicates", sim.replicates, "independent studies to simulate");
  simulate->add_option("--seed", sim.seed, "master RNG seed");
  simulate->add_option("--seed-policy", sim.seed_policy, "uniform or degree");
  simulate->add_option("--out", sim.out_dir, "output directory");

  EstimateOptions est;
  auto* estimate = app.add_subcommand("estimate", "sample the posterior of N");
  estimate->add_option("--data", est.data, "RDS CSV (or canonical JSON)")->required();
  estimate->add_option("--out", est.out_dir, "output directory");
  estimate->add_option("--alpha", est.alpha, "Beta prior on p: alpha");
  estimate->add_option("--beta", est.beta, "Beta prior on p: beta");
  estimate->add_option("--p-prior-mean", est.p_prior_mean, "sets beta = alpha (1-p)/p and gamma = -logit(p)");
  estimate->add_option("--eta", est.eta, "Gamma prior on lambda: shape");
  estimate->add_option("--xi", est.xi, "Gamma prior on lambda: rate");
  estimate->add_option("--lambda-prior-mean", est.lambda_prior_mean, "sets eta = m^2/v, xi = m/v");
  estimate->add_option("--lambda-prior-var", est.lambda_prior_var, "v for --lambda-prior-mean");
  estimate->add_option("--c", est.c, "power-law exponent of the prior on N");
  estimate->add_option("--gamma", est.gamma, "edge penalty of the subgraph prior");
  estimate->add_option("--iters", est.iterations, "Gibbs iterations");
  estimate->add_option("--burnin", est.burn_in, "discarded iterations");
  estimate->add_option("--thin", est.thin, "keep every k-th draw");
  estimate->add_option("--edge-moves", est.edge_moves, "edge moves per iteration (default n)");
  estimate->add_option("--warmup", est.warmup, "initial iterations with N held at its conditional mode (default burnin/4)");
  estimate->add_option("--variance-floor", est.variance_floor, "minimum proposal variance as a multiple of the mode");
  estimate->add_option("--chains", est.chains, "independent chains");
  estimate->add_option("--seed", est.seed, "master RNG seed");
  estimate->add_option("--reference-pop", est.reference_pops, "reference population for implied prevalence");

  SummarizeOptions sum;
  auto* summarize = app.add_subcommand("summarize", "summarize chain CSV files");
  summarize->add_option("chains", sum.chains, "chain CSV files")->required();
  summarize->add_option("--reference-pop", sum.reference_pops, "reference population for implied prevalence");
  summarize->add_option("--out", sum.out, "summary JSON path (default stdout)");

  ElicitOptions eli;
  auto* elicit = app.add_subcommand("elicit", "prior elicitation for p");
  elicit->add_option("--data", eli.data, "RDS CSV")->required();
  elicit->add_option("--N-hat", eli.N_hat, "prior estimate of N");
  elicit->add_option("--alpha", eli.alphas, "alpha values for the (alpha, beta) table");
  elicit->add_option("--level", eli.level, "Pr(p > p_lo)");
  elicit->add_option("--out", eli.out, "JSON output path");

  DiagnoseOptions dia;
  auto* diagnose = app.add_subcommand("diagnose", "degree trend over recruitment order");
  diagnose->add_option("--data", dia.data, "RDS CSV")->required();
  diagnose->add_option("--max-degree", dia.max_degree, "drop subjects above this degree");
  diagnose->add_option("--out", dia.out, "JSON output path");

  IngestOptions ing;
  auto* ingest = app.add_subcommand("ingest", "validate a CSV and emit canonical JSON");
  ingest->add_option("--data", ing.data, "RDS CSV")->required();
  ingest->add_option("--out", ing.out, "JSON output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) return cmd_simulate(sim, inv);
    if (*estimate) return cmd_estimate(est, inv);
    if (*summarize) return cmd_summarize(sum, inv);
    if (*elicit) return cmd_elicit(eli, inv);
    if (*diagnose) return cmd_diagnose(dia, inv);
    if (*ingest) return cmd_ingest(ing, inv);
  } catch (const rdsize::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const rdsize::DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const rdsize::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::domain_error& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}
