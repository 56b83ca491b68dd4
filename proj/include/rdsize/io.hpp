#pragma once

#include <cstdint>
#include <iosfwd>
#include "json.hpp"
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rdsize/likelihood.hpp"
#include "rdsize/observed_data.hpp"
#include "rdsize/sampler.hpp"
#include "rdsize/simulator.hpp"

namespace rdsize {

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kSoftwareVersion = "0.1.0";

using Json = nlohmann::ordered_json;

// Canonical form: n, ids, seeds, recruiter_of (null for seeds), degrees,
// times, coupons_issued. Indices are 0-based recruitment positions.
Json observed_to_json(const ObservedData& obs);
ObservedData observed_from_json(const Json& doc);

Json truth_to_json(const SimOutput& sim, std::uint64_t seed, int attempts);
Json priors_to_json(const Priors& p);

// Chain CSV: iteration,N,E_S,D_u,log_summand
void write_chain_header(std::ostream& out);
void write_chain_row(std::ostream& out, const ChainRecord& r);
std::vector<ChainRecord> read_chain_csv(std::istream& in);

struct Prevalence {
  double reference = 0.0;
  double mean_percent = 0.0;
  double q025_percent = 0.0;
  double q975_percent = 0.0;
};

struct PosteriorSummary {
  std::size_t draws = 0;
  double mean = 0.0;
  double sd = 0.0;
  std::int64_t mode = 0;
  double median = 0.0;
  double q025 = 0.0;
  double q975 = 0.0;
  std::vector<Prevalence> prevalence;
};

// Type-7 quantile of sorted data.
double quantile_sorted(std::span<const double> sorted, double prob);

// Throws DataError on an empty sample. The mode is the most frequent value,
// the smallest one on ties.
PosteriorSummary summarize_draws(std::span<const std::int64_t> draws, std::span<const double> reference_pops = {});

Json summary_to_json(const PosteriorSummary& s);
Json counts_to_json(const AcceptanceCounts& c);

// Writes `doc` with a trailing newline, two-space indentation.
void write_json_file(const std::string& path, const Json& doc);
Json read_json_file(const std::string& path);

}  // namespace rdsize
