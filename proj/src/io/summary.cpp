#include <algorithm>
#include <cmath>
#include <map>

#include "rdsize/error.hpp"
#include "rdsize/io.hpp"

namespace rdsize {

double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw DataError("quantile of an empty sample");
  const double h = (static_cast<double>(sorted.size()) - 1.0) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

PosteriorSummary summarize_draws(std::span<const std::int64_t> draws, std::span<const double> reference_pops) {
  if (draws.empty()) throw DataError("no posterior draws to summarize");
  PosteriorSummary s;
  s.draws = draws.size();
  std::vector<double> sorted(draws.begin(), draws.end());
  std::sort(sorted.begin(), sorted.end());

  double mean = 0.0;
  for (std::size_t k = 0; k < sorted.size(); ++k) mean += (sorted[k] - mean) / static_cast<double>(k + 1);
  double ss = 0.0;
  for (double x : sorted) ss += (x - mean) * (x - mean);
  s.mean = mean;
  s.sd = sorted.size() > 1 ? std::sqrt(ss / static_cast<double>(sorted.size() - 1)) : 0.0;

  std::map<std::int64_t, std::size_t> freq;
  for (auto d : draws) ++freq[d];
  std::size_t best = 0;
  for (const auto& [value, count] : freq) {
    if (count > best) {
      best = count;
      s.mode = value;
    }
  }
  s.median = quantile_sorted(sorted, 0.5);
  s.q025 = quantile_sorted(sorted, 0.025);
  s.q975 = quantile_sorted(sorted, 0.975);
  for (double ref : reference_pops) {
    if (!(ref > 0.0)) throw ConfigError("reference population must be positive");
    s.prevalence.push_back({ref, 100.0 * s.mean / ref, 100.0 * s.q025 / ref, 100.0 * s.q975 / ref});
  }
  return s;
}

}  // namespace rdsize
