#include "oracles.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

namespace oracle {

std::vector<std::int64_t> replay_susceptible(const ObservedData& obs, const Adjacency& a) {
  const int n = obs.size();
  std::vector<int> left(n, 0);
  std::vector<std::int64_t> s(n, 0);
  for (int k = 0; k < n; ++k) {
    std::int64_t count = 0;
    for (int h = 0; h < k; ++h) {
      if (left[h] <= 0) continue;
      int in_sample = 0;
      for (int v = 0; v < n; ++v) {
        if (!a.has(h, v)) continue;
        ++in_sample;
        if (v >= k) ++count;  // not yet recruited
      }
      count += obs.degree(h) - in_sample;  // never recruited
    }
    s[k] = count;
    // event k happens: the recruiter spends a coupon, the recruit gets its own
    left[k] = obs.coupons_issued(k);
    if (!obs.is_seed(k)) --left[obs.recruiter(k)];
  }
  return s;
}

double exposure(const ObservedData& obs, const std::vector<std::int64_t>& s) {
  long double total = 0.0L;
  double prev = 0.0;
  for (int k = 0; k < obs.size(); ++k) {
    total += static_cast<long double>(s[k]) * (obs.time(k) - prev);
    prev = obs.time(k);
  }
  return static_cast<double>(total);
}

std::vector<int> recount_du(const ObservedData& obs, const Adjacency& a) {
  std::vector<int> du(obs.size());
  for (int i = 0; i < obs.size(); ++i) du[i] = obs.degree(i);
  for (const auto& [x, y] : a.edges()) --du[std::max(x, y)];
  return du;
}

long double log_binom_pmf(long double trials, long double k, long double p) {
  return std::lgamma(trials + 1) - std::lgamma(k + 1) - std::lgamma(trials - k + 1) + k * std::log(p) +
         (trials - k) * std::log1p(-p);
}

long double log_summand(std::int64_t N, const ObservedData& obs, const Adjacency& a, const Priors& pr) {
  using boost::math::lgamma;
  const int n = obs.size();
  const auto s = replay_susceptible(obs, a);
  const long double sw = exposure(obs, s);
  long double total = 0.0L;
  int m = 0;
  for (int j = 0; j < n; ++j) {
    if (obs.is_seed(j)) {
      ++m;
      continue;
    }
    if (s[j] <= 0) return -std::numeric_limits<long double>::infinity();
    total += std::log(static_cast<long double>(s[j]));
  }
  total -= (n - m + static_cast<long double>(pr.eta)) * std::log(sw + static_cast<long double>(pr.xi));
  const auto du = recount_du(obs, a);
  long double D = 0;
  for (int i = 0; i < n; ++i) {
    const long double trials = static_cast<long double>(N) - (i + 1);
    total += lgamma(trials + 1) - lgamma(du[i] + 1.0L) - lgamma(trials - du[i] + 1);
    D += du[i];
  }
  const long double K = static_cast<long double>(n) * N - n * (n + 1.0L) / 2;
  const long double a1 = D + pr.alpha;
  const long double b1 = K - D + pr.beta;
  total += lgamma(a1) + lgamma(b1) - lgamma(a1 + b1);
  total -= pr.c * std::log(static_cast<long double>(N));
  total -= pr.gamma * static_cast<long double>(a.edge_count());
  return total;
}

std::int64_t count_valid_moves(const ObservedData& obs, const Adjacency& a) {
  const int n = obs.size();
  std::vector<int> u(n);
  for (int i = 0; i < n; ++i) u[i] = obs.degree(i) - a.degree(i);
  std::int64_t count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const bool recruitment = obs.recruiter(j) == i || obs.recruiter(i) == j;
      if (a.has(i, j))
        count += recruitment ? 0 : 1;
      else
        count += (u[i] > 0 && u[j] > 0) ? 1 : 0;
    }
  }
  return count;
}

std::vector<Adjacency> enumerate_compatible(const ObservedData& obs) {
  const int n = obs.size();
  const Adjacency base = Adjacency::minimal(obs);
  std::vector<std::pair<int, int>> free_pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!base.has(i, j)) free_pairs.emplace_back(i, j);
  std::vector<Adjacency> out;
  const std::uint64_t total = std::uint64_t{1} << free_pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    Adjacency a = base;
    for (std::size_t b = 0; b < free_pairs.size(); ++b)
      if (mask >> b & 1) a.set(free_pairs[b].first, free_pairs[b].second, true);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) ok = a.degree(i) <= obs.degree(i);
    if (ok) out.push_back(std::move(a));
  }
  return out;
}

namespace {

void normalize_log(std::vector<long double>& logs, std::vector<double>& out) {
  long double top = -std::numeric_limits<long double>::infinity();
  for (auto v : logs) top = std::max(top, v);
  long double z = 0.0L;
  for (auto v : logs) z += std::exp(v - top);
  out.resize(logs.size());
  for (std::size_t k = 0; k < logs.size(); ++k) out[k] = static_cast<double>(std::exp(logs[k] - top) / z);
}

}  // namespace

std::vector<double> exact_N_posterior(const ObservedData& obs, const std::vector<Adjacency>& graphs,
                                      const Priors& priors, std::int64_t lo, std::int64_t hi) {
  std::vector<long double> logs;
  for (std::int64_t N = lo; N <= hi; ++N) {
    long double top = -std::numeric_limits<long double>::infinity();
    std::vector<long double> terms;
    for (const auto& g : graphs) {
      terms.push_back(log_summand(N, obs, g, priors));
      top = std::max(top, terms.back());
    }
    long double z = 0.0L;
    for (auto t : terms) z += std::exp(t - top);
    logs.push_back(top + std::log(z));
  }
  std::vector<double> out;
  normalize_log(logs, out);
  return out;
}

std::vector<double> exact_graph_posterior(const ObservedData& obs, const std::vector<Adjacency>& graphs,
                                          const Priors& priors, std::int64_t N) {
  std::vector<long double> logs;
  for (const auto& g : graphs) logs.push_back(log_summand(N, obs, g, priors));
  std::vector<double> out;
  normalize_log(logs, out);
  return out;
}

long double log_conditional(long double N, const std::vector<int>& du, const Priors& pr) {
  const int n = static_cast<int>(du.size());
  long double total = 0.0L, D = 0.0L;
  for (int i = 0; i < n; ++i) {
    total += std::lgamma(N - i) - std::lgamma(N - i - du[i]);  // (N-i')! / (N-i'-du)!, i' = i+1
    D += du[i];
  }
  const long double K = n * N - n * (n + 1.0L) / 2;
  total += std::lgamma(K - D + pr.beta) - std::lgamma(K + pr.alpha + pr.beta);
  return total - pr.c * std::log(N);
}

long double log_conditional_d1(long double N, const std::vector<int>& du, const Priors& pr) {
  using boost::math::digamma;
  const int n = static_cast<int>(du.size());
  long double total = 0.0L, D = 0.0L;
  for (int i = 0; i < n; ++i) {
    total += digamma(N - i) - digamma(N - i - du[i]);
    D += du[i];
  }
  const long double K = n * N - n * (n + 1.0L) / 2;
  total += n * (digamma(K - D + pr.beta) - digamma(K + pr.alpha + pr.beta));
  return total - pr.c / N;
}

rdsize::SimOutput small_study(std::uint64_t seed, int N, double p, int n, int seeds, int coupons) {
  rdsize::SimConfig cfg;
  cfg.N = N;
  cfg.p = p;
  cfg.n_target = n;
  cfg.seeds = seeds;
  cfg.coupons = coupons;
  rdsize::Rng rng(seed);
  return rdsize::simulate_complete_study(cfg, rng, nullptr, 100000);
}

double total_variation(const std::vector<double>& p, const std::vector<double>& q) {
  double tv = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) tv += std::abs(p[k] - q[k]);
  return 0.5 * tv;
}

}  // namespace oracle
