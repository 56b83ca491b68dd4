#include "rdsize/subgraph_state.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "rdsize/error.hpp"
#include "rdsize/kernels.hpp"

namespace rdsize {

SubgraphState::SubgraphState(const ObservedData& obs) : SubgraphState(obs, Adjacency::minimal(obs)) {}

SubgraphState::SubgraphState(const ObservedData& obs, const Adjacency& a) : obs_(&obs), n_(obs.size()) {
  if (const auto compat = check_compatibility(a, obs); !compat)
    throw DataError("initial subgraph is not compatible: " + compat.describe());

  slots_.assign(static_cast<std::size_t>(n_) * n_, kNoEdge);
  neighbors_.assign(n_, {});
  for (const auto& [r, j] : obs.recruitment_edges()) {
    slot(r, j) = kRecruitmentEdge;
    slot(j, r) = kRecruitmentEdge;
  }
  for (const auto& [i, j] : a.edges()) {
    neighbors_[i].push_back(j);
    neighbors_[j].push_back(i);
    if (slot(i, j) == kNoEdge) {
      const auto idx = static_cast<std::int32_t>(extra_edges_.size());
      extra_edges_.emplace_back(i, j);
      slot(i, j) = idx;
      slot(j, i) = idx;
    }
  }
  rebuild_caches();
}

void SubgraphState::rebuild_caches() {
  const ObservedData& obs = *obs_;
  u_.resize(n_);
  du_.resize(n_);
  du_total_ = 0;
  edge_count_ = 0;
  for (int i = 0; i < n_; ++i) {
    u_[i] = obs.degree(i) - static_cast<int>(neighbors_[i].size());
    int earlier = 0;
    for (int v : neighbors_[i]) earlier += v < i ? 1 : 0;
    du_[i] = obs.degree(i) - earlier;
    du_total_ += du_[i];
    edge_count_ += static_cast<std::int64_t>(neighbors_[i].size());
  }
  edge_count_ /= 2;

  s_.assign(n_, 0);
  sw_ = 0.0;
  for (int k = 0; k < n_; ++k) {
    std::int64_t s = 0;
    for (int l : obs.coupon_holders(k)) {
      s += u_[l];
      for (int v : neighbors_[l]) s += v >= k ? 1 : 0;
    }
    s_[k] = s;
    sw_ += static_cast<double>(s) * obs.waits()[k];
  }
  s_active_.clear();
  for (int k = 0; k < n_; ++k)
    if (!obs.is_seed(k)) s_active_.push_back(static_cast<double>(s_[k]));

  positive_.clear();
  positive_pos_.assign(n_, -1);
  for (int v = 0; v < n_; ++v) {
    if (u_[v] > 0) {
      positive_pos_[v] = static_cast<int>(positive_.size());
      positive_.push_back(v);
    }
  }
  positive_edges_ = 0;
  for (int v : positive_) positive_edges_ += positive_neighbors(v, -1);
  positive_edges_ /= 2;
}

std::int64_t SubgraphState::addable() const noexcept {
  const auto p = static_cast<std::int64_t>(positive_.size());
  return p * (p - 1) / 2 - positive_edges_;
}

int SubgraphState::positive_neighbors(int v, int exclude) const {
  int count = 0;
  for (int w : neighbors_[v]) count += (w != exclude && u_[w] > 0) ? 1 : 0;
  return count;
}

double SubgraphState::log_susceptible_product() const {
  double acc = 0.0;
  for (double s : s_active_) acc += std::log(s);
  return acc;
}

std::optional<EdgeMove> SubgraphState::propose(Rng& rng) const {
  const std::int64_t removable_count = removable();
  const std::int64_t addable_count = addable();
  const std::int64_t total = removable_count + addable_count;
  if (total == 0) return std::nullopt;

  std::uniform_int_distribution<std::int64_t> pick(0, total - 1);
  const std::int64_t r = pick(rng);
  if (r < removable_count) {
    const auto [i, j] = extra_edges_[static_cast<std::size_t>(r)];
    return EdgeMove{std::min(i, j), std::max(i, j), false};
  }

  // Uniform over non-adjacent pairs of positive-residual vertices, by
  // rejection from all positive pairs.
  const int p = static_cast<int>(positive_.size());
  std::uniform_int_distribution<int> first(0, p - 1);
  std::uniform_int_distribution<int> second(0, p - 2);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const int a = first(rng);
    int b = second(rng);
    if (b >= a) ++b;
    const int i = positive_[a];
    const int j = positive_[b];
    if (!has_edge(i, j)) return EdgeMove{std::min(i, j), std::max(i, j), true};
  }
  std::uniform_int_distribution<std::int64_t> nth(0, addable_count - 1);
  std::int64_t target = nth(rng);
  for (int a = 0; a < p; ++a) {
    for (int b = a + 1; b < p; ++b) {
      const int i = positive_[a];
      const int j = positive_[b];
      if (has_edge(i, j)) continue;
      if (target-- == 0) return EdgeMove{std::min(i, j), std::max(i, j), true};
    }
  }
  return std::nullopt;  // unreachable while the caches are consistent
}

double SubgraphState::log_ratio_range(int begin, int end, double delta) const {
  if (end <= begin) return 0.0;
  const int lo = obs_->nonseed_rank(begin);
  const int hi = obs_->nonseed_rank(end);
  if (hi <= lo) return 0.0;
  return kernels::sum_log_ratio(std::span<const double>(s_active_).subspan(lo, hi - lo), delta);
}

MoveEffect SubgraphState::evaluate(const EdgeMove& move) const {
  const ObservedData& obs = *obs_;
  const int i = move.i;
  const int j = move.j;
  const int sign = move.add ? -1 : +1;

  // s changes by sign * (C_ik [k > j] + C_jk); both coupon runs start after j.
  const int start = j + 1;
  const int end_i = std::max(start, obs.hold_end(i));
  const int end_j = std::max(start, obs.hold_end(j));
  const int both_end = std::min(end_i, end_j);
  const int one_end = std::max(end_i, end_j);

  MoveEffect effect;
  effect.log_s_ratio = log_ratio_range(start, both_end, 2.0 * sign) + log_ratio_range(both_end, one_end, sign);

  // sum of w over the two runs = t_i^* - min(t_j, t_i^*) + t_j^* - t_j.
  const double t_j = obs.time(j);
  const double exposure = (obs.exhaust_time(i) - std::min(t_j, obs.exhaust_time(i))) + (obs.exhaust_time(j) - t_j);
  effect.sw_after = sw_ + sign * exposure;

  const auto p = static_cast<std::int64_t>(positive_.size());
  std::int64_t p_after = p;
  std::int64_t pe_after = positive_edges_;
  std::int64_t removable_after = removable();
  if (move.add) {
    const bool i_drops = u_[i] == 1;
    const bool j_drops = u_[j] == 1;
    p_after -= (i_drops ? 1 : 0) + (j_drops ? 1 : 0);
    pe_after += (!i_drops && !j_drops) ? 1 : 0;
    if (i_drops) pe_after -= positive_neighbors(i, j);
    if (j_drops) pe_after -= positive_neighbors(j, i);
    ++removable_after;
  } else {
    const bool i_rises = u_[i] == 0;
    const bool j_rises = u_[j] == 0;
    p_after += (i_rises ? 1 : 0) + (j_rises ? 1 : 0);
    pe_after -= (!i_rises && !j_rises) ? 1 : 0;
    if (i_rises) pe_after += positive_neighbors(i, j);
    if (j_rises) pe_after += positive_neighbors(j, i);
    --removable_after;
  }
  effect.valid_after = p_after * (p_after - 1) / 2 - pe_after + removable_after;
  effect.du_later = du_[j];
  effect.du_total = du_total_;
  return effect;
}

void SubgraphState::set_residual(int v, int value) {
  const bool was_positive = u_[v] > 0;
  const bool now_positive = value > 0;
  if (was_positive && !now_positive) {
    positive_edges_ -= positive_neighbors(v, -1);
    const int pos = positive_pos_[v];
    const int last = positive_.back();
    positive_[pos] = last;
    positive_pos_[last] = pos;
    positive_.pop_back();
    positive_pos_[v] = -1;
  }
  u_[v] = value;
  if (!was_positive && now_positive) {
    positive_edges_ += positive_neighbors(v, -1);
    positive_pos_[v] = static_cast<int>(positive_.size());
    positive_.push_back(v);
  }
}

void SubgraphState::link(int i, int j) {
  const auto idx = static_cast<std::int32_t>(extra_edges_.size());
  extra_edges_.emplace_back(i, j);
  slot(i, j) = idx;
  slot(j, i) = idx;
  neighbors_[i].push_back(j);
  neighbors_[j].push_back(i);
  if (u_[i] > 0 && u_[j] > 0) ++positive_edges_;
  ++edge_count_;
}

void SubgraphState::unlink(int i, int j) {
  const std::int32_t idx = slot(i, j);
  const auto last = extra_edges_.back();
  extra_edges_[static_cast<std::size_t>(idx)] = last;
  slot(last.first, last.second) = idx;
  slot(last.second, last.first) = idx;
  extra_edges_.pop_back();
  slot(i, j) = kNoEdge;
  slot(j, i) = kNoEdge;
  auto drop = [](std::vector<int>& list, int v) {
    const auto it = std::find(list.begin(), list.end(), v);
    *it = list.back();
    list.pop_back();
  };
  drop(neighbors_[i], j);
  drop(neighbors_[j], i);
  if (u_[i] > 0 && u_[j] > 0) --positive_edges_;
  --edge_count_;
}

void SubgraphState::shift_susceptible(int begin, int end, int delta) {
  for (int k = begin; k < end; ++k) s_[k] += delta;
  const int lo = obs_->nonseed_rank(begin);
  const int hi = obs_->nonseed_rank(std::max(begin, end));
  for (int q = lo; q < hi; ++q) s_active_[q] += delta;
}

void SubgraphState::apply(const EdgeMove& move) {
  const ObservedData& obs = *obs_;
  const int i = move.i;
  const int j = move.j;
  const int sign = move.add ? -1 : +1;
  const double t_j = obs.time(j);
  const double exposure = (obs.exhaust_time(i) - std::min(t_j, obs.exhaust_time(i))) + (obs.exhaust_time(j) - t_j);

  if (move.add) {
    link(i, j);
  } else {
    unlink(i, j);
  }
  set_residual(i, u_[i] + sign);
  set_residual(j, u_[j] + sign);
  du_[j] += sign;
  du_total_ += sign;

  const int start = j + 1;
  shift_susceptible(start, obs.hold_end(i), sign);
  shift_susceptible(start, obs.hold_end(j), sign);
  sw_ += sign * exposure;
}

Adjacency SubgraphState::adjacency() const {
  Adjacency a(n_);
  for (int i = 0; i < n_; ++i)
    for (int v : neighbors_[i])
      if (v > i) a.set(i, v, true);
  return a;
}

std::string SubgraphState::verify(double sw_rel_tol) const {
  const ObservedData& obs = *obs_;
  const Adjacency a = adjacency();
  std::ostringstream err;
  if (const auto compat = check_compatibility(a, obs); !compat) {
    err << "incompatible: " << compat.describe();
    return err.str();
  }
  const auto u = residual_degrees(a, obs.degrees());
  if (u != u_) return "u mismatch";
  const auto du = compute_du(a, obs.degrees());
  if (du.du != du_) return "du mismatch";
  if (du.total != du_total_) return "Du mismatch";
  const auto s = compute_s_full(a, obs, u);
  for (int k = 0; k < n_; ++k) {
    if (s.s[k] != s_[k]) {
      err << "s mismatch at event " << k << ": cached " << s_[k] << ", full " << s.s[k];
      return err.str();
    }
  }
  for (int k = 0, q = 0; k < n_; ++k)
    if (!obs.is_seed(k) && s_active_[q++] != static_cast<double>(s_[k])) return "compacted s mismatch";
  if (std::abs(s.sw - sw_) > sw_rel_tol * std::max(1.0, std::abs(s.sw))) {
    err.precision(17);
    err << "sw mismatch: cached " << sw_ << ", full " << s.sw;
    return err.str();
  }
  if (a.edge_count() != edge_count_) return "edge count mismatch";
  const auto min_edges = static_cast<std::int64_t>(obs.recruitment_edges().size());
  if (removable() != edge_count_ - min_edges) return "removable mismatch";
  std::int64_t add = 0;
  for (int x = 0; x < n_; ++x)
    for (int y = x + 1; y < n_; ++y) add += (!a.has(x, y) && u[x] > 0 && u[y] > 0) ? 1 : 0;
  if (add != addable()) {
    err << "addable mismatch: cached " << addable() << ", full " << add;
    return err.str();
  }
  for (int x = 0; x < n_; ++x)
    for (int y = 0; y < n_; ++y)
      if (x != y && a.has(x, y) != (slot(x, y) != kNoEdge)) return "slot table mismatch";
  return {};
}

}  // namespace rdsize
