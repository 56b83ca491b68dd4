#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rdsize/observed_data.hpp"
#include "rdsize/random.hpp"
#include "rdsize/statistics.hpp"

namespace rdsize {

// Toggle of the undirected pair {i, j}, i < j.
struct EdgeMove {
  int i = 0;
  int j = 0;
  bool add = true;
};

// Everything the acceptance ratio needs about a move, evaluated without
// mutating the state. All quantities other than the *_after ones are pre-move.
struct MoveEffect {
  double log_s_ratio = 0.0;       // sum over non-seed k of log(s'_k / s_k)
  double sw_after = 0.0;
  std::int64_t valid_after = 0;   // |valid moves| of the proposed subgraph
  int du_later = 0;               // d_j^u of the later-recruited endpoint
  std::int64_t du_total = 0;      // D^u
};

// A compatible estimate of the recruitment-induced subgraph with every cached
// statistic the sampler touches: u, d^u, D^u, s, s'w, |E_S| and the number of
// valid add/remove moves. Single writer; the referenced ObservedData must
// outlive the state.
class SubgraphState {
 public:
  // Starts at the undirected recruitment forest.
  explicit SubgraphState(const ObservedData& obs);
  // Starts at `a`; throws DataError when `a` is not compatible with `obs`.
  SubgraphState(const ObservedData& obs, const Adjacency& a);

  const ObservedData& data() const noexcept { return *obs_; }
  int size() const noexcept { return n_; }

  bool has_edge(int i, int j) const { return slot(i, j) != kNoEdge; }
  bool is_recruitment_edge(int i, int j) const { return slot(i, j) == kRecruitmentEdge; }
  std::span<const int> neighbors(int i) const { return neighbors_[i]; }

  int residual(int i) const { return u_[i]; }
  std::span<const int> residuals() const noexcept { return u_; }
  int pendant(int i) const { return du_[i]; }
  std::span<const int> pendants() const noexcept { return du_; }
  std::int64_t pendant_total() const noexcept { return du_total_; }
  std::span<const std::int64_t> susceptible() const noexcept { return s_; }
  double exposure() const noexcept { return sw_; }
  std::int64_t edge_count() const noexcept { return edge_count_; }

  std::int64_t addable() const noexcept;
  std::int64_t removable() const noexcept { return static_cast<std::int64_t>(extra_edges_.size()); }
  std::int64_t valid_moves() const noexcept { return addable() + removable(); }

  // sum over non-seed j of log s_j.
  double log_susceptible_product() const;

  // Uniform draw from the valid add/remove moves; nullopt if there are none.
  std::optional<EdgeMove> propose(Rng& rng) const;
  // Precondition: `move` is a valid move for the current state.
  MoveEffect evaluate(const EdgeMove& move) const;
  void apply(const EdgeMove& move);

  Adjacency adjacency() const;

  // Recomputes every cache from the adjacency and returns a description of
  // the first mismatch, or an empty string. `sw_rel_tol` bounds the drift of
  // the floating-point exposure.
  std::string verify(double sw_rel_tol = 1e-9) const;

 private:
  static constexpr std::int32_t kNoEdge = -1;
  static constexpr std::int32_t kRecruitmentEdge = -2;

  std::int32_t& slot(int i, int j) { return slots_[static_cast<std::size_t>(i) * n_ + j]; }
  std::int32_t slot(int i, int j) const { return slots_[static_cast<std::size_t>(i) * n_ + j]; }

  void rebuild_caches();
  int positive_neighbors(int v, int exclude) const;
  void set_residual(int v, int value);
  void link(int i, int j);
  void unlink(int i, int j);
  // Adds `delta` to s over events [begin, end).
  void shift_susceptible(int begin, int end, int delta);
  double log_ratio_range(int begin, int end, double delta) const;

  const ObservedData* obs_;
  int n_;
  std::vector<std::int32_t> slots_;
  std::vector<std::vector<int>> neighbors_;
  std::vector<std::pair<int, int>> extra_edges_;
  std::vector<int> u_;
  std::vector<int> du_;
  std::int64_t du_total_ = 0;
  std::vector<std::int64_t> s_;
  std::vector<double> s_active_;  // s over non-seed events, compacted
  double sw_ = 0.0;
  std::int64_t edge_count_ = 0;
  std::vector<int> positive_;     // vertices with u > 0
  std::vector<int> positive_pos_;
  std::int64_t positive_edges_ = 0;  // edges with both endpoints in positive_
};

}  // namespace rdsize
