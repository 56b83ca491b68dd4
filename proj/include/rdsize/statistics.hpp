#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rdsize/observed_data.hpp"

namespace rdsize {

// Dense symmetric 0/1 adjacency over the n sampled subjects.
class Adjacency {
 public:
  explicit Adjacency(int n = 0) : n_(n), bits_(static_cast<std::size_t>(n) * n, 0) {}

  static Adjacency from_edges(int n, std::span<const std::pair<int, int>> edges);
  // The undirected recruitment forest: the smallest compatible subgraph.
  static Adjacency minimal(const ObservedData& obs);

  int size() const noexcept { return n_; }
  bool has(int i, int j) const { return bits_[index(i, j)] != 0; }
  void set(int i, int j, bool present);
  int degree(int i) const;
  std::int64_t edge_count() const;
  std::vector<std::pair<int, int>> edges() const;  // i < j, row-major

  bool operator==(const Adjacency&) const = default;

 private:
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }
  int n_;
  std::vector<std::uint8_t> bits_;
};

struct Compatibility {
  // 0 when compatible, otherwise the first violated condition (1: vertex set,
  // 2: recruitment edge missing, 3: degree exceeded).
  int violated = 0;
  int vertex = -1;
  int other = -1;
  explicit operator bool() const noexcept { return violated == 0; }
  std::string describe() const;
};

// Precondition: `a` is symmetric with a zero diagonal.
Compatibility check_compatibility(const Adjacency& a, const ObservedData& obs);

struct PendantCounts {
  std::vector<int> du;
  std::int64_t total = 0;
};

// d_i^u = d_i - #{j < i : A_ij = 1}. Throws std::domain_error if any entry
// is negative (incompatible subgraph).
PendantCounts compute_du(const Adjacency& a, std::span<const int> degrees);

// u_i = d_i - sum_j A_ij.
std::vector<int> residual_degrees(const Adjacency& a, std::span<const int> degrees);

struct SusceptibleCounts {
  std::vector<std::int64_t> s;
  double sw = 0.0;
};

// s = lowerTri(A C)' 1 + C' u with the diagonal kept, and sw = s . w.
SusceptibleCounts compute_s_full(const Adjacency& a, const ObservedData& obs, std::span<const int> u);

}  // namespace rdsize
