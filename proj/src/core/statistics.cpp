#include "rdsize/statistics.hpp"

#include <stdexcept>
#include <string>

namespace rdsize {

Adjacency Adjacency::from_edges(int n, std::span<const std::pair<int, int>> edges) {
  Adjacency a(n);
  for (const auto& [i, j] : edges) a.set(i, j, true);
  return a;
}

Adjacency Adjacency::minimal(const ObservedData& obs) {
  return from_edges(obs.size(), obs.recruitment_edges());
}

void Adjacency::set(int i, int j, bool present) {
  if (i == j) throw std::invalid_argument("Adjacency: self-loops are not allowed");
  bits_[index(i, j)] = present ? 1 : 0;
  bits_[index(j, i)] = present ? 1 : 0;
}

int Adjacency::degree(int i) const {
  int d = 0;
  for (int j = 0; j < n_; ++j) d += bits_[index(i, j)];
  return d;
}

std::int64_t Adjacency::edge_count() const {
  std::int64_t total = 0;
  for (auto b : bits_) total += b;
  return total / 2;
}

std::vector<std::pair<int, int>> Adjacency::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has(i, j)) out.emplace_back(i, j);
  return out;
}

std::string Compatibility::describe() const {
  switch (violated) {
    case 0:
      return "compatible";
    case 1:
      return "vertex set does not match the recruited subjects";
    case 2:
      return "recruitment edge {" + std::to_string(vertex) + "," + std::to_string(other) + "} missing";
    case 3:
      return "subject " + std::to_string(vertex) + " has more subgraph edges than its degree";
  }
  return "unknown";
}

Compatibility check_compatibility(const Adjacency& a, const ObservedData& obs) {
  if (a.size() != obs.size()) return Compatibility{1};
  for (const auto& [r, j] : obs.recruitment_edges())
    if (!a.has(r, j)) return Compatibility{2, r, j};
  for (int i = 0; i < obs.size(); ++i)
    if (a.degree(i) > obs.degree(i)) return Compatibility{3, i};
  return Compatibility{};
}

PendantCounts compute_du(const Adjacency& a, std::span<const int> degrees) {
  const int n = a.size();
  PendantCounts out;
  out.du.resize(n);
  for (int i = 0; i < n; ++i) {
    int earlier = 0;
    for (int j = 0; j < i; ++j) earlier += a.has(i, j) ? 1 : 0;
    out.du[i] = degrees[i] - earlier;
    if (out.du[i] < 0) throw std::domain_error("compute_du: negative pendant count at subject " + std::to_string(i));
    out.total += out.du[i];
  }
  return out;
}

std::vector<int> residual_degrees(const Adjacency& a, std::span<const int> degrees) {
  std::vector<int> u(a.size());
  for (int i = 0; i < a.size(); ++i) u[i] = degrees[i] - a.degree(i);
  return u;
}

SusceptibleCounts compute_s_full(const Adjacency& a, const ObservedData& obs, std::span<const int> u) {
  const int n = obs.size();
  SusceptibleCounts out;
  out.s.assign(n, 0);
  const auto w = obs.waits();
  for (int k = 0; k < n; ++k) {
    // lowerTri(AC)'1: sum over rows i >= k of (AC)_{ik}; C'u: pendant edges of holders.
    std::int64_t s = 0;
    for (int l : obs.coupon_holders(k)) {
      for (int i = k; i < n; ++i) s += a.has(i, l) ? 1 : 0;
      s += u[l];
    }
    out.s[k] = s;
    out.sw += static_cast<double>(s) * w[k];
  }
  return out;
}

}  // namespace rdsize
