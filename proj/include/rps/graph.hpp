#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rps/game.hpp"

namespace rps {

/// Immutable simple undirected graph with sorted adjacency lists.
class GraphView {
 public:
  GraphView() = default;
  /// Throws std::invalid_argument on out-of-range endpoints or duplicate edges.
  GraphView(std::uint32_t n, std::vector<Pair> edges);
  static GraphView from_state(const GameState& state);

  std::uint32_t n() const { return n_; }
  std::span<const Pair> edges() const { return edges_; }
  std::size_t edge_count() const { return edges_.size(); }
  std::span<const Vertex> neighbors(Vertex v) const { return adjacency_[v]; }
  std::size_t degree(Vertex v) const { return adjacency_[v].size(); }
  bool adjacent(Vertex x, Vertex y) const;
  double average_degree() const { return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / n_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<Pair> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

GraphView complete_graph(std::uint32_t n);
GraphView cycle_graph(std::uint32_t n);
GraphView star_graph(std::uint32_t leaves);  // centre 0
GraphView petersen_graph();
/// G(n, p) with each pair drawn independently.
GraphView erdos_renyi(std::uint32_t n, double p, std::uint64_t seed);

}  // namespace rps
