#include "rps/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "rps/rng.hpp"

namespace rps {

GraphView::GraphView(std::uint32_t n, std::vector<Pair> edges)
    : n_(n), edges_(std::move(edges)), adjacency_(n) {
  for (const Pair& e : edges_) {
    if (e.u >= e.v || e.v >= n_) {
      throw std::invalid_argument("graph: bad edge {" + std::to_string(e.u) + "," + std::to_string(e.v) + "}");
    }
    adjacency_[e.u].push_back(e.v);
    adjacency_[e.v].push_back(e.u);
  }
  for (auto& nbrs : adjacency_) {
    std::sort(nbrs.begin(), nbrs.end());
    if (std::adjacent_find(nbrs.begin(), nbrs.end()) != nbrs.end()) {
      throw std::invalid_argument("graph: duplicate edge");
    }
  }
  std::sort(edges_.begin(), edges_.end());
}

GraphView GraphView::from_state(const GameState& state) { return GraphView(state.n(), state.edges()); }

bool GraphView::adjacent(Vertex x, Vertex y) const {
  const auto& nx = adjacency_[x];
  return std::binary_search(nx.begin(), nx.end(), y);
}

GraphView complete_graph(std::uint32_t n) {
  std::vector<Pair> e;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u) e.push_back({u, v});
  return GraphView(n, std::move(e));
}

GraphView cycle_graph(std::uint32_t n) {
  std::vector<Pair> e;
  for (Vertex v = 0; v < n; ++v) e.push_back(Pair::of(v, (v + 1) % n));
  return GraphView(n, std::move(e));
}

GraphView star_graph(std::uint32_t leaves) {
  std::vector<Pair> e;
  for (Vertex v = 1; v <= leaves; ++v) e.push_back({0, v});
  return GraphView(leaves + 1, std::move(e));
}

GraphView petersen_graph() {
  std::vector<Pair> e;
  for (Vertex i = 0; i < 5; ++i) {
    e.push_back(Pair::of(i, (i + 1) % 5));          // outer cycle
    e.push_back(Pair::of(i, i + 5));                // spokes
    e.push_back(Pair::of(5 + i, 5 + (i + 2) % 5));  // inner pentagram
  }
  return GraphView(10, std::move(e));
}

GraphView erdos_renyi(std::uint32_t n, double p, std::uint64_t seed) {
  Rng rng = make_rng(seed);
  std::vector<Pair> e;
  for (Vertex v = 1; v < n; ++v)
    for (Vertex u = 0; u < v; ++u)
      if (bernoulli(rng, p)) e.push_back({u, v});
  return GraphView(n, std::move(e));
}

}  // namespace rps
