#include "rps/independent_set.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <queue>
#include <string>
#include <tuple>

#include "rps/rng.hpp"

namespace rps {
namespace {

struct Bits {
  std::array<std::uint64_t, 2> w{0, 0};

  void set(std::uint32_t i) { w[i >> 6] |= 1ULL << (i & 63); }
  void reset(std::uint32_t i) { w[i >> 6] &= ~(1ULL << (i & 63)); }
  bool empty() const { return (w[0] | w[1]) == 0; }
  int count() const { return std::popcount(w[0]) + std::popcount(w[1]); }
  Bits operator&(const Bits& o) const { return {{w[0] & o.w[0], w[1] & o.w[1]}}; }
  Bits without(const Bits& o) const { return {{w[0] & ~o.w[0], w[1] & ~o.w[1]}}; }

  template <typename F>
  void for_each(F&& f) const {
    for (std::uint32_t k = 0; k < 2; ++k) {
      for (std::uint64_t x = w[k]; x != 0; x &= x - 1) {
        f(static_cast<std::uint32_t>(k * 64 + std::countr_zero(x)));
      }
    }
  }
};

class MisSearch {
 public:
  explicit MisSearch(const GraphView& g) : n_(g.n()), adj_(g.n()), closed_(g.n()) {
    for (Vertex v = 0; v < n_; ++v) {
      for (Vertex w : g.neighbors(v)) adj_[v].set(w);
      closed_[v] = adj_[v];
      closed_[v].set(v);
    }
  }

  std::vector<Vertex> run(std::vector<Vertex> seed_set) {
    best_ = std::move(seed_set);
    Bits all;
    for (Vertex v = 0; v < n_; ++v) all.set(v);
    search(all);
    return best_;
  }

 private:
  void search(Bits p) {
    const std::size_t mark = chosen_.size();
    for (bool changed = true; changed;) {
      changed = false;
      p.for_each([&](std::uint32_t v) {
        if (!((p.w[v >> 6] >> (v & 63)) & 1)) return;
        if ((adj_[v] & p).count() <= 1) {
          chosen_.push_back(v);
          p = p.without(closed_[v]);
          changed = true;
        }
      });
    }

    if (p.empty()) {
      if (chosen_.size() > best_.size()) best_ = chosen_;
      chosen_.resize(mark);
      return;
    }
    if (chosen_.size() + upper_bound(p) <= best_.size()) {
      chosen_.resize(mark);
      return;
    }

    std::uint32_t pivot = 0;
    int pivot_degree = -1;
    p.for_each([&](std::uint32_t v) {
      const int d = (adj_[v] & p).count();
      if (d > pivot_degree) {
        pivot_degree = d;
        pivot = v;
      }
    });

    chosen_.push_back(pivot);
    search(p.without(closed_[pivot]));
    chosen_.pop_back();
    Bits rest = p;
    rest.reset(pivot);
    search(rest);
    chosen_.resize(mark);
  }

  // Cover P by the edges of a greedy matching plus singletons; an
  // independent set meets each part at most once.
  std::size_t upper_bound(const Bits& p) const {
    Bits free = p;
    std::size_t matched = 0;
    p.for_each([&](std::uint32_t v) {
      if (!((free.w[v >> 6] >> (v & 63)) & 1)) return;
      const Bits cand = adj_[v] & free;
      if (cand.empty()) return;
      std::uint32_t w = 0;
      cand.for_each([&](std::uint32_t x) { w = x; });
      free.reset(v);
      free.reset(w);
      ++matched;
    });
    return static_cast<std::size_t>(p.count()) - matched;
  }

  std::uint32_t n_;
  std::vector<Bits> adj_;
  std::vector<Bits> closed_;
  std::vector<Vertex> chosen_;
  std::vector<Vertex> best_;
};

std::vector<Vertex> min_degree_greedy(const GraphView& g, Rng& rng) {
  const std::uint32_t n = g.n();
  std::vector<std::uint32_t> rank(n);
  for (std::uint32_t i = 0; i < n; ++i) rank[i] = i;
  shuffle(std::span<std::uint32_t>(rank), rng);

  std::vector<std::uint32_t> degree(n);
  std::vector<std::uint8_t> alive(n, 1);
  using Entry = std::tuple<std::uint32_t, std::uint32_t, Vertex>;  // degree, rank, vertex
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  for (Vertex v = 0; v < n; ++v) {
    degree[v] = static_cast<std::uint32_t>(g.degree(v));
    queue.emplace(degree[v], rank[v], v);
  }

  std::vector<Vertex> chosen;
  while (!queue.empty()) {
    const auto [d, r, v] = queue.top();
    queue.pop();
    if (!alive[v] || d != degree[v]) continue;
    chosen.push_back(v);
    alive[v] = 0;
    for (Vertex w : g.neighbors(v)) {
      if (!alive[w]) continue;
      alive[w] = 0;
      for (Vertex x : g.neighbors(w)) {
        if (!alive[x]) continue;
        --degree[x];
        queue.emplace(degree[x], rank[x], x);
      }
    }
  }
  return chosen;
}

}  // namespace

IndependentSetCertificate::IndependentSetCertificate(const GraphView& g, std::vector<Vertex> vertices,
                                                     CertificateMethod method)
    : vertices_(std::move(vertices)), method_(method) {
  std::sort(vertices_.begin(), vertices_.end());
  if (std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end()) {
    throw std::logic_error("certificate lists a vertex twice");
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] >= g.n()) throw std::logic_error("certificate vertex out of range");
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      if (g.adjacent(vertices_[i], vertices_[j])) {
        throw std::logic_error("certificate is not independent: " + std::to_string(vertices_[i]) + " ~ " +
                               std::to_string(vertices_[j]));
      }
    }
  }
}

IndependentSetCertificate exact_independence_number(const GraphView& g) {
  if (g.n() > kExactMisCap) {
    throw SizeLimitError("exact independence number is capped at n=" + std::to_string(kExactMisCap) +
                         "; use greedy_independent_set for n=" + std::to_string(g.n()));
  }
  Rng rng = make_rng(g.n());
  MisSearch search(g);
  return IndependentSetCertificate(g, search.run(min_degree_greedy(g, rng)), CertificateMethod::Exact);
}

std::uint64_t turan_floor(const GraphView& g) {
  // n / (2m/n + 1) = n^2 / (2m + n)
  const std::uint64_t n = g.n();
  if (n == 0) return 0;
  const std::uint64_t den = 2 * g.edge_count() + n;
  return (n * n + den - 1) / den;
}

IndependentSetCertificate greedy_independent_set(const GraphView& g, std::uint32_t repeats,
                                                 std::uint64_t seed) {
  if (repeats < 1) throw std::invalid_argument("greedy needs at least one repeat");
  Rng rng = make_rng(seed);
  std::vector<Vertex> best;
  for (std::uint32_t r = 0; r < repeats; ++r) {
    auto found = min_degree_greedy(g, rng);
    if (found.size() > best.size()) best = std::move(found);
  }
  if (best.size() < turan_floor(g)) throw std::logic_error("greedy fell below the Turan floor");
  return IndependentSetCertificate(g, std::move(best), CertificateMethod::Greedy);
}

IndependentSetCertificate certify(const GraphView& g, std::uint64_t seed) {
  if (g.n() <= kExactMisCap) return exact_independence_number(g);
  const auto repeats = static_cast<std::uint32_t>(std::ceil(std::log2(static_cast<double>(g.n()))));
  return greedy_independent_set(g, repeats, seed);
}

}  // namespace rps
