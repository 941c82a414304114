#include "rps/game.hpp"

#include <algorithm>
#include <cmath>

namespace rps {

Pair Pair::of(Vertex a, Vertex b) {
  if (a == b) throw std::invalid_argument("pair endpoints must differ: " + std::to_string(a));
  return a < b ? Pair{a, b} : Pair{b, a};
}

Pair pair_from_index(PairIndex index) {
  auto v = static_cast<PairIndex>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(index))) / 2.0);
  while (v * (v - 1) / 2 > index) --v;
  while ((v + 1) * v / 2 <= index) ++v;
  const PairIndex u = index - v * (v - 1) / 2;
  return Pair{static_cast<Vertex>(u), static_cast<Vertex>(v)};
}

const char* to_string(PairStatus s) {
  switch (s) {
    case PairStatus::Edge: return "EDGE";
    case PairStatus::Open: return "OPEN";
    case PairStatus::Closed: return "CLOSED";
  }
  return "?";
}

const char* to_string(Answer a) { return a == Answer::Yes ? "YES" : "NO"; }

const char* to_string(IllegalReason r) {
  switch (r) {
    case IllegalReason::InvalidPair: return "invalid pair";
    case IllegalReason::Edge: return "pair is already an edge";
    case IllegalReason::Closed: return "pair is closed";
    case IllegalReason::Forbidden: return "pair is forbidden";
  }
  return "?";
}

IllegalMove::IllegalMove(Pair p, IllegalReason reason)
    : std::logic_error("illegal move {" + std::to_string(p.u) + "," + std::to_string(p.v) +
                       "}: " + to_string(reason)),
      pair_(p),
      reason_(reason) {}

void TurnLog::push_back(Pair p, Answer a) {
  auto packed = static_cast<std::uint32_t>(pair_index(p));
  if (a == Answer::Yes) {
    packed |= kYesBit;
    ++yes_count_;
  }
  packed_.push_back(packed);
}

TurnRecord TurnLog::operator[](std::size_t i) const {
  return TurnRecord{i, pair_from_index(pair_index_at(i)), answer_at(i)};
}

GameState::GameState(std::uint32_t n)
    : n_(n), open_not_forbidden_(n >= 2 ? pair_count(n) : 0) {
  if (n < 2) throw std::invalid_argument("game needs at least 2 vertices, got " + std::to_string(n));
  if (n > kMaxVertices) {
    throw std::invalid_argument("game supports at most " + std::to_string(kMaxVertices) +
                                " vertices, got " + std::to_string(n));
  }
  cells_.assign(pair_count(n), static_cast<std::uint8_t>(PairStatus::Open));
  adjacency_.resize(n);
}

void GameState::check_vertex(Vertex x) const {
  if (x >= n_) {
    throw std::invalid_argument("vertex " + std::to_string(x) + " out of range for n=" +
                                std::to_string(n_));
  }
}

PairState GameState::pair_state(Pair p) const {
  check_vertex(p.v);
  if (p.u >= p.v) throw std::invalid_argument("pair is not canonical");
  return pair_state_at(pair_index(p));
}

bool GameState::is_legal(Pair p) const {
  return p.u < p.v && p.v < n_ && is_legal_at(pair_index(p));
}

std::vector<Pair> GameState::legal_moves() const {
  std::vector<Pair> out;
  out.reserve(open_not_forbidden_);
  for (PairIndex i = 0; i < cells_.size(); ++i) {
    if (is_legal_at(i)) out.push_back(pair_from_index(i));
  }
  return out;
}

bool GameState::adjacent(Vertex x, Vertex y) const {
  if (x == y) return false;
  return pair_state_at(pair_index(Pair::of(x, y))).status == PairStatus::Edge;
}

std::vector<Pair> GameState::edges() const {
  std::vector<Pair> out;
  out.reserve(edge_count_);
  for (Vertex x = 0; x < n_; ++x) {
    for (Vertex y : adjacency_[x]) {
      if (x < y) out.push_back(Pair{x, y});
    }
  }
  std::sort(out.begin(), out.end(),
            [](const Pair& a, const Pair& b) { return pair_index(a) < pair_index(b); });
  return out;
}

// Every neighbour z of `hub` (other than `fresh`) now shares `hub` with
// `fresh`, so {fresh, z} is closed unless it is an edge. It cannot be an
// edge: that would make {fresh, z, hub} a triangle.
void GameState::close_against(Vertex fresh, Vertex hub, std::vector<PairIndex>* newly_closed) {
  for (Vertex z : adjacency_[hub]) {
    if (z == fresh) continue;
    const PairIndex idx = pair_index(Pair::of(fresh, z));
    std::uint8_t& cell = cells_[idx];
    if ((cell & kStatusMask) != static_cast<std::uint8_t>(PairStatus::Open)) continue;
    if (!(cell & kForbiddenBit)) --open_not_forbidden_;
    cell = static_cast<std::uint8_t>((cell & kForbiddenBit) | static_cast<std::uint8_t>(PairStatus::Closed));
    if (newly_closed != nullptr) newly_closed->push_back(idx);
  }
}

TurnRecord GameState::apply_turn(Pair p, Answer answer, std::vector<PairIndex>* newly_closed) {
  if (p.u >= p.v || p.v >= n_) throw IllegalMove(p, IllegalReason::InvalidPair);
  const PairIndex idx = pair_index(p);
  const PairState st = pair_state_at(idx);
  if (st.status == PairStatus::Edge) throw IllegalMove(p, IllegalReason::Edge);
  if (st.status == PairStatus::Closed) throw IllegalMove(p, IllegalReason::Closed);
  if (st.forbidden) throw IllegalMove(p, IllegalReason::Forbidden);

  --open_not_forbidden_;
  if (answer == Answer::Yes) {
    cells_[idx] = kForbiddenBit | static_cast<std::uint8_t>(PairStatus::Edge);
    close_against(p.u, p.v, newly_closed);
    close_against(p.v, p.u, newly_closed);
    adjacency_[p.u].push_back(p.v);
    adjacency_[p.v].push_back(p.u);
    ++edge_count_;
  } else {
    cells_[idx] = kForbiddenBit | static_cast<std::uint8_t>(PairStatus::Open);
  }
  return TurnRecord{turn_++, p, answer};
}

bool has_triangle(const GameState& state) {
  std::vector<std::uint8_t> mark(state.n(), 0);
  for (Vertex x = 0; x < state.n(); ++x) {
    const auto nx = state.neighbors(x);
    for (Vertex y : nx) mark[y] = 1;
    for (Vertex y : nx) {
      if (y < x) continue;
      for (Vertex z : state.neighbors(y)) {
        if (z != x && mark[z]) return true;
      }
    }
    for (Vertex y : nx) mark[y] = 0;
  }
  return false;
}

}  // namespace rps
