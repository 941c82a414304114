#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rps {

using Vertex = std::uint32_t;
using PairIndex = std::uint64_t;

/// Largest supported vertex count. Pair indices then stay below 2^29.
inline constexpr std::uint32_t kMaxVertices = 1u << 15;

/// Unordered vertex pair, stored with u < v.
struct Pair {
  Vertex u = 0;
  Vertex v = 1;

  /// Canonicalizes {a, b}; throws std::invalid_argument when a == b.
  static Pair of(Vertex a, Vertex b);

  friend bool operator==(const Pair&, const Pair&) = default;
  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Position of {u, v} (u < v) in the flat triangular layout: v(v-1)/2 + u.
constexpr PairIndex pair_index(Pair p) {
  return static_cast<PairIndex>(p.v) * (p.v - 1) / 2 + p.u;
}
Pair pair_from_index(PairIndex index);

constexpr PairIndex pair_count(std::uint32_t n) {
  return static_cast<PairIndex>(n) * (n - 1) / 2;
}

enum class PairStatus : std::uint8_t { Edge = 0, Open = 1, Closed = 2 };
enum class Answer : std::uint8_t { No = 0, Yes = 1 };

struct PairState {
  PairStatus status;
  bool forbidden;
  friend bool operator==(const PairState&, const PairState&) = default;
};

const char* to_string(PairStatus s);
const char* to_string(Answer a);

struct TurnRecord {
  std::uint64_t turn_index = 0;
  Pair pair;
  Answer answer = Answer::No;
  friend bool operator==(const TurnRecord&, const TurnRecord&) = default;
};

/// Append-only turn history, packed to four bytes per turn (pair index in
/// the low 31 bits, answer in the top bit) so that games with tens of
/// millions of turns fit comfortably in memory.
class TurnLog {
 public:
  void push_back(Pair p, Answer a);
  std::size_t size() const { return packed_.size(); }
  bool empty() const { return packed_.empty(); }
  TurnRecord operator[](std::size_t i) const;
  PairIndex pair_index_at(std::size_t i) const { return packed_[i] & kIndexMask; }
  Answer answer_at(std::size_t i) const {
    return (packed_[i] & kYesBit) ? Answer::Yes : Answer::No;
  }
  std::uint64_t yes_count() const { return yes_count_; }
  void reserve(std::size_t n) { packed_.reserve(n); }

  friend bool operator==(const TurnLog&, const TurnLog&) = default;

 private:
  static constexpr std::uint32_t kYesBit = 1u << 31;
  static constexpr std::uint32_t kIndexMask = kYesBit - 1;
  std::vector<std::uint32_t> packed_;
  std::uint64_t yes_count_ = 0;
};

/// Why a proposed pair was rejected.
enum class IllegalReason { InvalidPair, Edge, Closed, Forbidden };
const char* to_string(IllegalReason r);

class IllegalMove : public std::logic_error {
 public:
  IllegalMove(Pair p, IllegalReason reason);
  Pair pair() const { return pair_; }
  IllegalReason reason() const { return reason_; }

 private:
  Pair pair_;
  IllegalReason reason_;
};

/// The evolving triangle-free graph with per-pair EDGE/OPEN/CLOSED status and
/// the forbidden (already proposed) flag. One byte per pair, so n = 10^4
/// costs about 50 MB.
class GameState {
 public:
  /// Empty graph on n vertices; every pair OPEN and not forbidden.
  /// Throws std::invalid_argument unless 2 <= n <= kMaxVertices.
  explicit GameState(std::uint32_t n);

  std::uint32_t n() const { return n_; }
  std::uint64_t turn() const { return turn_; }
  std::uint64_t edge_count() const { return edge_count_; }
  std::uint64_t open_not_forbidden_count() const { return open_not_forbidden_; }

  /// Throws std::invalid_argument if the pair has an out-of-range vertex.
  PairState pair_state(Pair p) const;
  PairState pair_state_at(PairIndex i) const {
    const std::uint8_t b = cells_[i];
    return {static_cast<PairStatus>(b & kStatusMask), (b & kForbiddenBit) != 0};
  }
  /// OPEN and not forbidden.
  bool is_legal_at(PairIndex i) const { return cells_[i] == static_cast<std::uint8_t>(PairStatus::Open); }
  bool is_legal(Pair p) const;

  /// All OPEN, non-forbidden pairs in index order. O(n^2).
  std::vector<Pair> legal_moves() const;
  bool is_terminal() const { return open_not_forbidden_ == 0; }

  /// Forbids `p`; on YES also adds the edge and closes every open pair that
  /// gains a common neighbour. Newly closed pair indices are appended to
  /// `newly_closed` when it is non-null. Throws IllegalMove.
  TurnRecord apply_turn(Pair p, Answer answer, std::vector<PairIndex>* newly_closed = nullptr);

  std::span<const Vertex> neighbors(Vertex x) const { return adjacency_[x]; }
  bool adjacent(Vertex x, Vertex y) const;
  /// Edge list in canonical pair order.
  std::vector<Pair> edges() const;

 private:
  static constexpr std::uint8_t kStatusMask = 0x3;
  static constexpr std::uint8_t kForbiddenBit = 0x4;

  void close_against(Vertex fresh, Vertex hub, std::vector<PairIndex>* newly_closed);
  void check_vertex(Vertex x) const;

  std::uint32_t n_;
  std::uint64_t turn_ = 0;
  std::uint64_t edge_count_ = 0;
  std::uint64_t open_not_forbidden_;
  std::vector<std::uint8_t> cells_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// True iff some three vertices are pairwise adjacent. Independent of the
/// status bookkeeping; O(sum over edges of min degree).
bool has_triangle(const GameState& state);

}  // namespace rps
