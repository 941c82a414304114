#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "rps/rational.hpp"
#include "rps/rng.hpp"
#include "rps/strategy.hpp"

namespace rps {

/// Proposes a uniformly random legal pair each turn.
///
/// On the first call the currently legal pairs are shuffled once; later calls
/// walk that order and skip pairs that have since become illegal. Since the
/// legal set only ever shrinks, the next surviving entry is uniform over the
/// pairs that are legal now.
class UniformProposer final : public ProposerPolicy {
 public:
  UniformProposer(StrategyDescriptor desc, std::uint64_t seed);
  Pair propose(const GameState& state, const TurnLog& history) override;
  const StrategyDescriptor& descriptor() const override { return desc_; }

 private:
  StrategyDescriptor desc_;
  Rng rng_;
  bool initialized_ = false;
  std::vector<std::uint32_t> order_;
  std::size_t cursor_ = 0;
};

/// Vertex classes used by the period strategy: U and V of size n/6 and
/// A and B of size n/3, laid out in that order as consecutive index ranges.
struct Partition {
  std::uint32_t n = 0;
  std::vector<Vertex> u, v, a, b;
};

/// Requires n divisible by 6 and n >= 12; throws std::invalid_argument.
Partition build_partition(std::uint32_t n);

/// Binary iterated logarithm: the number of times log2 must be applied to n
/// before the value drops to <= 1.
std::uint32_t log_star2(double n);

/// Epoch grouping of the n/6 periods. eps_k = 1/(6 * 2^k) for k < m,
/// eps_m = eps_{m-1}, m = log*(n) + 1. Periods are 1-based.
struct EpochSchedule {
  std::uint32_t n = 0;
  std::uint32_t m = 0;
  std::vector<Rational> eps;
  std::vector<std::uint32_t> counts;                  // |I_k|
  std::vector<std::vector<std::uint32_t>> periods;    // I_k
  std::vector<std::uint32_t> epoch_of_period;         // index 1..n/6 -> k (1-based)
};

class UnsupportedN : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Rounds eps_k * n to integers by largest remainder, then gives every empty
/// epoch one period taken from the largest. Throws std::invalid_argument for
/// n not divisible by 6, UnsupportedN when n/6 < m.
EpochSchedule epoch_schedule(std::uint32_t n);

struct PeriodPlan {
  std::uint32_t period = 0;  // 1-based
  std::vector<Pair> pairs;
  std::uint32_t u_to_v = 0;
  std::uint32_t v_internal = 0;
  std::uint32_t filler = 0;
};

/// Lexicographic position in A x B of the next filler candidate.
struct FillerCursor {
  std::uint64_t position = 0;
  std::uint64_t used = 0;
};

/// L_i: every {u_i, v_j} and every legal {v_i, v_j} with j > i, topped up
/// with never-proposed {a, b} pairs in lexicographic order until |L_i| = n/3.
/// Shuffled when `rng` is non-null. Throws std::logic_error if A x B runs dry.
PeriodPlan compile_period_list(const GameState& state, const Partition& part,
                               std::uint32_t period, FillerCursor& cursor, Rng* rng);

/// A planned pair was no longer legal when its turn came.
class PlanViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct PaperProposerDiagnostics {
  std::uint32_t periods_started = 0;
  std::vector<std::uint32_t> plan_sizes;       // |L_i| per period
  std::vector<std::uint32_t> emitted;          // proposals made in each period
  std::uint32_t isolation_failures = 0;        // u_i had an edge at period start
  std::uint64_t filler_used = 0;
  std::uint64_t filler_capacity = 0;           // |A| * |B|
  std::uint64_t endgame_proposals = 0;
};

/// The period/endgame Proposer: n/6 periods of n/3 planned proposals each,
/// then every remaining legal pair in uniformly random order.
class PaperProposer final : public ProposerPolicy {
 public:
  PaperProposer(StrategyDescriptor desc, std::uint32_t n, std::uint64_t seed);
  Pair propose(const GameState& state, const TurnLog& history) override;
  const StrategyDescriptor& descriptor() const override { return desc_; }

  const Partition& partition() const { return part_; }
  const PaperProposerDiagnostics& diagnostics() const { return diag_; }
  /// Number of planned (non-endgame) turns: (n/6) * (n/3).
  std::uint64_t planned_turns() const;

 private:
  void start_period(const GameState& state);

  StrategyDescriptor desc_;
  Partition part_;
  Rng rng_;
  FillerCursor filler_;
  PeriodPlan plan_;
  std::size_t plan_pos_ = 0;
  std::uint32_t period_ = 0;
  bool in_endgame_ = false;
  std::vector<std::uint32_t> endgame_order_;
  std::size_t endgame_cursor_ = 0;
  PaperProposerDiagnostics diag_;
};

}  // namespace rps
