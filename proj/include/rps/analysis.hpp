#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rps/engine.hpp"
#include "rps/graph.hpp"
#include "rps/independent_set.hpp"
#include "rps/proposers.hpp"
#include "rps/rational.hpp"

namespace rps {

/// Fraction of pairs inside `subset` that are OPEN (forbidden or not).
/// Throws std::invalid_argument when |subset| < 2.
Rational open_density(const GameState& state, std::span<const Vertex> subset);

/// 2 n log2(d) / (3 d); throws std::invalid_argument for d <= 1.
double shearer_bound(double n_vertices, double avg_degree);

/// Number of pairs {x, y} inside S with a common neighbour outside S.
std::uint64_t count_closed_by_outside(const GraphView& g, std::span<const Vertex> s);

/// True iff every edge of g missing from h is the third edge of a triangle
/// whose other two edges lie in h. Throws std::invalid_argument unless h is a
/// spanning subgraph of g.
bool is_reachable_subgraph(const GraphView& g, const GraphView& h);

struct Violation {
  std::string rule;
  std::uint64_t turn;  // turn index, or the turn count for end-of-game rules
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

/// Replays from the empty graph. Rules: "invalid pair", "forbidden
/// re-proposal", "closed pair proposed", "edge pair proposed", "triangle
/// created", "not terminal", "final edges mismatch". Illegal turns are
/// reported and skipped so that later turns are still checked.
ValidationReport verify_transcript(const Transcript& t);

struct DecrementRow {
  std::uint32_t epoch;   // k >= 2
  std::uint32_t period;  // i in I_{k-1}
  double p_i;
  double observed;       // o_{k,i} / o_{k,i-1}; 1 when o_{k,i-1} = 0
  double reference;      // 1 - p_i^2 / 16
};

struct EpochStats {
  std::vector<Rational> p;          // p_i, index 1..n/6 (index 0 unused)
  std::vector<Rational> P;          // P_k, index 1..m
  std::vector<Rational> o;          // o_k, index 1..m (o_1 = 1)
  /// o_{k,i} for k = 1..m and i = 0..n/6 (i = 0 is the empty graph).
  std::vector<std::vector<Rational>> o_ki;
  std::vector<DecrementRow> decrements;
  /// 200 / (o_k sqrt n) per epoch, compared against P_k (infinite when o_k = 0).
  std::vector<double> trigger;
  /// The incremental open-pair counts agreed with the full rescans at every
  /// period boundary.
  bool routes_agree = true;
};

/// Replays a paper_proposer transcript period by period. Throws
/// std::invalid_argument when n, schedule and partition disagree or the
/// transcript is shorter than the planned periods.
EpochStats period_epoch_stats(const Transcript& t, const EpochSchedule& sched, const Partition& part);

/// Harness-only Decider that sees the proposed pair and answers YES iff it is
/// an edge of a pre-sampled graph. Not a DeciderPolicy: it cannot be handed
/// to play_game.
class ClairvoyantDecider {
 public:
  explicit ClairvoyantDecider(GraphView sample) : sample_(std::move(sample)) {}
  Answer answer(Pair p) const { return sample_.adjacent(p.u, p.v) ? Answer::Yes : Answer::No; }
  const GraphView& sample() const { return sample_; }

 private:
  GraphView sample_;
};

/// Plays against a clairvoyant decider. The transcript's decider descriptor
/// has kind "clairvoyant", which make_decider refuses.
Transcript play_clairvoyant(ProposerPolicy& proposer, const ClairvoyantDecider& decider,
                            std::uint64_t master_seed);

struct CurvePoint {
  std::uint32_t s;
  std::uint64_t wins;
  std::uint64_t trials;
};

struct ThresholdEstimate {
  std::uint32_t n = 0;
  StrategyDescriptor proposer;
  StrategyDescriptor decider;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  CertificateMethod method = CertificateMethod::Exact;
  std::vector<std::uint32_t> alphas;  // certificate size per game
  std::vector<CurvePoint> curve;      // s = 1 .. max alpha + 1 (capped at n)
  std::vector<double> smoothed;       // isotonic (non-increasing) win rates
  bool isotonic_adjusted = false;
  std::uint32_t s_star = 0;
  std::string note;
};

/// Win rates made non-increasing by pool-adjacent-violators.
std::vector<double> isotonic_non_increasing(std::span<const double> rates);

/// Plays `trials` games (game i seeded with derive_seed(seed, i)), certifies
/// each final graph, and adjudicates every s against the same batch.
/// Requires trials >= 30.
ThresholdEstimate estimate_threshold(std::uint32_t n, const StrategyDescriptor& proposer,
                                     const StrategyDescriptor& decider, std::uint64_t trials,
                                     std::uint64_t seed, unsigned jobs = 1);

}  // namespace rps
