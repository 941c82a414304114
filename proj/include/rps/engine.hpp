#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "rps/game.hpp"
#include "rps/strategy.hpp"

namespace rps {

inline constexpr int kTranscriptVersion = 1;

/// Replayable record of one game.
struct Transcript {
  std::uint32_t n = 0;
  std::uint32_t target_s = 0;
  StrategyDescriptor proposer;
  StrategyDescriptor decider;
  std::uint64_t master_seed = 0;
  TurnLog turns;
  std::vector<Pair> final_edges;
};

/// A policy returned a pair that was not legal.
class ProtocolViolation : public std::runtime_error {
 public:
  ProtocolViolation(const std::string& policy, Pair p, IllegalReason reason);
  IllegalReason reason() const { return reason_; }

 private:
  IllegalReason reason_;
};

/// Plays to the end. Each turn the decider answers first, seeing only the
/// public history; then the proposer picks a legal pair; then the turn is
/// applied and appended to the history.
Transcript play_game(std::uint32_t n, ProposerPolicy& proposer, DeciderPolicy& decider,
                     std::uint32_t target_s, std::uint64_t master_seed);

/// Builds both policies from descriptors with seeds derived from
/// `master_seed` (proposer: index 0, decider: index 1) and plays.
Transcript run_game(std::uint32_t n, const StrategyDescriptor& proposer,
                    const StrategyDescriptor& decider, std::uint32_t target_s,
                    std::uint64_t master_seed);

/// Rebuilds the final state from an empty graph. Throws IllegalMove on the
/// first illegal turn.
GameState replay(const Transcript& t);

class TranscriptParseError : public std::runtime_error {
 public:
  TranscriptParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// JSON Lines: a header {version, n, target_s, proposer, decider,
/// master_seed}, one {i, u, v, answer} object per turn, and a final
/// {edges: [[u, v], ...]} line.
void write_transcript(std::ostream& out, const Transcript& t);
/// Structural parse only; game legality is the verifier's job.
Transcript read_transcript(std::istream& in);

void save_transcript(const std::string& path, const Transcript& t);
Transcript load_transcript(const std::string& path);

}  // namespace rps
