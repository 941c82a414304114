#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>

#include "json.hpp"
#include "rps/game.hpp"

namespace rps {

/// A strategy kind plus its parameters, e.g. {"kind": "iid", "p": 0.1}.
///
/// Known kinds:
///   proposers: "uniform", "paper_proposer"
///   deciders:  "iid" (p, or c meaning p = c/sqrt(n)), "always_yes",
///              "always_no", "budget" (k), "scripted" (answers),
///              "adaptive_threshold" (target)
class StrategyDescriptor {
 public:
  StrategyDescriptor() = default;
  /// Validates kind and parameters; throws std::invalid_argument.
  explicit StrategyDescriptor(nlohmann::json spec);

  /// Accepts either a JSON object or the short form "kind[:param]", e.g.
  /// "iid:0.1", "iid:c=1", "budget:5", "scripted:YNY", "paper_proposer".
  static StrategyDescriptor parse(std::string_view text);

  const std::string& kind() const { return kind_; }
  const nlohmann::json& json() const { return spec_; }
  /// Short form accepted by parse(); used as a CSV label.
  std::string label() const;

  bool is_proposer() const;
  bool is_decider() const;

  /// YES probability for an "iid" decider at vertex count n.
  double iid_probability(std::uint32_t n) const;

  friend bool operator==(const StrategyDescriptor& a, const StrategyDescriptor& b) {
    return a.spec_ == b.spec_;
  }

 private:
  std::string kind_;
  nlohmann::json spec_;
};

/// Everything a Decider may look at when answering. There is deliberately no
/// field for the pair being proposed this turn.
struct DeciderView {
  std::uint32_t n;
  std::uint64_t turn;
  const TurnLog& history;  // strictly earlier turns
};

class DeciderPolicy {
 public:
  virtual ~DeciderPolicy() = default;
  virtual Answer decide(const DeciderView& view) = 0;
  virtual const StrategyDescriptor& descriptor() const = 0;
};

class ProposerPolicy {
 public:
  virtual ~ProposerPolicy() = default;
  /// Must return a legal pair; only called while the game is not terminal.
  virtual Pair propose(const GameState& state, const TurnLog& history) = 0;
  virtual const StrategyDescriptor& descriptor() const = 0;
};

/// Throws std::invalid_argument for unknown kinds or bad parameters.
std::unique_ptr<DeciderPolicy> make_decider(const StrategyDescriptor& desc, std::uint32_t n,
                                            std::uint64_t seed);
std::unique_ptr<ProposerPolicy> make_proposer(const StrategyDescriptor& desc, std::uint32_t n,
                                              std::uint64_t seed);

}  // namespace rps
