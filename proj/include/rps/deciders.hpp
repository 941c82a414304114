#pragma once

#include <vector>

#include "rps/rng.hpp"
#include "rps/strategy.hpp"

namespace rps {

/// YES with probability p on every turn, independently.
class IidDecider final : public DeciderPolicy {
 public:
  IidDecider(StrategyDescriptor desc, double p, std::uint64_t seed);
  Answer decide(const DeciderView& view) override;
  const StrategyDescriptor& descriptor() const override { return desc_; }
  double p() const { return p_; }

 private:
  StrategyDescriptor desc_;
  double p_;
  Rng rng_;
};

class ConstantDecider final : public DeciderPolicy {
 public:
  ConstantDecider(StrategyDescriptor desc, Answer answer) : desc_(std::move(desc)), answer_(answer) {}
  Answer decide(const DeciderView&) override { return answer_; }
  const StrategyDescriptor& descriptor() const override { return desc_; }

 private:
  StrategyDescriptor desc_;
  Answer answer_;
};

/// YES for the first k turns, NO afterwards.
class BudgetDecider final : public DeciderPolicy {
 public:
  BudgetDecider(StrategyDescriptor desc, std::uint64_t k) : desc_(std::move(desc)), k_(k) {}
  Answer decide(const DeciderView& view) override { return view.turn < k_ ? Answer::Yes : Answer::No; }
  const StrategyDescriptor& descriptor() const override { return desc_; }

 private:
  StrategyDescriptor desc_;
  std::uint64_t k_;
};

/// Replays a fixed answer list; NO once the list runs out.
class ScriptedDecider final : public DeciderPolicy {
 public:
  ScriptedDecider(StrategyDescriptor desc, std::vector<Answer> answers)
      : desc_(std::move(desc)), answers_(std::move(answers)) {}
  Answer decide(const DeciderView& view) override {
    return view.turn < answers_.size() ? answers_[view.turn] : Answer::No;
  }
  const StrategyDescriptor& descriptor() const override { return desc_; }

 private:
  StrategyDescriptor desc_;
  std::vector<Answer> answers_;
};

/// YES iff the YES fraction over earlier turns is below `target`.
class AdaptiveThresholdDecider final : public DeciderPolicy {
 public:
  AdaptiveThresholdDecider(StrategyDescriptor desc, double target)
      : desc_(std::move(desc)), target_(target) {}
  Answer decide(const DeciderView& view) override;
  const StrategyDescriptor& descriptor() const override { return desc_; }

 private:
  StrategyDescriptor desc_;
  double target_;
};

}  // namespace rps
