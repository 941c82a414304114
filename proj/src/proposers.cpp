#include "rps/proposers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rps {

UniformProposer::UniformProposer(StrategyDescriptor desc, std::uint64_t seed)
    : desc_(std::move(desc)), rng_(make_rng(seed)) {}

Pair UniformProposer::propose(const GameState& state, const TurnLog&) {
  if (!initialized_) {
    order_.reserve(state.open_not_forbidden_count());
    for (PairIndex i = 0; i < pair_count(state.n()); ++i) {
      if (state.is_legal_at(i)) order_.push_back(static_cast<std::uint32_t>(i));
    }
    shuffle(std::span<std::uint32_t>(order_), rng_);
    initialized_ = true;
  }
  while (cursor_ < order_.size() && !state.is_legal_at(order_[cursor_])) ++cursor_;
  if (cursor_ == order_.size()) throw std::logic_error("uniform proposer: no legal pair left");
  return pair_from_index(order_[cursor_++]);
}

Partition build_partition(std::uint32_t n) {
  if (n % 6 != 0 || n < 12) {
    throw std::invalid_argument("partition needs n divisible by 6 and n >= 12, got " + std::to_string(n));
  }
  Partition p;
  p.n = n;
  const std::uint32_t sixth = n / 6;
  const std::uint32_t third = n / 3;
  auto range = [](Vertex first, std::uint32_t count) {
    std::vector<Vertex> out(count);
    std::iota(out.begin(), out.end(), first);
    return out;
  };
  p.u = range(0, sixth);
  p.v = range(sixth, sixth);
  p.a = range(2 * sixth, third);
  p.b = range(2 * sixth + third, third);
  return p;
}

std::uint32_t log_star2(double n) {
  std::uint32_t k = 0;
  while (n > 1.0) {
    n = std::log2(n);
    ++k;
  }
  return k;
}

EpochSchedule epoch_schedule(std::uint32_t n) {
  if (n % 6 != 0 || n == 0) {
    throw std::invalid_argument("epoch schedule needs n divisible by 6, got " + std::to_string(n));
  }
  EpochSchedule s;
  s.n = n;
  s.m = log_star2(static_cast<double>(n)) + 1;
  const std::uint32_t total = n / 6;
  if (s.m < 2) throw UnsupportedN("epoch schedule needs at least two epochs");
  if (total < s.m) {
    throw UnsupportedN("n=" + std::to_string(n) + " gives " + std::to_string(total) +
                       " periods, fewer than m=" + std::to_string(s.m) + " epochs");
  }

  for (std::uint32_t k = 1; k < s.m; ++k) s.eps.emplace_back(1, 6LL << k);
  s.eps.push_back(s.eps.back());

  // Largest remainder on the quotas eps_k * n.
  std::vector<Rational> remainder;
  std::uint32_t assigned = 0;
  for (const auto& e : s.eps) {
    const Rational quota = e * Rational(n);
    const auto whole = static_cast<std::uint32_t>(quota.num() / quota.den());
    s.counts.push_back(whole);
    remainder.push_back(quota - Rational(whole));
    assigned += whole;
  }
  std::vector<std::uint32_t> by_remainder(s.m);
  std::iota(by_remainder.begin(), by_remainder.end(), 0u);
  std::stable_sort(by_remainder.begin(), by_remainder.end(),
                   [&](std::uint32_t x, std::uint32_t y) { return remainder[x] > remainder[y]; });
  for (std::uint32_t i = 0; assigned < total; ++i, ++assigned) ++s.counts[by_remainder[i % s.m]];

  for (std::uint32_t k = 0; k < s.m; ++k) {
    if (s.counts[k] > 0) continue;
    const auto donor = static_cast<std::uint32_t>(
        std::max_element(s.counts.begin(), s.counts.end()) - s.counts.begin());
    if (s.counts[donor] <= 1) throw UnsupportedN("cannot give every epoch a period");
    --s.counts[donor];
    s.counts[k] = 1;
  }

  s.epoch_of_period.assign(total + 1, 0);
  std::uint32_t next = 1;
  for (std::uint32_t k = 0; k < s.m; ++k) {
    std::vector<std::uint32_t> periods(s.counts[k]);
    std::iota(periods.begin(), periods.end(), next);
    for (auto i : periods) s.epoch_of_period[i] = k + 1;
    next += s.counts[k];
    s.periods.push_back(std::move(periods));
  }
  return s;
}

PeriodPlan compile_period_list(const GameState& state, const Partition& part, std::uint32_t period,
                               FillerCursor& cursor, Rng* rng) {
  const std::uint32_t sixth = part.n / 6;
  if (period < 1 || period > sixth) throw std::invalid_argument("period index out of range");
  PeriodPlan plan;
  plan.period = period;
  const std::uint32_t target = part.n / 3;
  plan.pairs.reserve(target);

  const std::size_t i = period - 1;
  for (std::size_t j = i + 1; j < sixth; ++j) {
    plan.pairs.push_back(Pair::of(part.u[i], part.v[j]));
    ++plan.u_to_v;
  }
  for (std::size_t j = i + 1; j < sixth; ++j) {
    const Pair p = Pair::of(part.v[i], part.v[j]);
    if (state.is_legal(p)) {
      plan.pairs.push_back(p);
      ++plan.v_internal;
    }
  }

  const std::uint64_t capacity = static_cast<std::uint64_t>(part.a.size()) * part.b.size();
  while (plan.pairs.size() < target) {
    if (cursor.position >= capacity) {
      throw std::logic_error("filler pairs exhausted in period " + std::to_string(period));
    }
    const Pair p = Pair::of(part.a[cursor.position / part.b.size()],
                            part.b[cursor.position % part.b.size()]);
    ++cursor.position;
    if (state.pair_state(p).forbidden) continue;
    plan.pairs.push_back(p);
    ++plan.filler;
    ++cursor.used;
  }

  if (rng != nullptr) shuffle(std::span<Pair>(plan.pairs), *rng);
  return plan;
}

PaperProposer::PaperProposer(StrategyDescriptor desc, std::uint32_t n, std::uint64_t seed)
    : desc_(std::move(desc)), part_(build_partition(n)), rng_(make_rng(seed)) {
  diag_.filler_capacity = static_cast<std::uint64_t>(part_.a.size()) * part_.b.size();
}

std::uint64_t PaperProposer::planned_turns() const {
  return static_cast<std::uint64_t>(part_.n / 6) * (part_.n / 3);
}

void PaperProposer::start_period(const GameState& state) {
  ++period_;
  const Vertex root = part_.u[period_ - 1];
  if (!state.neighbors(root).empty()) ++diag_.isolation_failures;
  plan_ = compile_period_list(state, part_, period_, filler_, &rng_);
  plan_pos_ = 0;
  ++diag_.periods_started;
  diag_.plan_sizes.push_back(static_cast<std::uint32_t>(plan_.pairs.size()));
  diag_.emitted.push_back(0);
  diag_.filler_used = filler_.used;
}

Pair PaperProposer::propose(const GameState& state, const TurnLog&) {
  if (!in_endgame_) {
    if (plan_pos_ == plan_.pairs.size() && period_ < part_.n / 6) start_period(state);
    if (plan_pos_ < plan_.pairs.size()) {
      const Pair p = plan_.pairs[plan_pos_++];
      if (!state.is_legal(p)) {
        throw PlanViolation("planned pair no longer open: {" + std::to_string(p.u) + "," +
                            std::to_string(p.v) + "} in period " + std::to_string(period_));
      }
      ++diag_.emitted.back();
      return p;
    }
    in_endgame_ = true;
    endgame_order_.reserve(state.open_not_forbidden_count());
    for (PairIndex i = 0; i < pair_count(state.n()); ++i) {
      if (state.is_legal_at(i)) endgame_order_.push_back(static_cast<std::uint32_t>(i));
    }
    shuffle(std::span<std::uint32_t>(endgame_order_), rng_);
  }
  while (endgame_cursor_ < endgame_order_.size() && !state.is_legal_at(endgame_order_[endgame_cursor_])) {
    ++endgame_cursor_;
  }
  if (endgame_cursor_ == endgame_order_.size()) throw std::logic_error("paper_proposer: no legal pair left");
  ++diag_.endgame_proposals;
  return pair_from_index(endgame_order_[endgame_cursor_++]);
}

}  // namespace rps
