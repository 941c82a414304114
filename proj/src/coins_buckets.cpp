#include "rps/coins_buckets.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace rps::cb {
namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("coins: " + what); }

class AllHeads final : public HeadsPolicy {
 public:
  explicit AllHeads(bool value) : value_(value) {}
  bool heads(std::span<const Placement>) override { return value_; }
  std::string name() const override { return value_ ? "all_heads" : "all_tails"; }
  std::unique_ptr<HeadsPolicy> clone() const override { return std::make_unique<AllHeads>(value_); }

 private:
  bool value_;
};

class FixedPattern final : public HeadsPolicy {
 public:
  explicit FixedPattern(std::vector<bool> pattern) : pattern_(std::move(pattern)) {}
  bool heads(std::span<const Placement> revealed) override {
    return revealed.size() < pattern_.size() && pattern_[revealed.size()];
  }
  std::string name() const override { return "fixed"; }
  std::unique_ptr<HeadsPolicy> clone() const override { return std::make_unique<FixedPattern>(pattern_); }

 private:
  std::vector<bool> pattern_;
};

class ThresholdAdaptive final : public HeadsPolicy {
 public:
  explicit ThresholdAdaptive(double target) : target_(target) {}
  bool heads(std::span<const Placement> revealed) override {
    if (revealed.empty()) {
      seen_ = heads_ = 0;
      return target_ > 0.0;
    }
    if (revealed.size() == seen_ + 1) {
      heads_ += revealed.back().heads;
    } else {
      heads_ = 0;
      for (const auto& p : revealed) heads_ += p.heads;
    }
    seen_ = revealed.size();
    return static_cast<double>(heads_) < target_ * static_cast<double>(revealed.size());
  }
  std::string name() const override { return "threshold:" + std::to_string(target_); }
  std::unique_ptr<HeadsPolicy> clone() const override { return std::make_unique<ThresholdAdaptive>(target_); }

 private:
  double target_;
  std::size_t seen_ = 0;
  std::size_t heads_ = 0;
};

class Budget final : public HeadsPolicy {
 public:
  explicit Budget(std::int64_t k) : k_(k) {}
  bool heads(std::span<const Placement> revealed) override {
    return static_cast<std::int64_t>(revealed.size()) < k_;
  }
  std::string name() const override { return "budget:" + std::to_string(k_); }
  std::unique_ptr<HeadsPolicy> clone() const override { return std::make_unique<Budget>(k_); }

 private:
  std::int64_t k_;
};

class ChaseBucketA final : public HeadsPolicy {
 public:
  bool heads(std::span<const Placement> revealed) override {
    return revealed.empty() || revealed.back().bucket == Bucket::A;
  }
  std::string name() const override { return "chase"; }
  std::unique_ptr<HeadsPolicy> clone() const override { return std::make_unique<ChaseBucketA>(); }
};

// |h_A * nu - a * h| * t.den >= t.num * h * nu, i.e. score >= t * h.
bool tail_event(const Result& r, const Params& params, const Rational& t) {
  if (r.h < params.nu0) return false;
  __int128 diff = static_cast<__int128>(r.h_a) * params.nu - static_cast<__int128>(params.a) * r.h;
  if (diff < 0) diff = -diff;
  return diff * t.den() >= static_cast<__int128>(t.num()) * r.h * params.nu;
}

}  // namespace

void Params::validate() const {
  if (a < 1) bad("a must be positive");
  if (nu < 2 || 2 * a > nu) bad("need a <= nu/2");
  if (nu0 < 1 || nu0 > nu) bad("need 1 <= nu0 <= nu");
}

Mode parse_mode(std::string_view text) {
  if (text == "exact" || text == "exact_subset" || text == "EXACT_SUBSET") return Mode::ExactSubset;
  if (text == "independent" || text == "INDEPENDENT") return Mode::Independent;
  bad("unknown mode '" + std::string(text) + "'");
}

std::unique_ptr<HeadsPolicy> all_heads() { return std::make_unique<AllHeads>(true); }
std::unique_ptr<HeadsPolicy> all_tails() { return std::make_unique<AllHeads>(false); }
std::unique_ptr<HeadsPolicy> fixed_pattern(std::vector<bool> pattern) {
  return std::make_unique<FixedPattern>(std::move(pattern));
}
std::unique_ptr<HeadsPolicy> threshold_adaptive(double target) {
  return std::make_unique<ThresholdAdaptive>(target);
}
std::unique_ptr<HeadsPolicy> budget(std::int64_t k) { return std::make_unique<Budget>(k); }
std::unique_ptr<HeadsPolicy> chase_bucket_a() { return std::make_unique<ChaseBucketA>(); }

std::unique_ptr<HeadsPolicy> parse_policy(std::string_view text) {
  if (text == "all_heads") return all_heads();
  if (text == "all_tails") return all_tails();
  if (text == "chase") return chase_bucket_a();
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  if (colon != std::string_view::npos) {
    const std::string arg(text.substr(colon + 1));
    try {
      if (kind == "threshold") return threshold_adaptive(std::stod(arg));
      if (kind == "budget") return budget(std::stoll(arg));
    } catch (const std::logic_error&) {
      bad("bad policy parameter in '" + std::string(text) + "'");
    }
  }
  bad("unknown policy '" + std::string(text) + "'");
}

Rational sample_x_ab(std::int64_t a, std::int64_t b, Rng& rng) {
  if (a <= 0 || b <= 0) bad("X_{a,b} needs positive a and b");
  const auto draw = uniform_below(rng, static_cast<std::uint64_t>(a + b));
  return draw < static_cast<std::uint64_t>(a) ? Rational(1, a) : Rational(-1, b);
}

Result play(const Params& params, HeadsPolicy& policy, Mode mode, Rng& rng) {
  params.validate();
  const auto nu = static_cast<std::size_t>(params.nu);
  std::vector<std::uint8_t> in_a;
  if (mode == Mode::ExactSubset) {
    // Partial Fisher-Yates: the first a slots of a shuffled [nu] form I.
    std::vector<std::uint32_t> slots(nu);
    std::iota(slots.begin(), slots.end(), 0u);
    in_a.assign(nu, 0);
    for (std::size_t i = 0; i < static_cast<std::size_t>(params.a); ++i) {
      const auto j = i + static_cast<std::size_t>(uniform_below(rng, nu - i));
      std::swap(slots[i], slots[j]);
      in_a[slots[i]] = 1;
    }
  }
  const double p_a = static_cast<double>(params.a) / static_cast<double>(params.nu);

  Result r;
  r.placements.reserve(nu);
  for (std::size_t step = 0; step < nu; ++step) {
    const bool heads = policy.heads(std::span<const Placement>(r.placements));
    const bool to_a = mode == Mode::ExactSubset ? in_a[step] != 0 : uniform01(rng) < p_a;
    r.placements.push_back({to_a ? Bucket::A : Bucket::B, heads});
    if (heads) {
      ++r.h;
      if (to_a) ++r.h_a;
    }
  }
  r.forfeit = r.h < params.nu0;
  return r;
}

Rational score(const Result& result, const Params& params) {
  if (result.forfeit) return Rational(0);
  return abs(Rational(result.h_a) - Rational(params.a * result.h, params.nu));
}

Bound tail_bound_bucket(const Params& params, double t) {
  params.validate();
  const double a = static_cast<double>(params.a);
  const double nu = static_cast<double>(params.nu);
  if (!(t > 0.0 && t < a / nu)) bad("bucket bound needs 0 < t < a/nu");
  const double raw =
      80.0 * std::sqrt(nu) / (t * t) * std::exp(-static_cast<double>(params.nu0) * nu * t * t / (20.0 * a));
  return {raw, raw > 1.0 ? 1.0 : raw};
}

Bound tail_bound_simple(std::int64_t a, std::int64_t b, std::int64_t nu0, double t) {
  if (a < 1 || b < a) bad("simple bound needs 1 <= a <= b");
  const std::int64_t nu = a + b;
  if (nu0 < 1 || nu0 > nu) bad("simple bound needs 1 <= nu0 <= nu");
  const double ad = static_cast<double>(a);
  if (!(t > 0.0 && t < ad / static_cast<double>(b))) bad("simple bound needs 0 < t < a/b");
  const double raw = 40.0 / (t * t) *
                     std::exp(-static_cast<double>(nu0) * static_cast<double>(nu) * t * t / (20.0 * ad));
  return {raw, raw > 1.0 ? 1.0 : raw};
}

double tail_bound_bohman(double c1, double c2, double m, double lambda) {
  if (!(c1 > 0.0 && c1 <= c2 / 10.0)) bad("Bohman bound needs 0 < c1 <= c2/10");
  if (!(m > 0.0)) bad("Bohman bound needs m > 0");
  if (!(lambda > 0.0 && lambda < m * c1)) bad("Bohman bound needs 0 < lambda < m c1");
  return 2.0 * std::exp(-lambda * lambda / (3.0 * c1 * c2 * m));
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  constexpr double z = 1.959963984540054;
  const double n = static_cast<double>(trials);
  const double p = static_cast<double>(successes) / n;
  const double denom = 1.0 + z * z / n;
  const double centre = (p + z * z / (2.0 * n)) / denom;
  const double half = z * std::sqrt(p * (1.0 - p) / n + z * z / (4.0 * n * n)) / denom;
  return {successes == 0 ? 0.0 : std::max(0.0, centre - half),
          successes == trials ? 1.0 : std::min(1.0, centre + half)};
}

TailEstimate empirical_tail(const Params& params, const HeadsPolicy& policy, const Rational& t,
                            std::uint64_t trials, std::uint64_t seed, Mode mode) {
  params.validate();
  if (trials < 1) bad("need at least one trial");
  if (!(t > Rational(0) && t < Rational(params.a, params.nu))) bad("empirical tail needs 0 < t < a/nu");
  TailEstimate est;
  est.trials = trials;
  for (std::uint64_t i = 0; i < trials; ++i) {
    auto fresh = policy.clone();
    Rng rng = make_rng(derive_seed(seed, i));
    if (tail_event(play(params, *fresh, mode, rng), params, t)) ++est.hits;
  }
  est.frequency = static_cast<double>(est.hits) / static_cast<double>(trials);
  est.ci = wilson_interval(est.hits, trials);
  return est;
}

}  // namespace rps::cb
