#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rps/rational.hpp"
#include "rps/rng.hpp"

namespace rps::cb {

/// Coins and Buckets with bucket-A capacity a, nu coins in total and forfeit
/// threshold nu0. Requires a >= 1, a <= nu/2, 1 <= nu0 <= nu.
struct Params {
  std::int64_t a = 1;
  std::int64_t nu = 2;
  std::int64_t nu0 = 1;

  std::int64_t b() const { return nu - a; }
  /// Throws std::invalid_argument.
  void validate() const;
};

enum class Bucket : std::uint8_t { A, B };
enum class Mode { ExactSubset, Independent };

Mode parse_mode(std::string_view text);

struct Placement {
  Bucket bucket;
  bool heads;
};

struct Result {
  std::int64_t h = 0;
  std::int64_t h_a = 0;
  bool forfeit = true;
  std::vector<Placement> placements;
};

/// Chooses heads or tails for the next coin. Only placements of earlier
/// steps are visible, so the bucket of the current coin is unknowable.
class HeadsPolicy {
 public:
  virtual ~HeadsPolicy() = default;
  virtual bool heads(std::span<const Placement> revealed) = 0;
  virtual std::string name() const = 0;
  /// Fresh copy with the same configuration and no memory of past games.
  virtual std::unique_ptr<HeadsPolicy> clone() const = 0;
};

std::unique_ptr<HeadsPolicy> all_heads();
std::unique_ptr<HeadsPolicy> all_tails();
/// Heads exactly on the steps where pattern[step] is true (fixed in advance).
std::unique_ptr<HeadsPolicy> fixed_pattern(std::vector<bool> pattern);
/// Heads iff the heads fraction so far is below `target`.
std::unique_ptr<HeadsPolicy> threshold_adaptive(double target);
/// Heads for the first k steps, tails afterwards.
std::unique_ptr<HeadsPolicy> budget(std::int64_t k);
/// Heads iff the previous coin landed in bucket A (heads on the first step).
std::unique_ptr<HeadsPolicy> chase_bucket_a();

/// "all_heads", "all_tails", "threshold:<x>", "budget:<k>", "chase".
std::unique_ptr<HeadsPolicy> parse_policy(std::string_view text);

/// X_{a,b}: +1/a with probability a/(a+b), otherwise -1/b.
Rational sample_x_ab(std::int64_t a, std::int64_t b, Rng& rng);

Result play(const Params& params, HeadsPolicy& policy, Mode mode, Rng& rng);

/// |h_A - a*h/nu|, or 0 on forfeit.
Rational score(const Result& result, const Params& params);

struct Bound {
  double raw;
  double clamped;
};

/// (80 sqrt(nu) / t^2) exp(-nu0 nu t^2 / (20 a)); requires 0 < t < a/nu.
Bound tail_bound_bucket(const Params& params, double t);
/// (40 / t^2) exp(-nu0 nu t^2 / (20 a)) with nu = a + b; requires a <= b,
/// nu0 <= nu, 0 < t < a/b.
Bound tail_bound_simple(std::int64_t a, std::int64_t b, std::int64_t nu0, double t);
/// 2 exp(-lambda^2 / (3 c1 c2 m)); requires 0 < c1 <= c2/10, 0 < lambda < m c1.
double tail_bound_bohman(double c1, double c2, double m, double lambda);

struct Interval {
  double low;
  double high;
};

/// Wilson score interval at 95%.
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials);

struct TailEstimate {
  std::uint64_t hits = 0;
  std::uint64_t trials = 0;
  double frequency = 0.0;
  Interval ci{0.0, 0.0};
};

/// Frequency of (h >= nu0) and (score >= t h) over `trials` ExactSubset games,
/// trial i seeded with derive_seed(seed, i). Requires 0 < t < a/nu.
TailEstimate empirical_tail(const Params& params, const HeadsPolicy& policy, const Rational& t,
                            std::uint64_t trials, std::uint64_t seed, Mode mode = Mode::ExactSubset);

}  // namespace rps::cb
