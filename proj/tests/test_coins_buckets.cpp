#include <cmath>

#include "doctest.h"
#include "rps/coins_buckets.hpp"

using namespace rps;
using namespace rps::cb;

TEST_CASE("X_{a,b} two-point law") {
  Rng rng = make_rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto x = sample_x_ab(4, 4, rng);
    CHECK((x == Rational(1, 4) || x == Rational(-1, 4)));
  }

  const std::uint64_t N = 1000000;
  std::uint64_t plus = 0;
  double sum = 0;
  for (std::uint64_t i = 0; i < N; ++i) {
    const auto x = sample_x_ab(1, 3, rng);
    if (x == Rational(1)) {
      ++plus;
    } else {
      REQUIRE(x == Rational(-1, 3));
    }
    sum += x.to_double();
  }
  const double sigma = std::sqrt(0.25 * 0.75 / N);
  CHECK(std::abs(static_cast<double>(plus) / N - 0.25) < 4 * sigma);
  CHECK(std::abs(sum / N) < 4 * std::sqrt(1.0 / (3.0 * N)));
  CHECK_THROWS_AS(sample_x_ab(0, 3, rng), std::invalid_argument);
}

TEST_CASE("forced outcomes") {
  Rng rng = make_rng(2);
  const Params p{5, 40, 10};
  auto heads = all_heads();
  for (int i = 0; i < 100; ++i) {
    const auto r = play(p, *heads, Mode::ExactSubset, rng);
    CHECK(r.h == 40);
    CHECK(r.h_a == 5);
    CHECK(score(r, p) == Rational(0));
  }
  auto tails = all_tails();
  const auto r = play(p, *tails, Mode::ExactSubset, rng);
  CHECK(r.forfeit);
  CHECK(score(r, p) == Rational(0));
}

TEST_CASE("score arithmetic") {
  Result r;
  r.h = 10;
  r.h_a = 4;
  r.forfeit = false;
  CHECK(score(r, Params{3, 12, 1}) == Rational(3, 2));
  r.forfeit = true;
  CHECK(score(r, Params{3, 12, 1}) == Rational(0));
}

TEST_CASE("exact subset puts exactly a coins in A") {
  Rng rng = make_rng(3);
  auto chase = chase_bucket_a();
  auto tails = all_tails();
  for (int i = 0; i < 200; ++i) {
    const auto r = play(Params{7, 30, 1}, i % 2 ? *chase : *tails, Mode::ExactSubset, rng);
    int in_a = 0;
    for (const auto& pl : r.placements) in_a += pl.bucket == Bucket::A;
    CHECK(in_a == 7);
    CHECK(r.placements.size() == 30);
  }
}

TEST_CASE("policies") {
  std::vector<Placement> seen;
  auto b = budget(2);
  CHECK(b->heads(seen));
  seen.push_back({Bucket::A, true});
  CHECK(b->heads(seen));
  seen.push_back({Bucket::B, true});
  CHECK_FALSE(b->heads(seen));

  auto chase = chase_bucket_a();
  CHECK_FALSE(chase->heads(seen));
  seen.push_back({Bucket::A, false});
  CHECK(chase->heads(seen));

  auto fixed = fixed_pattern({true, false});
  CHECK_FALSE(fixed->heads(std::span<const Placement>(seen).first(1)));

  // The cached count must reset between games.
  auto th = threshold_adaptive(0.5);
  CHECK(th->heads({}));
  CHECK_FALSE(th->heads(std::span<const Placement>(seen).first(1)));
  CHECK(th->heads({}));

  CHECK(parse_policy("threshold:0.3")->name().rfind("threshold", 0) == 0);
  CHECK(parse_policy("budget:4")->name() == "budget:4");
  CHECK_THROWS_AS(parse_policy("budget:x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_policy("bogus"), std::invalid_argument);
  CHECK(parse_mode("independent") == Mode::Independent);
  CHECK_THROWS_AS(parse_mode("x"), std::invalid_argument);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((Params{0, 4, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Params{3, 4, 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((Params{1, 4, 5}.validate()), std::invalid_argument);
  CHECK_NOTHROW((Params{2, 4, 4}.validate()));
}

TEST_CASE("bound formulas") {
  const auto b = tail_bound_bucket(Params{1, 2, 1}, 0.4);
  CHECK(b.raw == doctest::Approx(695.9).epsilon(1e-4));
  CHECK(b.clamped == 1.0);
  CHECK_THROWS_AS(tail_bound_bucket(Params{1, 2, 1}, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound_bucket(Params{1, 2, 1}, 0.5), std::invalid_argument);

  double previous = INFINITY;
  for (std::int64_t nu0 = 1; nu0 <= 600; nu0 += 50) {
    const double raw = tail_bound_bucket(Params{300, 600, nu0}, 0.3).raw;
    CHECK(raw < previous);
    previous = raw;
  }

  const auto s = tail_bound_simple(1, 1, 1, 0.5);
  CHECK(s.raw == doctest::Approx(156.05).epsilon(1e-4));
  CHECK(s.clamped == 1.0);
  CHECK_THROWS_AS(tail_bound_simple(1, 1, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound_simple(3, 2, 1, 0.1), std::invalid_argument);
  // The exponent is linear in nu0.
  const double e1 = std::log(tail_bound_simple(10, 20, 3, 0.2).raw / (40.0 / 0.04));
  const double e2 = std::log(tail_bound_simple(10, 20, 6, 0.2).raw / (40.0 / 0.04));
  CHECK(e2 == doctest::Approx(2 * e1));

  CHECK(tail_bound_bohman(1, 10, 30, 30 * (1 - 1e-12)) == doctest::Approx(2 * std::exp(-1.0)));
  CHECK(tail_bound_bohman(1, 10, 30, 30 * (1 - 1e-12)) == doctest::Approx(0.7358).epsilon(1e-4));
  CHECK_THROWS_AS(tail_bound_bohman(1, 10, 30, 30), std::invalid_argument);
  CHECK_THROWS_AS(tail_bound_bohman(2, 10, 30, 1), std::invalid_argument);
}

TEST_CASE("wilson interval") {
  const auto ci = wilson_interval(50, 100);
  CHECK(ci.low == doctest::Approx(0.4038).epsilon(1e-3));
  CHECK(ci.high == doctest::Approx(0.5962).epsilon(1e-3));
  const auto zero = wilson_interval(0, 1000);
  CHECK(zero.low == 0.0);
  CHECK(zero.high > 0.0);
}

TEST_CASE("empirical tail") {
  auto tails = all_tails();
  const auto none = empirical_tail(Params{5, 100, 10}, *tails, Rational(1, 25), 1000, 1);
  CHECK(none.hits == 0);
  CHECK(none.frequency == 0.0);

  auto chase = chase_bucket_a();
  const auto a = empirical_tail(Params{5, 100, 10}, *chase, Rational(1, 25), 2000, 9);
  const auto b = empirical_tail(Params{5, 100, 10}, *chase, Rational(1, 25), 2000, 9);
  CHECK(a.hits == b.hits);
  CHECK(a.ci.low <= a.frequency);
  CHECK(a.frequency <= a.ci.high);
  CHECK_THROWS_AS(empirical_tail(Params{5, 100, 10}, *chase, Rational(1, 20), 10, 1), std::invalid_argument);
}
