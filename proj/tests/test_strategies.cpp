#include <cmath>
#include <set>

#include "doctest.h"
#include "rps/deciders.hpp"
#include "rps/engine.hpp"
#include "rps/proposers.hpp"

using namespace rps;

namespace {

StrategyDescriptor desc(const char* s) { return StrategyDescriptor::parse(s); }

std::string answers(const Transcript& t) {
  std::string s;
  for (std::size_t i = 0; i < t.turns.size(); ++i) s += t.turns.answer_at(i) == Answer::Yes ? 'Y' : 'N';
  return s;
}

}  // namespace

TEST_CASE("descriptor parsing") {
  CHECK(desc("iid:0.25").iid_probability(100) == 0.25);
  CHECK(desc("iid:c=2").iid_probability(100) == doctest::Approx(0.2));
  CHECK(desc("iid:c=50").iid_probability(100) == 1.0);
  CHECK(desc("budget:5").label() == "budget:5");
  CHECK(desc("scripted:YNY").label() == "scripted:YNY");
  CHECK(desc(R"({"kind":"iid","p":0.5})").label() == "iid:0.5");
  CHECK(desc("uniform").is_proposer());
  CHECK(desc("always_no").is_decider());
  CHECK_THROWS_AS(desc("iid:1.5"), std::invalid_argument);
  CHECK_THROWS_AS(desc("iid:abc"), std::invalid_argument);
  CHECK_THROWS_AS(desc("budget:-1"), std::invalid_argument);
  CHECK_THROWS_AS(desc("scripted:YQ"), std::invalid_argument);
  CHECK_THROWS_AS(desc("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(desc("uniform:3"), std::invalid_argument);
  CHECK_THROWS_AS(make_decider(desc("uniform"), 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_proposer(desc("always_yes"), 4, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_decider(desc("clairvoyant"), 4, 0), std::invalid_argument);
}

TEST_CASE("iid(1) matches always_yes and iid(0) builds nothing") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto a = run_game(25, desc("uniform"), desc("iid:1"), 0, seed);
    const auto b = run_game(25, desc("uniform"), desc("always_yes"), 0, seed);
    CHECK(a.turns == b.turns);
    const auto z = run_game(25, desc("uniform"), desc("iid:0"), 0, seed);
    CHECK(z.final_edges.empty());
    CHECK(z.turns.size() == pair_count(25));
  }
}

TEST_CASE("iid frequency") {
  IidDecider d(desc("iid:0.3"), 0.3, 11);
  TurnLog log;
  std::uint64_t yes = 0;
  const std::uint64_t N = 200000;
  for (std::uint64_t i = 0; i < N; ++i) yes += d.decide(DeciderView{10, i, log}) == Answer::Yes;
  const double sigma = std::sqrt(0.3 * 0.7 / N);
  CHECK(std::abs(static_cast<double>(yes) / N - 0.3) < 4 * sigma);
}

TEST_CASE("scripted, budget and adaptive deciders") {
  CHECK(answers(run_game(3, desc("uniform"), desc("scripted:YNY"), 0, 4)) == "YNY");
  CHECK(answers(run_game(4, desc("uniform"), desc("scripted:Y"), 0, 4)).substr(0, 2) == "YN");

  const auto t = run_game(20, desc("uniform"), desc("budget:5"), 0, 2);
  CHECK(answers(t).substr(0, 6) == "YYYYYN");
  CHECK(t.turns.yes_count() == 5);

  for (double target : {0.0, 0.1, 0.37, 0.5, 1.0}) {
    AdaptiveThresholdDecider d(desc("always_no"), target);
    TurnLog log;
    for (std::uint64_t turn = 0; turn < 500; ++turn) {
      log.push_back(pair_from_index(turn), d.decide(DeciderView{100, turn, log}));
      const double gap = static_cast<double>(log.yes_count()) - target * static_cast<double>(log.size());
      CHECK(std::abs(gap) <= 1.0);
    }
  }
}

TEST_CASE("uniform proposer") {
  SUBCASE("n=2 proposes the only pair") {
    auto p = make_proposer(desc("uniform"), 2, 0);
    GameState g(2);
    CHECK(p->propose(g, TurnLog{}) == Pair{0, 1});
  }
  SUBCASE("n=3 first proposal is uniform") {
    const std::uint64_t N = 100000;
    std::uint64_t counts[3] = {};
    GameState g(3);
    TurnLog log;
    for (std::uint64_t i = 0; i < N; ++i) {
      auto p = make_proposer(desc("uniform"), 3, derive_seed(42, i));
      ++counts[pair_index(p->propose(g, log))];
    }
    const double sigma = std::sqrt((1.0 / 3) * (2.0 / 3) / N);
    for (auto c : counts) CHECK(std::abs(static_cast<double>(c) / N - 1.0 / 3) < 3 * sigma);
  }
}

TEST_CASE("partition") {
  const auto p12 = build_partition(12);
  CHECK(p12.u.size() == 2);
  CHECK(p12.v.size() == 2);
  CHECK(p12.a.size() == 4);
  CHECK(p12.b.size() == 4);
  CHECK_THROWS_AS(build_partition(11), std::invalid_argument);

  const auto p96 = build_partition(96);
  CHECK(p96.u.size() == 16);
  CHECK(p96.a.size() == 32);
  std::set<Vertex> all;
  for (const auto* part : {&p96.u, &p96.v, &p96.a, &p96.b}) all.insert(part->begin(), part->end());
  CHECK(all.size() == 96);
  CHECK(*all.rbegin() == 95);
}

TEST_CASE("epoch schedule") {
  CHECK(log_star2(96) == 4);
  CHECK(log_star2(2) == 1);
  CHECK(log_star2(16) == 3);
  CHECK(log_star2(17) == 4);
  CHECK(log_star2(65536) == 4);
  CHECK(log_star2(65537) == 5);

  const auto s = epoch_schedule(96);
  CHECK(s.m == 5);
  CHECK(s.eps == std::vector<Rational>{Rational(1, 12), Rational(1, 24), Rational(1, 48), Rational(1, 96),
                                       Rational(1, 96)});
  CHECK(s.counts == std::vector<std::uint32_t>{8, 4, 2, 1, 1});
  CHECK(s.periods[0].front() == 1);
  CHECK(s.periods[4].front() == 16);

  const auto big = epoch_schedule(98304);
  CHECK(big.m == 6);
  CHECK(big.counts == std::vector<std::uint32_t>{8192, 4096, 2048, 1024, 512, 512});

  for (std::uint32_t n = 48; n <= 6000; n += 6) {
    EpochSchedule sc;
    try {
      sc = epoch_schedule(n);
    } catch (const UnsupportedN&) {
      continue;
    }
    Rational sum(0);
    for (const auto& e : sc.eps) sum = sum + e;
    CHECK(sum == Rational(1, 6));
    std::uint32_t total = 0, period = 1;
    for (std::size_t k = 0; k < sc.m; ++k) {
      CHECK(sc.counts[k] >= 1);
      CHECK(sc.periods[k].size() == sc.counts[k]);
      for (auto i : sc.periods[k]) CHECK(i == period++);
      total += sc.counts[k];
    }
    CHECK(total == n / 6);
  }
  CHECK_THROWS_AS(epoch_schedule(12), UnsupportedN);
}

TEST_CASE("period lists at n=12") {
  const auto part = build_partition(12);
  GameState g(12);
  FillerCursor cursor;
  const auto l1 = compile_period_list(g, part, 1, cursor, nullptr);
  CHECK(l1.pairs == std::vector<Pair>{Pair{0, 3}, Pair{2, 3}, Pair{4, 8}, Pair{4, 9}});
  CHECK(l1.u_to_v == 1);
  CHECK(l1.v_internal == 1);
  CHECK(l1.filler == 2);
  const auto l2 = compile_period_list(g, part, 2, cursor, nullptr);
  CHECK(l2.pairs == std::vector<Pair>{Pair{4, 10}, Pair{4, 11}, Pair{5, 8}, Pair{5, 9}});
  CHECK(l2.filler == 4);
  CHECK(cursor.used == 6);
}

TEST_CASE("compiled pairs are legal at compile time") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    GameState g(48);
    const auto part = build_partition(48);
    FillerCursor cursor;
    Rng rng = make_rng(seed);
    Rng answers = make_rng(seed + 1000);
    for (std::uint32_t i = 1; i <= 8; ++i) {
      const auto plan = compile_period_list(g, part, i, cursor, &rng);
      CHECK(plan.pairs.size() == 16);
      for (const Pair& p : plan.pairs) CHECK(g.is_legal(p));
      for (const Pair& p : plan.pairs) {
        if (g.is_legal(p)) g.apply_turn(p, bernoulli(answers, 0.2) ? Answer::Yes : Answer::No);
      }
    }
  }
}

TEST_CASE("paper_proposer against always_no") {
  auto proposer = make_proposer(desc("paper_proposer"), 12, 1);
  auto decider = make_decider(desc("always_no"), 12, 2);
  const auto t = play_game(12, *proposer, *decider, 12, 3);
  const auto& pp = dynamic_cast<const PaperProposer&>(*proposer);
  CHECK(pp.planned_turns() == 8);
  CHECK(pp.diagnostics().emitted == std::vector<std::uint32_t>{4, 4});
  CHECK(pp.diagnostics().endgame_proposals == 66 - 8);
  CHECK(t.turns.size() == 66);
  CHECK(t.final_edges.empty());
}

TEST_CASE("paper_proposer periods have length n/3") {
  for (const char* d : {"always_yes", "iid:0.1", "iid:0.5"}) {
    auto proposer = make_proposer(desc("paper_proposer"), 96, 5);
    auto decider = make_decider(desc(d), 96, 6);
    play_game(96, *proposer, *decider, 0, 7);
    const auto& diag = dynamic_cast<const PaperProposer&>(*proposer).diagnostics();
    CHECK(diag.periods_started == 16);
    for (auto e : diag.emitted) CHECK(e == 32);
    for (auto s : diag.plan_sizes) CHECK(s == 32);
    CHECK(diag.isolation_failures == 0);
    CHECK(diag.filler_used <= diag.filler_capacity);
  }
}
