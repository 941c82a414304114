#include <bit>
#include <cmath>

#include "doctest.h"
#include "rps/analysis.hpp"

using namespace rps;

namespace {

StrategyDescriptor desc(const char* s) { return StrategyDescriptor::parse(s); }

std::uint32_t brute_alpha(const GraphView& g) {
  const std::uint32_t n = g.n();
  std::vector<std::uint32_t> adj(n, 0);
  for (const Pair& e : g.edges()) {
    adj[e.u] |= 1u << e.v;
    adj[e.v] |= 1u << e.u;
  }
  std::uint32_t best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    bool ok = true;
    for (std::uint32_t v = 0; v < n && ok; ++v) ok = !((mask >> v) & 1) || !(adj[v] & mask);
    if (ok) best = std::max<std::uint32_t>(best, std::popcount(mask));
  }
  return best;
}

Transcript manual(std::uint32_t n, std::vector<std::pair<Pair, Answer>> turns, std::vector<Pair> edges) {
  Transcript t;
  t.n = n;
  t.proposer = desc("uniform");
  t.decider = desc("always_yes");
  for (auto& [p, a] : turns) t.turns.push_back(p, a);
  t.final_edges = std::move(edges);
  return t;
}

bool has_rule(const ValidationReport& r, const std::string& rule, std::uint64_t turn) {
  for (const auto& v : r.violations) {
    if (v.rule == rule && v.turn == turn) return true;
  }
  return false;
}

}  // namespace

TEST_CASE("open density") {
  const std::vector<Vertex> s{0, 1, 2};
  GameState g(3);
  CHECK(open_density(g, s) == Rational(1));
  g.apply_turn(Pair{0, 1}, Answer::Yes);
  CHECK(open_density(g, s) == Rational(2, 3));
  g.apply_turn(Pair{1, 2}, Answer::Yes);
  CHECK(open_density(g, s) == Rational(0));
  CHECK_THROWS_AS(open_density(g, std::vector<Vertex>{0}), std::invalid_argument);
}

TEST_CASE("exact independence number") {
  CHECK(exact_independence_number(cycle_graph(5)).size() == 2);
  CHECK(exact_independence_number(GraphView(7, {})).size() == 7);
  CHECK(exact_independence_number(petersen_graph()).size() == 4);
  CHECK(brute_alpha(petersen_graph()) == 4);
  CHECK(exact_independence_number(star_graph(4)).size() == 4);
  CHECK(exact_independence_number(complete_graph(9)).size() == 1);
  CHECK_THROWS_AS(exact_independence_number(GraphView(121, {})), SizeLimitError);

  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    const std::uint32_t n = 2 + seed % 17;
    const double p = 0.05 + 0.9 * static_cast<double>(seed % 7) / 6.0;
    const auto g = erdos_renyi(n, p, seed);
    REQUIRE(exact_independence_number(g).size() == brute_alpha(g));
  }
}

TEST_CASE("greedy independent set") {
  CHECK(greedy_independent_set(GraphView(9, {}), 1, 0).size() == 9);
  CHECK(greedy_independent_set(star_graph(4), 2, 0).size() == 4);
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto g = erdos_renyi(40 + seed % 60, 0.1, seed);
    const auto greedy = greedy_independent_set(g, 3, seed);
    CHECK(greedy.size() >= turan_floor(g));
    CHECK(greedy.size() <= exact_independence_number(g).size());
    CHECK(greedy.method() == CertificateMethod::Greedy);
  }
  CHECK(certify(GraphView(200, {}), 1).method() == CertificateMethod::Greedy);
  CHECK(certify(petersen_graph(), 1).exact());
  CHECK_THROWS_AS(IndependentSetCertificate(cycle_graph(5), {0, 1}, CertificateMethod::Greedy), std::logic_error);
}

TEST_CASE("Shearer bound") {
  CHECK(shearer_bound(10, 3) == doctest::Approx(20 * std::log2(3.0) / 9));
  CHECK(shearer_bound(10, 3) == doctest::Approx(3.523).epsilon(1e-3));
  CHECK(shearer_bound(5, 2) == doctest::Approx(10.0 / 6));
  CHECK(2 >= shearer_bound(5, 2));
  CHECK(4 >= shearer_bound(10, 3));
  CHECK_THROWS_AS(shearer_bound(5, 1), std::invalid_argument);
}

TEST_CASE("pairs closed from outside") {
  CHECK(count_closed_by_outside(star_graph(3), std::vector<Vertex>{1, 2, 3}) == 3);
  CHECK(count_closed_by_outside(cycle_graph(5), std::vector<Vertex>{0, 1}) == 0);
  CHECK(count_closed_by_outside(cycle_graph(4), std::vector<Vertex>{0, 2}) == 1);
}

TEST_CASE("reachable subgraph") {
  const GraphView path(3, {Pair{0, 1}, Pair{1, 2}});
  CHECK(is_reachable_subgraph(complete_graph(3), path));
  CHECK_FALSE(is_reachable_subgraph(path, GraphView(3, {})));
  CHECK(is_reachable_subgraph(petersen_graph(), petersen_graph()));
  CHECK_THROWS_AS(is_reachable_subgraph(path, complete_graph(3)), std::invalid_argument);
}

TEST_CASE("transcript verification") {
  CHECK(verify_transcript(run_game(40, desc("uniform"), desc("iid:0.4"), 0, 3)).ok());
  CHECK(verify_transcript(run_game(48, desc("paper_proposer"), desc("iid:0.1"), 0, 3)).ok());

  const auto dup = verify_transcript(manual(3,
                                            {{Pair{0, 1}, Answer::No},
                                             {Pair{0, 1}, Answer::No},
                                             {Pair{0, 2}, Answer::No},
                                             {Pair{1, 2}, Answer::No}},
                                            {}));
  CHECK(has_rule(dup, "forbidden re-proposal", 1));

  const auto closed = verify_transcript(manual(3,
                                               {{Pair{0, 1}, Answer::Yes},
                                                {Pair{1, 2}, Answer::Yes},
                                                {Pair{0, 2}, Answer::Yes}},
                                               {Pair{0, 1}, Pair{1, 2}, Pair{0, 2}}));
  CHECK(has_rule(closed, "closed pair proposed", 2));

  const auto early = verify_transcript(manual(3, {{Pair{0, 1}, Answer::No}}, {}));
  CHECK(has_rule(early, "not terminal", 1));

  const auto mismatch = verify_transcript(manual(2, {{Pair{0, 1}, Answer::Yes}}, {}));
  CHECK_FALSE(mismatch.ok());
}

TEST_CASE("period and epoch statistics") {
  const std::uint32_t n = 96;
  const auto sched = epoch_schedule(n);
  const auto part = build_partition(n);

  SUBCASE("p_i counts YES answers") {
    const auto st = period_epoch_stats(run_game(n, desc("paper_proposer"), desc("budget:8"), 0, 1), sched, part);
    CHECK(st.p[1] == Rational(1, 4));
    CHECK(st.p[2] == Rational(0));
    CHECK(st.routes_agree);
  }
  SUBCASE("always_no keeps V fully open") {
    const auto st = period_epoch_stats(run_game(n, desc("paper_proposer"), desc("always_no"), 0, 1), sched, part);
    for (std::uint32_t i = 1; i <= n / 6; ++i) CHECK(st.p[i] == Rational(0));
    for (std::uint32_t k = 1; k <= sched.m; ++k) {
      for (const auto& o : st.o_ki[k]) CHECK(o == Rational(1));
      CHECK(st.o[k] == Rational(1));
    }
  }
  SUBCASE("open densities never increase") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const char* d = seed % 2 ? "iid:0.3" : "iid:0.8";
      const auto st = period_epoch_stats(run_game(n, desc("paper_proposer"), desc(d), 0, seed), sched, part);
      CHECK(st.routes_agree);
      for (std::uint32_t k = 1; k <= sched.m; ++k) {
        for (std::size_t i = 1; i < st.o_ki[k].size(); ++i) CHECK(st.o_ki[k][i] <= st.o_ki[k][i - 1]);
      }
      Rational sum(0);
      for (std::uint32_t i : sched.periods[0]) sum += st.p[i];
      CHECK(st.P[1] == sum / Rational(sched.counts[0]));
    }
  }
}

TEST_CASE("clairvoyant decider") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto p1 = make_proposer(desc("uniform"), 20, seed);
    const auto empty = play_clairvoyant(*p1, ClairvoyantDecider(GraphView(20, {})), seed);
    CHECK(empty.final_edges.empty());
    CHECK(empty.decider.kind() == "clairvoyant");

    auto p2 = make_proposer(desc("uniform"), 20, seed);
    auto p3 = make_proposer(desc("uniform"), 20, seed);
    const auto full = play_clairvoyant(*p2, ClairvoyantDecider(complete_graph(20)), seed);
    auto yes = make_decider(desc("always_yes"), 20, 0);
    CHECK(full.turns == play_game(20, *p3, *yes, 0, seed).turns);

    const auto sample = erdos_renyi(20, 0.3, seed);
    auto p4 = make_proposer(desc("uniform"), 20, seed);
    const auto t = play_clairvoyant(*p4, ClairvoyantDecider(sample), seed);
    CHECK(is_reachable_subgraph(sample, GraphView(20, t.final_edges)));
    CHECK(verify_transcript(t).ok());
  }
}

TEST_CASE("isotonic smoothing") {
  const std::vector<double> r{1.0, 0.4, 0.6, 0.2, 0.3, 0.0};
  const auto s = isotonic_non_increasing(r);
  CHECK(s[1] == doctest::Approx(0.5));
  CHECK(s[2] == doctest::Approx(0.5));
  CHECK(s[3] == doctest::Approx(0.25));
  CHECK(s[4] == doctest::Approx(0.25));
  for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] <= s[i - 1]);
  const std::vector<double> mono{1.0, 0.8, 0.8, 0.1};
  CHECK(isotonic_non_increasing(mono) == mono);
}

TEST_CASE("threshold estimation") {
  const auto a = estimate_threshold(2, desc("uniform"), desc("always_no"), 30, 1);
  CHECK(a.s_star == 2);
  const auto b = estimate_threshold(2, desc("uniform"), desc("iid:1"), 30, 1);
  CHECK(b.s_star == 1);
  CHECK(b.curve.size() == 2);
  CHECK(b.curve[1].wins == 0);
  CHECK_THROWS(estimate_threshold(8, desc("uniform"), desc("always_yes"), 29, 1));

  const auto serial = estimate_threshold(30, desc("uniform"), desc("iid:0.5"), 40, 7, 1);
  const auto threaded = estimate_threshold(30, desc("uniform"), desc("iid:0.5"), 40, 7, 4);
  CHECK(serial.alphas == threaded.alphas);
  CHECK(serial.s_star == threaded.s_star);
}
