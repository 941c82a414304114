#include "rps/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "rps/parallel.hpp"
#include "rps/rng.hpp"

namespace rps {

Rational open_density(const GameState& state, std::span<const Vertex> subset) {
  if (subset.size() < 2) throw std::invalid_argument("open density needs at least two vertices");
  std::int64_t open = 0;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    for (std::size_t j = i + 1; j < subset.size(); ++j) {
      if (state.pair_state(Pair::of(subset[i], subset[j])).status == PairStatus::Open) ++open;
    }
  }
  const auto k = static_cast<std::int64_t>(subset.size());
  return Rational(open, k * (k - 1) / 2);
}

double shearer_bound(double n_vertices, double avg_degree) {
  if (!(avg_degree > 1.0)) throw std::invalid_argument("Shearer bound needs average degree > 1");
  return 2.0 * n_vertices * std::log2(avg_degree) / (3.0 * avg_degree);
}

std::uint64_t count_closed_by_outside(const GraphView& g, std::span<const Vertex> s) {
  constexpr std::uint32_t kOutside = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> position(g.n(), kOutside);
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    if (s[i] >= g.n()) throw std::invalid_argument("vertex outside the graph");
    position[s[i]] = i;
  }
  const std::uint64_t k = s.size();
  std::vector<bool> covered(k * (k - 1) / 2 + 1, false);
  std::uint64_t count = 0;
  std::vector<std::uint32_t> inside;
  for (Vertex z = 0; z < g.n(); ++z) {
    if (position[z] != kOutside) continue;
    inside.clear();
    for (Vertex w : g.neighbors(z)) {
      if (position[w] != kOutside) inside.push_back(position[w]);
    }
    for (std::size_t a = 0; a < inside.size(); ++a) {
      for (std::size_t b = a + 1; b < inside.size(); ++b) {
        const auto idx = pair_index(Pair::of(inside[a], inside[b]));
        if (!covered[idx]) {
          covered[idx] = true;
          ++count;
        }
      }
    }
  }
  return count;
}

bool is_reachable_subgraph(const GraphView& g, const GraphView& h) {
  if (g.n() != h.n()) throw std::invalid_argument("reachable subgraph must span the same vertices");
  for (const Pair& e : h.edges()) {
    if (!g.adjacent(e.u, e.v)) throw std::invalid_argument("h has an edge that g lacks");
  }
  for (const Pair& e : g.edges()) {
    if (h.adjacent(e.u, e.v)) continue;
    const auto nu = h.neighbors(e.u);
    const auto nv = h.neighbors(e.v);
    std::vector<Vertex> common;
    std::set_intersection(nu.begin(), nu.end(), nv.begin(), nv.end(), std::back_inserter(common));
    if (common.empty()) return false;
  }
  return true;
}

ValidationReport verify_transcript(const Transcript& t) {
  ValidationReport report;
  GameState state(t.n);
  // Adjacency kept apart from GameState so the triangle check does not
  // trust the pair-status bookkeeping.
  std::vector<std::set<Vertex>> adj(t.n);
  auto describe = [](Pair p) { return "{" + std::to_string(p.u) + "," + std::to_string(p.v) + "}"; };

  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const TurnRecord r = t.turns[i];
    const Pair p = r.pair;
    if (p.u >= p.v || p.v >= t.n) {
      report.violations.push_back({"invalid pair", i, describe(p)});
      continue;
    }
    const PairState st = state.pair_state(p);
    if (st.status == PairStatus::Edge) {
      report.violations.push_back({"edge pair proposed", i, describe(p)});
      continue;
    }
    if (st.forbidden) {
      report.violations.push_back({"forbidden re-proposal", i, describe(p)});
      continue;
    }
    if (st.status == PairStatus::Closed) {
      report.violations.push_back({"closed pair proposed", i, describe(p)});
      continue;
    }
    state.apply_turn(p, r.answer);
    if (r.answer == Answer::Yes) {
      for (Vertex w : adj[p.u]) {
        if (adj[p.v].count(w)) {
          report.violations.push_back({"triangle created", i, describe(p) + " with " + std::to_string(w)});
          break;
        }
      }
      adj[p.u].insert(p.v);
      adj[p.v].insert(p.u);
    }
  }

  if (!state.is_terminal()) {
    report.violations.push_back({"not terminal", t.turns.size(),
                                 std::to_string(state.open_not_forbidden_count()) + " legal pairs remain"});
  }
  auto expected = t.final_edges;
  std::sort(expected.begin(), expected.end());
  auto actual = state.edges();
  std::sort(actual.begin(), actual.end());
  if (expected != actual) {
    report.violations.push_back({"final edges mismatch", t.turns.size(),
                                 "replay has " + std::to_string(actual.size()) + " edges, transcript lists " +
                                     std::to_string(expected.size())});
  }
  return report;
}

EpochStats period_epoch_stats(const Transcript& t, const EpochSchedule& sched, const Partition& part) {
  if (sched.n != t.n || part.n != t.n) throw std::invalid_argument("schedule, partition and transcript disagree on n");
  const std::uint32_t periods = t.n / 6;
  const std::uint32_t length = t.n / 3;
  if (sched.epoch_of_period.size() != periods + 1 || part.v.size() != periods) {
    throw std::invalid_argument("schedule or partition does not match n");
  }
  if (t.turns.size() < static_cast<std::uint64_t>(periods) * length) {
    throw std::invalid_argument("transcript is shorter than the planned periods");
  }

  const std::uint32_t m = sched.m;
  std::vector<std::vector<Vertex>> vk(m + 1);
  std::vector<std::uint32_t> epoch_of_vertex(t.n, 0);
  for (std::uint32_t k = 1; k <= m; ++k) {
    for (std::uint32_t i : sched.periods[k - 1]) {
      vk[k].push_back(part.v[i - 1]);
      epoch_of_vertex[part.v[i - 1]] = k;
    }
  }

  EpochStats st;
  st.p.assign(periods + 1, Rational(0));
  st.o_ki.assign(m + 1, {});
  std::vector<std::int64_t> open_pairs(m + 1, 0);
  auto binom2 = [](std::int64_t x) { return x * (x - 1) / 2; };
  for (std::uint32_t k = 1; k <= m; ++k) {
    open_pairs[k] = binom2(static_cast<std::int64_t>(vk[k].size()));
    st.o_ki[k].push_back(Rational(1));
  }
  auto same_epoch = [&](Pair p) {
    const auto k = epoch_of_vertex[p.u];
    return k != 0 && k == epoch_of_vertex[p.v] ? k : 0u;
  };

  GameState state(t.n);
  std::vector<PairIndex> closed;
  std::size_t turn = 0;
  for (std::uint32_t i = 1; i <= periods; ++i) {
    std::int64_t yes = 0;
    for (std::uint32_t step = 0; step < length; ++step, ++turn) {
      const Pair p = pair_from_index(t.turns.pair_index_at(turn));
      const Answer a = t.turns.answer_at(turn);
      closed.clear();
      state.apply_turn(p, a, &closed);
      if (a == Answer::Yes) {
        ++yes;
        if (auto k = same_epoch(p)) --open_pairs[k];
      }
      for (PairIndex c : closed) {
        if (auto k = same_epoch(pair_from_index(c))) --open_pairs[k];
      }
    }
    st.p[i] = Rational(yes, length);
    for (std::uint32_t k = 1; k <= m; ++k) {
      // Full rescan, compared against the incremental count.
      const Rational rescanned = vk[k].size() >= 2 ? open_density(state, vk[k]) : Rational(1);
      const Rational tracked = vk[k].size() >= 2
                                   ? Rational(open_pairs[k], binom2(static_cast<std::int64_t>(vk[k].size())))
                                   : Rational(1);
      if (rescanned != tracked) st.routes_agree = false;
      st.o_ki[k].push_back(rescanned);
    }
  }

  st.P.assign(m + 1, Rational(0));
  st.o.assign(m + 1, Rational(1));
  st.trigger.assign(m + 1, 0.0);
  const double root_n = std::sqrt(static_cast<double>(t.n));
  for (std::uint32_t k = 1; k <= m; ++k) {
    Rational sum(0);
    for (std::uint32_t i : sched.periods[k - 1]) sum += st.p[i];
    st.P[k] = sum / Rational(static_cast<std::int64_t>(sched.periods[k - 1].size()));
    if (k >= 2) st.o[k] = st.o_ki[k][sched.periods[k - 2].back()];
    const double ok = st.o[k].to_double();
    st.trigger[k] = ok > 0.0 ? 200.0 / (ok * root_n) : std::numeric_limits<double>::infinity();
  }
  for (std::uint32_t k = 2; k <= m; ++k) {
    for (std::uint32_t i : sched.periods[k - 2]) {
      const double before = st.o_ki[k][i - 1].to_double();
      const double after = st.o_ki[k][i].to_double();
      const double p = st.p[i].to_double();
      st.decrements.push_back({k, i, p, before > 0.0 ? after / before : 1.0, 1.0 - p * p / 16.0});
    }
  }
  return st;
}

Transcript play_clairvoyant(ProposerPolicy& proposer, const ClairvoyantDecider& decider,
                            std::uint64_t master_seed) {
  const std::uint32_t n = decider.sample().n();
  GameState state(n);
  Transcript t;
  t.n = n;
  t.target_s = 0;
  t.proposer = proposer.descriptor();
  t.decider = StrategyDescriptor(nlohmann::json{{"kind", "clairvoyant"}});
  t.master_seed = master_seed;
  while (!state.is_terminal()) {
    const Pair p = proposer.propose(state, t.turns);
    try {
      const Answer a = decider.answer(p);
      state.apply_turn(p, a);
      t.turns.push_back(p, a);
    } catch (const IllegalMove& e) {
      throw ProtocolViolation(proposer.descriptor().label(), p, e.reason());
    }
  }
  t.final_edges = state.edges();
  return t;
}

std::vector<double> isotonic_non_increasing(std::span<const double> rates) {
  struct Block {
    double sum;
    std::size_t count;
    double mean() const { return sum / static_cast<double>(count); }
  };
  std::vector<Block> blocks;
  for (double r : rates) {
    blocks.push_back({r, 1});
    while (blocks.size() >= 2 && blocks[blocks.size() - 2].mean() < blocks.back().mean()) {
      const Block top = blocks.back();
      blocks.pop_back();
      blocks.back().sum += top.sum;
      blocks.back().count += top.count;
    }
  }
  std::vector<double> out;
  out.reserve(rates.size());
  for (const auto& b : blocks) out.insert(out.end(), b.count, b.mean());
  return out;
}

ThresholdEstimate estimate_threshold(std::uint32_t n, const StrategyDescriptor& proposer,
                                     const StrategyDescriptor& decider, std::uint64_t trials,
                                     std::uint64_t seed, unsigned jobs) {
  if (trials < 30) throw std::invalid_argument("threshold estimation needs at least 30 trials");
  ThresholdEstimate est;
  est.n = n;
  est.proposer = proposer;
  est.decider = decider;
  est.trials = trials;
  est.seed = seed;
  est.method = n <= kExactMisCap ? CertificateMethod::Exact : CertificateMethod::Greedy;

  est.alphas = parallel_map(trials, jobs, [&](std::uint64_t i) {
    const std::uint64_t game_seed = derive_seed(seed, i);
    const Transcript t = run_game(n, proposer, decider, 0, game_seed);
    return static_cast<std::uint32_t>(certify(GraphView(n, t.final_edges), derive_seed(game_seed, 2)).size());
  });

  const std::uint32_t top = std::min(n, *std::max_element(est.alphas.begin(), est.alphas.end()) + 1);
  std::vector<double> rates;
  for (std::uint32_t s = 1; s <= top; ++s) {
    const auto wins = static_cast<std::uint64_t>(
        std::count_if(est.alphas.begin(), est.alphas.end(), [s](std::uint32_t a) { return a >= s; }));
    est.curve.push_back({s, wins, trials});
    rates.push_back(static_cast<double>(wins) / static_cast<double>(trials));
  }
  est.smoothed = isotonic_non_increasing(rates);
  est.isotonic_adjusted = est.smoothed != rates;
  for (const auto& pt : est.curve) {
    if (est.smoothed[pt.s - 1] >= 0.5) est.s_star = pt.s;
  }
  est.note = est.method == CertificateMethod::Exact
                 ? "exact independence numbers"
                 : "greedy certificates (lower bounds on alpha); s_star is conservative toward Decider";
  return est;
}

}  // namespace rps
