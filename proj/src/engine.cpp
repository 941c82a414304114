#include "rps/engine.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "rps/rng.hpp"

namespace rps {

ProtocolViolation::ProtocolViolation(const std::string& policy, Pair p, IllegalReason reason)
    : std::runtime_error("protocol violation by " + policy + ": proposed {" + std::to_string(p.u) +
                         "," + std::to_string(p.v) + "}: " + to_string(reason)),
      reason_(reason) {}

Transcript play_game(std::uint32_t n, ProposerPolicy& proposer, DeciderPolicy& decider,
                     std::uint32_t target_s, std::uint64_t master_seed) {
  if (target_s > n) throw std::invalid_argument("target_s exceeds n");
  GameState state(n);
  Transcript t;
  t.n = n;
  t.target_s = target_s;
  t.proposer = proposer.descriptor();
  t.decider = decider.descriptor();
  t.master_seed = master_seed;

  while (!state.is_terminal()) {
    const Answer answer = decider.decide(DeciderView{n, state.turn(), t.turns});
    const Pair p = proposer.propose(state, t.turns);
    if (p.u >= p.v || p.v >= n) {
      throw ProtocolViolation(proposer.descriptor().label(), p, IllegalReason::InvalidPair);
    }
    try {
      state.apply_turn(p, answer);
    } catch (const IllegalMove& e) {
      throw ProtocolViolation(proposer.descriptor().label(), p, e.reason());
    }
    t.turns.push_back(p, answer);
  }
  t.final_edges = state.edges();
  return t;
}

Transcript run_game(std::uint32_t n, const StrategyDescriptor& proposer,
                    const StrategyDescriptor& decider, std::uint32_t target_s,
                    std::uint64_t master_seed) {
  auto prop = make_proposer(proposer, n, derive_seed(master_seed, 0));
  auto dec = make_decider(decider, n, derive_seed(master_seed, 1));
  return play_game(n, *prop, *dec, target_s, master_seed);
}

GameState replay(const Transcript& t) {
  GameState state(t.n);
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    state.apply_turn(pair_from_index(t.turns.pair_index_at(i)), t.turns.answer_at(i));
  }
  return state;
}

TranscriptParseError::TranscriptParseError(std::size_t line, const std::string& what)
    : std::runtime_error("transcript line " + std::to_string(line) + ": " + what), line_(line) {}

void write_transcript(std::ostream& out, const Transcript& t) {
  const nlohmann::json header = {{"version", kTranscriptVersion}, {"n", t.n},
                                 {"target_s", t.target_s},       {"proposer", t.proposer.json()},
                                 {"decider", t.decider.json()},  {"master_seed", t.master_seed}};
  out << header.dump() << '\n';
  std::string line;
  for (std::size_t i = 0; i < t.turns.size(); ++i) {
    const TurnRecord r = t.turns[i];
    line.clear();
    line += "{\"i\":";
    line += std::to_string(i);
    line += ",\"u\":";
    line += std::to_string(r.pair.u);
    line += ",\"v\":";
    line += std::to_string(r.pair.v);
    line += r.answer == Answer::Yes ? ",\"answer\":\"YES\"}\n" : ",\"answer\":\"NO\"}\n";
    out << line;
  }
  out << "{\"edges\":[";
  for (std::size_t i = 0; i < t.final_edges.size(); ++i) {
    if (i) out << ',';
    out << '[' << t.final_edges[i].u << ',' << t.final_edges[i].v << ']';
  }
  out << "]}\n";
}

namespace {

std::uint32_t vertex_field(const nlohmann::json& j, const char* key, std::size_t line) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    throw TranscriptParseError(line, std::string("missing or non-integer '") + key + "'");
  }
  return j[key].get<std::uint32_t>();
}

}  // namespace

Transcript read_transcript(std::istream& in) {
  Transcript t;
  std::string text;
  std::size_t line = 0;
  bool have_header = false;
  bool have_edges = false;
  while (std::getline(in, text)) {
    ++line;
    if (text.empty()) continue;
    if (have_edges) throw TranscriptParseError(line, "content after the edges line");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      throw TranscriptParseError(line, e.what());
    }
    if (!j.is_object()) throw TranscriptParseError(line, "expected an object");
    try {
      if (!have_header) {
        if (!j.contains("version") || j["version"] != kTranscriptVersion) {
          throw TranscriptParseError(line, "unsupported or missing version");
        }
        t.n = vertex_field(j, "n", line);
        t.target_s = vertex_field(j, "target_s", line);
        t.proposer = StrategyDescriptor(j.at("proposer"));
        t.decider = StrategyDescriptor(j.at("decider"));
        if (!j.contains("master_seed") || !j["master_seed"].is_number_unsigned()) {
          throw TranscriptParseError(line, "missing master_seed");
        }
        t.master_seed = j["master_seed"].get<std::uint64_t>();
        if (t.n < 2 || t.n > kMaxVertices) throw TranscriptParseError(line, "n out of range");
        have_header = true;
      } else if (j.contains("edges")) {
        if (!j["edges"].is_array()) throw TranscriptParseError(line, "'edges' must be an array");
        for (const auto& e : j["edges"]) {
          if (!e.is_array() || e.size() != 2 || !e[0].is_number_unsigned() || !e[1].is_number_unsigned()) {
            throw TranscriptParseError(line, "edge must be [u, v]");
          }
          const auto u = e[0].get<std::uint32_t>();
          const auto v = e[1].get<std::uint32_t>();
          if (u == v || u >= t.n || v >= t.n) throw TranscriptParseError(line, "edge endpoint out of range");
          t.final_edges.push_back(Pair::of(u, v));
        }
        have_edges = true;
      } else {
        const auto i = vertex_field(j, "i", line);
        const auto u = vertex_field(j, "u", line);
        const auto v = vertex_field(j, "v", line);
        if (i != t.turns.size()) throw TranscriptParseError(line, "turn index out of sequence");
        if (u == v || u >= t.n || v >= t.n) throw TranscriptParseError(line, "vertex out of range");
        if (!j.contains("answer") || !j["answer"].is_string()) throw TranscriptParseError(line, "missing answer");
        const auto a = j["answer"].get<std::string>();
        if (a != "YES" && a != "NO") throw TranscriptParseError(line, "answer must be YES or NO");
        t.turns.push_back(Pair::of(u, v), a == "YES" ? Answer::Yes : Answer::No);
      }
    } catch (const std::invalid_argument& e) {
      throw TranscriptParseError(line, e.what());
    } catch (const nlohmann::json::exception& e) {
      throw TranscriptParseError(line, e.what());
    }
  }
  if (!have_header) throw TranscriptParseError(line, "missing header");
  if (!have_edges) throw TranscriptParseError(line, "missing final edges line");
  return t;
}

void save_transcript(const std::string& path, const Transcript& t) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  write_transcript(out, t);
}

Transcript load_transcript(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_transcript(in);
}

}  // namespace rps
