#include "rps/cli.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "rps/analysis.hpp"
#include "rps/engine.hpp"
#include "rps/parallel.hpp"
#include "rps/rng.hpp"

namespace rps::cli {
namespace {

template <typename T>
std::vector<T> one_or_many(const nlohmann::json& j, const char* key) {
  std::vector<T> out;
  if (!j.contains(key)) return out;
  try {
    if (j[key].is_array()) {
      for (const auto& x : j[key]) out.push_back(x.get<T>());
    } else {
      out.push_back(j[key].get<T>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
  return out;
}

std::vector<StrategyDescriptor> descriptors(const nlohmann::json& j, const char* plural, const char* singular) {
  std::vector<StrategyDescriptor> out;
  for (const char* key : {plural, singular}) {
    if (!j.contains(key)) continue;
    const auto& v = j[key];
    const auto items = v.is_array() ? v : nlohmann::json::array({v});
    for (const auto& item : items) {
      try {
        out.push_back(item.is_string() ? StrategyDescriptor::parse(item.get<std::string>())
                                       : StrategyDescriptor(item));
      } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("config field '") + key + "': " + e.what());
      }
    }
  }
  return out;
}

std::string format_double(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  return buf;
}

std::filesystem::path output_path(const RunConfig& c, const char* name) {
  std::filesystem::create_directories(c.out_dir);
  return std::filesystem::path(c.out_dir) / name;
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

const StrategyDescriptor& single(const std::vector<StrategyDescriptor>& v, const char* what) {
  if (v.size() != 1) throw ConfigError(std::string("exactly one ") + what + " is required");
  return v.front();
}

std::uint32_t single_n(const RunConfig& c) {
  if (c.n.size() != 1) throw ConfigError("exactly one n is required");
  return c.n.front();
}

std::uint32_t default_s(std::uint32_t n) {
  return static_cast<std::uint32_t>(std::ceil(std::sqrt(static_cast<double>(n))));
}

}  // namespace

RunConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  RunConfig c;
  try {
    c.command = j.value("command", std::string());
    c.n = one_or_many<std::uint32_t>(j, "n");
    c.s = one_or_many<std::uint32_t>(j, "s");
    c.proposers = descriptors(j, "proposers", "proposer");
    c.deciders = descriptors(j, "deciders", "decider");
    c.trials = j.value("trials", std::uint64_t{1});
    c.master_seed = j.value("seed", std::uint64_t{0});
    c.out_dir = j.value("out", std::string("."));
    c.jobs = j.value("jobs", 1u);
    c.coins.a = j.value("a", std::int64_t{1});
    c.coins.nu = j.value("nu", std::int64_t{2});
    c.coins.nu0 = j.value("nu0", std::int64_t{1});
    if (j.contains("t")) c.t = j["t"].is_string() ? j["t"].get<std::string>() : j["t"].dump();
    c.policy = j.value("policy", c.policy);
    c.mode = j.value("mode", c.mode);
    c.paths = one_or_many<std::string>(j, "paths");
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

nlohmann::json config_to_json(const RunConfig& c) {
  auto descs = [](const std::vector<StrategyDescriptor>& v) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& d : v) out.push_back(d.json());
    return out;
  };
  return {{"command", c.command}, {"n", c.n},
          {"s", c.s},             {"proposers", descs(c.proposers)},
          {"deciders", descs(c.deciders)}, {"trials", c.trials},
          {"seed", c.master_seed}, {"out", c.out_dir},
          {"jobs", c.jobs},       {"a", c.coins.a},
          {"nu", c.coins.nu},     {"nu0", c.coins.nu0},
          {"t", c.t},             {"policy", c.policy},
          {"mode", c.mode},       {"paths", c.paths}};
}

std::uint32_t effective_n(std::uint32_t requested, const StrategyDescriptor& proposer) {
  return proposer.kind() == "paper_proposer" ? requested - requested % 6 : requested;
}

int cmd_play(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::uint32_t requested = single_n(c);
  const auto& proposer = single(c.proposers, "proposer");
  const auto& decider = single(c.deciders, "decider");
  const std::uint32_t n = effective_n(requested, proposer);
  if (n != requested) err << "note: paper_proposer needs n % 6 == 0; using n=" << n << '\n';
  const std::uint32_t s = c.s.empty() ? default_s(n) : c.s.front();
  if (s > n) throw ConfigError("s exceeds n");

  const Transcript t = run_game(n, proposer, decider, s, c.master_seed);
  const auto path = output_path(c, "transcript.jsonl");
  save_transcript(path.string(), t);
  const auto cert = certify(GraphView(n, t.final_edges), derive_seed(c.master_seed, 2));
  const nlohmann::json summary = {{"requested_n", requested},
                                  {"n", n},
                                  {"s", s},
                                  {"turns", t.turns.size()},
                                  {"edges", t.final_edges.size()},
                                  {"alpha_certificate", cert.size()},
                                  {"certificate", cert.exact() ? "exact" : "greedy"},
                                  {"win", cert.size() >= s},
                                  {"transcript", path.string()}};
  out << summary.dump() << '\n';
  return 0;
}

std::string sweep_csv(const RunConfig& c, std::ostream& err) {
  if (c.n.empty() || c.proposers.empty() || c.deciders.empty()) {
    throw ConfigError("sweep needs n, proposers and deciders");
  }
  if (c.trials < 1) throw ConfigError("trials must be positive");

  struct Cell {
    std::uint32_t n;
    const StrategyDescriptor* proposer;
    const StrategyDescriptor* decider;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (std::uint32_t requested : c.n) {
    for (const auto& p : c.proposers) {
      for (const auto& d : c.deciders) {
        cells.push_back({effective_n(requested, p), &p, &d, derive_seed(c.master_seed, cells.size())});
      }
    }
  }

  struct Outcome {
    std::uint32_t alpha = 0;
    std::uint64_t edges = 0;
    std::uint64_t turns = 0;
    std::string error;
  };
  const std::uint64_t total = cells.size() * c.trials;
  const auto outcomes = parallel_map(total, c.jobs, [&](std::uint64_t k) {
    const Cell& cell = cells[k / c.trials];
    const std::uint64_t game_seed = derive_seed(cell.seed, k % c.trials);
    Outcome o;
    try {
      const Transcript t = run_game(cell.n, *cell.proposer, *cell.decider, 0, game_seed);
      o.alpha = static_cast<std::uint32_t>(certify(GraphView(cell.n, t.final_edges), derive_seed(game_seed, 2)).size());
      o.edges = t.final_edges.size();
      o.turns = t.turns.size();
    } catch (const std::exception& e) {
      o.error = e.what();
    }
    return o;
  });

  std::ostringstream csv;
  csv << "n,trials,proposer,decider,p,s,wins,win_rate,mean_alpha_certificate,mean_edges,mean_turns,seed\n";
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    const Cell& cell = cells[ci];
    std::string error;
    double sum_alpha = 0, sum_edges = 0, sum_turns = 0;
    std::vector<std::uint32_t> alphas;
    for (std::uint64_t trial = 0; trial < c.trials; ++trial) {
      const Outcome& o = outcomes[ci * c.trials + trial];
      if (!o.error.empty()) {
        error = o.error;
        break;
      }
      alphas.push_back(o.alpha);
      sum_alpha += o.alpha;
      sum_edges += static_cast<double>(o.edges);
      sum_turns += static_cast<double>(o.turns);
    }
    const std::string p = cell.decider->kind() == "iid" ? format_double(cell.decider->iid_probability(cell.n)) : "";
    const auto s_values = c.s.empty() ? std::vector<std::uint32_t>{default_s(cell.n)} : c.s;
    for (std::uint32_t s : s_values) {
      csv << cell.n << ',' << c.trials << ',' << cell.proposer->label() << ',' << cell.decider->label() << ','
          << p << ',' << s << ',';
      if (!error.empty()) {
        err << "sweep: n=" << cell.n << " " << cell.proposer->label() << " vs " << cell.decider->label()
            << " failed: " << error << '\n';
        csv << ",,,,," << cell.seed << '\n';
        continue;
      }
      std::uint64_t wins = 0;
      for (auto a : alphas) wins += a >= s;
      const double trials = static_cast<double>(c.trials);
      csv << wins << ',' << format_double(static_cast<double>(wins) / trials) << ','
          << format_double(sum_alpha / trials) << ',' << format_double(sum_edges / trials) << ','
          << format_double(sum_turns / trials) << ',' << cell.seed << '\n';
    }
  }
  return csv.str();
}

int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::string csv = sweep_csv(c, err);
  const auto path = output_path(c, "sweep.csv");
  write_file(path, csv);
  out << csv;
  return 0;
}

int cmd_threshold(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const std::uint32_t requested = single_n(c);
  const auto& proposer = single(c.proposers, "proposer");
  const auto& decider = single(c.deciders, "decider");
  const std::uint32_t n = effective_n(requested, proposer);
  if (n != requested) err << "note: paper_proposer needs n % 6 == 0; using n=" << n << '\n';
  const auto est = estimate_threshold(n, proposer, decider, c.trials, c.master_seed, c.jobs);

  nlohmann::json curve = nlohmann::json::array();
  for (const auto& pt : est.curve) curve.push_back({{"s", pt.s}, {"wins", pt.wins}, {"trials", pt.trials}});
  const nlohmann::json result = {{"n", n},
                                 {"s_star", est.s_star},
                                 {"curve", curve},
                                 {"requested_n", requested},
                                 {"proposer", proposer.json()},
                                 {"decider", decider.json()},
                                 {"trials", est.trials},
                                 {"seed", est.seed},
                                 {"certificate", est.method == CertificateMethod::Exact ? "exact" : "greedy"},
                                 {"isotonic_adjusted", est.isotonic_adjusted},
                                 {"note", est.note}};
  const std::string text = result.dump(2) + "\n";
  write_file(output_path(c, "threshold.json"), text);
  out << text;
  return 0;
}

int cmd_coins(const RunConfig& c, std::ostream& out, std::ostream&) {
  const Rational t = Rational::parse(c.t);
  const auto policy = cb::parse_policy(c.policy);
  const auto mode = cb::parse_mode(c.mode);
  const auto est = cb::empirical_tail(c.coins, *policy, t, c.trials, c.master_seed, mode);
  const auto bound = cb::tail_bound_bucket(c.coins, t.to_double());
  const nlohmann::json result = {{"frequency", est.frequency}, {"ci_low", est.ci.low},
                                 {"ci_high", est.ci.high},     {"bound_raw", bound.raw},
                                 {"bound_clamped", bound.clamped}};
  const std::string text = result.dump() + "\n";
  write_file(output_path(c, "coins.json"), text);
  out << text;
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.paths.empty()) throw ConfigError("verify needs at least one transcript path");
  bool parse_failed = false;
  bool violated = false;
  for (const auto& path : c.paths) {
    Transcript t;
    try {
      t = load_transcript(path);
    } catch (const std::exception& e) {
      err << path << ": parse error: " << e.what() << '\n';
      parse_failed = true;
      continue;
    }
    const auto report = verify_transcript(t);
    if (report.ok()) {
      out << path << ": ok (" << t.turns.size() << " turns)\n";
      continue;
    }
    violated = true;
    for (const auto& v : report.violations) {
      out << path << ": violation [" << v.rule << "] at turn " << v.turn << ": " << v.detail << '\n';
    }
  }
  if (parse_failed) return 1;
  return violated ? 2 : 0;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  if (c.command == "play") return cmd_play(c, out, err);
  if (c.command == "sweep") return cmd_sweep(c, out, err);
  if (c.command == "threshold") return cmd_threshold(c, out, err);
  if (c.command == "coins") return cmd_coins(c, out, err);
  if (c.command == "verify") return cmd_verify(c, out, err);
  throw ConfigError("unknown command '" + c.command + "'");
}

}  // namespace rps::cli
