#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rps/cli.hpp"

namespace {

nlohmann::json load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw rps::cli::ConfigError("cannot open config " + path);
  try {
    return nlohmann::json::parse(f);
  } catch (const nlohmann::json::parse_error& e) {
    throw rps::cli::ConfigError(path + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramsey proposer/decider game simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path, out_dir;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  app.add_option("--config", config_path, "JSON run config; flags override its fields");
  auto* seed_opt = app.add_option("--seed", seed, "master seed");
  auto* jobs_opt = app.add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  auto* out_opt = app.add_option("--out", out_dir, "output directory");

  std::vector<std::uint32_t> n, s;
  std::vector<std::string> proposers, deciders, paths;
  std::uint64_t trials = 0;
  std::int64_t a = 0, nu = 0, nu0 = 0;
  std::string t, policy, mode;

  nlohmann::json flags = nlohmann::json::object();
  auto game_options = [&](CLI::App* sub, bool many) {
    sub->add_option("--n", n, many ? "vertex counts" : "vertex count");
    sub->add_option("--s", s, many ? "target independent set sizes" : "target independent set size");
    sub->add_option("--proposer", proposers, "proposer descriptor, e.g. uniform or paper_proposer");
    sub->add_option("--decider", deciders, "decider descriptor, e.g. iid:0.1, iid:c=1, always_yes");
  };

  auto* play = app.add_subcommand("play", "play one game and write its transcript");
  game_options(play, false);
  auto* sweep = app.add_subcommand("sweep", "aggregate games over a grid of settings into CSV");
  game_options(sweep, true);
  sweep->add_option("--trials", trials, "games per cell");
  auto* threshold = app.add_subcommand("threshold", "estimate the largest winnable s");
  game_options(threshold, false);
  threshold->add_option("--trials", trials, "games");
  auto* coins = app.add_subcommand("coins", "Coins-and-Buckets tail experiment");
  coins->add_option("--a", a, "bucket A size");
  coins->add_option("--nu", nu, "number of coins");
  coins->add_option("--nu0", nu0, "forfeit threshold");
  coins->add_option("--t", t, "relative deviation, e.g. 0.1 or 1/8");
  coins->add_option("--policy", policy, "all_heads, all_tails, threshold:x, budget:k, chase");
  coins->add_option("--mode", mode, "exact or independent");
  coins->add_option("--trials", trials, "games");
  auto* verify = app.add_subcommand("verify", "check transcripts against the game rules");
  verify->add_option("paths", paths, "JSONL transcripts")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    nlohmann::json j = config_path.empty() ? nlohmann::json::object() : load_config(config_path);
    j["command"] = app.get_subcommands().front()->get_name();
    if (*seed_opt) j["seed"] = seed;
    if (*jobs_opt) j["jobs"] = jobs;
    if (*out_opt) j["out"] = out_dir;
    if (!n.empty()) j["n"] = n;
    if (!s.empty()) j["s"] = s;
    if (!proposers.empty()) j.erase("proposer"), j["proposers"] = proposers;
    if (!deciders.empty()) j.erase("decider"), j["deciders"] = deciders;
    if (trials) j["trials"] = trials;
    if (a) j["a"] = a;
    if (nu) j["nu"] = nu;
    if (nu0) j["nu0"] = nu0;
    if (!t.empty()) j["t"] = t;
    if (!policy.empty()) j["policy"] = policy;
    if (!mode.empty()) j["mode"] = mode;
    if (!paths.empty()) j["paths"] = paths;
    return rps::cli::run(rps::cli::config_from_json(j), std::cout, std::cerr);
  } catch (const rps::cli::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
