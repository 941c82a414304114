#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "rps/coins_buckets.hpp"
#include "rps/strategy.hpp"

namespace rps::cli {

/// Everything a run depends on. A run's primary output is a pure function
/// of this struct.
struct RunConfig {
  std::string command;
  std::vector<std::uint32_t> n;
  std::vector<std::uint32_t> s;  // empty: ceil(sqrt(n)) per n
  std::vector<StrategyDescriptor> proposers;
  std::vector<StrategyDescriptor> deciders;
  std::uint64_t trials = 1;
  std::uint64_t master_seed = 0;
  std::string out_dir = ".";
  unsigned jobs = 1;

  // coins
  cb::Params coins;
  std::string t = "0.1";
  std::string policy = "all_heads";
  std::string mode = "exact";

  // verify
  std::vector<std::string> paths;
};

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads the JSON config schema (see README). Throws ConfigError naming the
/// offending field.
RunConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const RunConfig& c);

/// Largest multiple of 6 not above n; paper_proposer needs n % 6 == 0.
std::uint32_t effective_n(std::uint32_t requested, const StrategyDescriptor& proposer);

/// Each command writes its primary output under out_dir, echoes a summary to
/// `out`, writes diagnostics to `err`, and returns the process exit code.
int cmd_play(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_threshold(const RunConfig& c, std::ostream& out, std::ostream& err);
int cmd_coins(const RunConfig& c, std::ostream& out, std::ostream& err);
/// 0 when every transcript verifies, 2 on any rule violation, 1 on parse or
/// I/O errors.
int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err);

int run(const RunConfig& c, std::ostream& out, std::ostream& err);

/// The CSV produced by `sweep`, without touching the filesystem.
std::string sweep_csv(const RunConfig& c, std::ostream& err);

}  // namespace rps::cli
