#include "rps/strategy.hpp"

#include <cmath>
#include <stdexcept>

#include "rps/deciders.hpp"
#include "rps/proposers.hpp"

namespace rps {
namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("strategy: " + what); }

double number_field(const nlohmann::json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    bad("'" + spec.value("kind", std::string("?")) + "' needs numeric field '" + key + "'");
  }
  return spec[key].get<double>();
}

Answer parse_answer(const nlohmann::json& j) {
  if (j.is_boolean()) return j.get<bool>() ? Answer::Yes : Answer::No;
  if (j.is_number_integer()) return j.get<int>() != 0 ? Answer::Yes : Answer::No;
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "YES" || s == "Y" || s == "yes") return Answer::Yes;
    if (s == "NO" || s == "N" || s == "no") return Answer::No;
  }
  bad("scripted answers must be YES/NO, got " + j.dump());
}

std::vector<Answer> script_of(const nlohmann::json& spec) {
  std::vector<Answer> out;
  for (const auto& a : spec.at("answers")) out.push_back(parse_answer(a));
  return out;
}

}  // namespace

StrategyDescriptor::StrategyDescriptor(nlohmann::json spec) : spec_(std::move(spec)) {
  if (!spec_.is_object() || !spec_.contains("kind") || !spec_["kind"].is_string()) {
    bad("descriptor must be an object with a string 'kind': " + spec_.dump());
  }
  kind_ = spec_["kind"].get<std::string>();
  if (kind_ == "iid") {
    if (spec_.contains("p")) {
      const double p = number_field(spec_, "p");
      if (!(p >= 0.0 && p <= 1.0)) bad("iid probability must lie in [0,1], got " + std::to_string(p));
    } else if (spec_.contains("c")) {
      const double c = number_field(spec_, "c");
      if (!(c >= 0.0)) bad("iid scale c must be non-negative");
    } else {
      bad("iid needs 'p' or 'c'");
    }
  } else if (kind_ == "budget") {
    if (!spec_.contains("k") || !spec_["k"].is_number_integer() || spec_["k"].get<std::int64_t>() < 0) {
      bad("budget needs a non-negative integer 'k'");
    }
  } else if (kind_ == "scripted") {
    if (!spec_.contains("answers") || !spec_["answers"].is_array()) bad("scripted needs an 'answers' array");
    script_of(spec_);
  } else if (kind_ == "adaptive_threshold") {
    const double t = number_field(spec_, "target");
    if (!(t >= 0.0 && t <= 1.0)) bad("adaptive_threshold target must lie in [0,1]");
  } else if (kind_ != "uniform" && kind_ != "paper_proposer" && kind_ != "always_yes" &&
             kind_ != "always_no" && kind_ != "clairvoyant") {
    bad("unknown kind '" + kind_ + "'");
  }
}

StrategyDescriptor StrategyDescriptor::parse(std::string_view text) {
  if (!text.empty() && text.front() == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
      bad(std::string("bad JSON descriptor: ") + e.what());
    }
    return StrategyDescriptor(std::move(j));
  }
  const auto colon = text.find(':');
  const std::string kind(text.substr(0, colon));
  nlohmann::json j = {{"kind", kind}};
  if (colon != std::string_view::npos) {
    const std::string arg(text.substr(colon + 1));
    if (kind == "scripted") {
      nlohmann::json answers = nlohmann::json::array();
      for (char ch : arg) answers.push_back(ch == 'Y' ? "YES" : ch == 'N' ? "NO" : std::string(1, ch));
      j["answers"] = answers;
    } else if (kind == "iid" || kind == "budget" || kind == "adaptive_threshold") {
      std::size_t used = 0;
      const bool scaled = kind == "iid" && arg.rfind("c=", 0) == 0;
      const std::string digits = scaled ? arg.substr(2) : arg;
      try {
        if (kind == "budget") {
          j["k"] = std::stoll(digits, &used);
        } else {
          j[kind == "iid" ? (scaled ? "c" : "p") : "target"] = std::stod(digits, &used);
        }
      } catch (const std::logic_error&) {
        used = std::string::npos;
      }
      if (used != digits.size()) bad("bad parameter in '" + std::string(text) + "'");
    } else {
      bad("kind '" + kind + "' takes no parameter");
    }
  } else if (kind == "scripted") {
    j["answers"] = nlohmann::json::array();
  }
  return StrategyDescriptor(std::move(j));
}

std::string StrategyDescriptor::label() const {
  if (kind_ == "iid") {
    return spec_.contains("p") ? "iid:" + spec_["p"].dump() : "iid:c=" + spec_["c"].dump();
  }
  if (kind_ == "budget") return "budget:" + spec_["k"].dump();
  if (kind_ == "adaptive_threshold") return "adaptive_threshold:" + spec_["target"].dump();
  if (kind_ == "scripted") {
    std::string s = "scripted:";
    for (Answer a : script_of(spec_)) s += a == Answer::Yes ? 'Y' : 'N';
    return s;
  }
  return kind_;
}

bool StrategyDescriptor::is_proposer() const { return kind_ == "uniform" || kind_ == "paper_proposer"; }
bool StrategyDescriptor::is_decider() const { return !kind_.empty() && !is_proposer(); }

double StrategyDescriptor::iid_probability(std::uint32_t n) const {
  if (kind_ != "iid") bad("iid_probability on kind '" + kind_ + "'");
  if (spec_.contains("p")) return spec_["p"].get<double>();
  const double p = spec_["c"].get<double>() / std::sqrt(static_cast<double>(n));
  return p > 1.0 ? 1.0 : p;
}

IidDecider::IidDecider(StrategyDescriptor desc, double p, std::uint64_t seed)
    : desc_(std::move(desc)), p_(p), rng_(make_rng(seed)) {
  if (!(p >= 0.0 && p <= 1.0)) bad("iid probability must lie in [0,1]");
}

Answer IidDecider::decide(const DeciderView&) { return bernoulli(rng_, p_) ? Answer::Yes : Answer::No; }

Answer AdaptiveThresholdDecider::decide(const DeciderView& view) {
  // yes/turn < target, compared without division; turn 0 has fraction 0.
  const double yes = static_cast<double>(view.history.yes_count());
  return yes < target_ * static_cast<double>(view.turn) || (view.turn == 0 && target_ > 0.0)
             ? Answer::Yes
             : Answer::No;
}

std::unique_ptr<DeciderPolicy> make_decider(const StrategyDescriptor& desc, std::uint32_t n,
                                            std::uint64_t seed) {
  const auto& kind = desc.kind();
  if (kind == "iid") return std::make_unique<IidDecider>(desc, desc.iid_probability(n), seed);
  if (kind == "always_yes") return std::make_unique<ConstantDecider>(desc, Answer::Yes);
  if (kind == "always_no") return std::make_unique<ConstantDecider>(desc, Answer::No);
  if (kind == "budget") {
    return std::make_unique<BudgetDecider>(desc, desc.json()["k"].get<std::uint64_t>());
  }
  if (kind == "scripted") return std::make_unique<ScriptedDecider>(desc, script_of(desc.json()));
  if (kind == "adaptive_threshold") {
    return std::make_unique<AdaptiveThresholdDecider>(desc, desc.json()["target"].get<double>());
  }
  if (kind == "clairvoyant") bad("the clairvoyant decider is harness-only");
  bad("'" + kind + "' is not a decider");
}

std::unique_ptr<ProposerPolicy> make_proposer(const StrategyDescriptor& desc, std::uint32_t n,
                                              std::uint64_t seed) {
  if (desc.kind() == "uniform") return std::make_unique<UniformProposer>(desc, seed);
  if (desc.kind() == "paper_proposer") return std::make_unique<PaperProposer>(desc, n, seed);
  bad("'" + desc.kind() + "' is not a proposer");
}

}  // namespace rps
