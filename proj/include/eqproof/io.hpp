#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "eqproof/bank.hpp"
#include "eqproof/expr.hpp"
#include "eqproof/rules.hpp"
#include "eqproof/search.hpp"
#include "eqproof/tuner.hpp"

namespace eqproof {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"unitary": .., "levenshtein": .., "variable_mismatch": .., "length_difference": ..,
///  "start": .., "rules": {"Absorption": .., ...}}. Missing entries are 0.
Json weights_to_json(const HeuristicWeights& w);
HeuristicWeights weights_from_json(const Json& j);
HeuristicWeights load_weights(const std::filesystem::path& path);
void save_weights(const std::filesystem::path& path, const HeuristicWeights& w);

Json rule_to_json(RuleId r);  // {"name", "display_name"}
Json proof_to_json(const Proof& p);
/// Reads the premise, target, complete flag and steps back; stats are not restored.
Proof proof_from_json(const Json& j);
Json transform_to_json(const Transform& t);
Json question_to_json(const Question& q);  // id, level, phrasing, premise, target
/// {"position", "message"} plus "expected"/"found" or "offending" where known.
Json syntax_error_to_json(const SyntaxError& e);

/// GA configuration file. Field names follow GAConfig. "training_set" is
/// either a bank file path (relative to `base_dir`) or an inline array of
/// bank entries.
GAConfig ga_config_from_json(const Json& j, const std::filesystem::path& base_dir);
GAConfig load_ga_config(const std::filesystem::path& path);

/// CSV with header generation,best,mean.
void write_history_csv(std::ostream& out, std::span<const GenerationRecord> history);

}  // namespace eqproof
