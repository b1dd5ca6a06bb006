#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "eqproof/expr.hpp"
#include "eqproof/rules.hpp"

namespace eqproof {

inline constexpr double kWeightMin = -10.0;
inline constexpr double kWeightMax = 10.0;

/// Linear ensemble over surface comparators plus a prior per rule.
struct HeuristicWeights {
    static constexpr std::size_t kGeneCount = 5 + kRuleCount;

    double unitary = 0.0;
    double levenshtein = 0.0;
    double variable_mismatch = 0.0;
    double length_difference = 0.0;
    double start = 0.0;  // used in place of a rule prior at the root
    std::array<double, kRuleCount> rule{};

    double& rule_weight(RuleId r) { return rule[static_cast<std::size_t>(r)]; }
    double rule_weight(RuleId r) const { return rule[static_cast<std::size_t>(r)]; }

    /// Tuned production ensemble. Double Negation has no tuned prior and is 0.
    static HeuristicWeights production();
    static HeuristicWeights unitary_only();

    /// Gene order: unitary, levenshtein, variable_mismatch, length_difference,
    /// start, then rule priors in RuleId order.
    std::array<double, kGeneCount> genes() const;
    static HeuristicWeights from_genes(const std::array<double, kGeneCount>& genes);

    bool in_bounds() const;

    bool operator==(const HeuristicWeights&) const = default;
};

struct SearchConfig {
    double time_budget = 3.0;  // seconds
    int depth_limit = 10;
    std::size_t max_expansions = 50'000;
    // Successors longer than this many tokens are discarded. 0 picks
    // 2 * max(tokens(premise), tokens(target)) + 16. Without a cap, weights
    // that favour expanding rules grow expressions geometrically.
    std::size_t max_tokens = 0;

    void validate() const;
    std::size_t token_cap(const Expr& premise, const Expr& target) const;
};

struct ProofStep {
    RuleId rule;
    Expr expr;
};

struct SearchStats {
    std::size_t expansions = 0;
    std::size_t generated = 0;
    double elapsed_seconds = 0.0;
    bool timed_out = false;
    bool expansion_limit_hit = false;
    std::size_t pruned_by_size = 0;
};

struct Proof {
    Expr premise;
    Expr target;
    std::vector<ProofStep> steps;
    bool complete = false;
    SearchStats stats;
};

/// Single-character edit distance.
std::size_t levenshtein(std::string_view a, std::string_view b);

double heuristic_eval(const Expr& candidate, const Expr& target, std::optional<RuleId> via_rule,
                      const HeuristicWeights& w);

/// Time-bound, depth-limited A* with unit edge costs. Returns a complete proof
/// when the target is reached, otherwise the path to the lowest-f node seen.
Proof astar_solve(const Expr& premise, const Expr& target, const HeuristicWeights& w, const SearchConfig& cfg);

enum class HintLevel { Rule, Expression };

struct Hint {
    bool at_target = false;  // nothing left to prove
    std::optional<RuleId> rule;
    std::optional<Expr> expr;  // set for HintLevel::Expression
    bool complete = false;     // the underlying search reached the target
    std::optional<Proof> proof;  // absent when at_target
};

class NoStepAvailable : public std::runtime_error {
public:
    NoStepAvailable() : std::runtime_error("no next step available") {}
};

Hint next_step_hint(const Expr& current, const Expr& target, HintLevel level, const HeuristicWeights& w,
                    const SearchConfig& cfg);

/// Index of the first step that is not a rule application of its
/// predecessor, or nullopt when every step checks out. A complete proof must
/// also end at its target.
std::optional<std::size_t> find_invalid_step(const Proof& proof);

Vocabulary question_vocabulary(const Expr& premise, const Expr& target);

}  // namespace eqproof
