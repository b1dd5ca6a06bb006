#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "eqproof/expr.hpp"

namespace eqproof {

enum class RuleId {
    Absorption,
    Associativity,
    Commutativity,
    DeMorgan,
    Distributivity,
    Domination,
    Idempotence,
    Identity,
    IffAsImplication,
    ImplicationAsDisjunction,
    Negation,
    DoubleNegation,
};

inline constexpr std::size_t kRuleCount = 12;

inline constexpr std::array<RuleId, kRuleCount> kAllRules = {
    RuleId::Absorption,       RuleId::Associativity, RuleId::Commutativity,
    RuleId::DeMorgan,         RuleId::Distributivity, RuleId::Domination,
    RuleId::Idempotence,      RuleId::Identity,       RuleId::IffAsImplication,
    RuleId::ImplicationAsDisjunction, RuleId::Negation, RuleId::DoubleNegation,
};

/// Machine name, e.g. "DeMorgan".
std::string_view rule_name(RuleId r);
/// Human name, e.g. "De Morgan's Law".
std::string_view rule_display_name(RuleId r);
/// Accepts the machine name or the display name.
std::optional<RuleId> rule_from_name(std::string_view name);

using Vocabulary = std::set<std::string>;

enum class Direction { Forward, Reverse };

/// One directional rewrite implemented for a rule. `lhs` and `rhs` are the
/// schema instantiated over the variables p, q, r; the variant rewrites
/// instances of `lhs` into instances of `rhs`.
struct RuleDirection {
    RuleId rule;
    std::string pattern;
    Direction direction;
    Expr lhs;
    Expr rhs;
};

std::span<const RuleDirection> rule_directions(RuleId r);

/// One application of a rule at one site of `source`.
struct Transform {
    Expr source;
    RuleId rule;
    TokenSpan site;      // token range in the canonical rendering of source
    Expr result;         // normalized
    std::string text;    // print_canonical(result)
};

/// Every application of `r` anywhere in `e`, deduplicated by result.
///
/// Rewrites that introduce an atom absent from the matched expression draw it
/// from `vocab` plus the constants; the matching contraction only discards
/// such atoms, so every transform can be undone by the same rule.
std::vector<Transform> apply_rule(RuleId r, const Expr& e, const Vocabulary& vocab);

/// Number of subtrees visited by a rewrite traversal.
struct TraversalStats {
    std::size_t subtrees_visited = 0;
    std::size_t subtrees_total = 0;
};

/// Shared post-order traversal behind apply_rule and frontier_gen: each
/// subtree is visited once and every listed rule is tried there. Results are
/// deduplicated by (rule, canonical result text), first site wins.
std::vector<Transform> rewrite_everywhere(const Expr& e, std::span<const RuleId> rules, const Vocabulary& vocab,
                                          TraversalStats* stats = nullptr);

}  // namespace eqproof
