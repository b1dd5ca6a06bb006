#pragma once

#include <vector>

#include "eqproof/expr.hpp"
#include "eqproof/rules.hpp"

namespace eqproof {

/// All one-step rewrites of `source`, deduplicated by (rule, result).
struct Frontier {
    Expr source;
    std::vector<Transform> entries;
};

Frontier frontier_gen(const Expr& e, const Vocabulary& vocab, TraversalStats* stats = nullptr);

enum class Membership { Hit, RuleMismatch, Miss };

/// Hit when `candidate` is reachable with `rule`; RuleMismatch when it is
/// reachable only with some other rule.
Membership frontier_contains(const Frontier& f, RuleId rule, const Expr& candidate);

}  // namespace eqproof
