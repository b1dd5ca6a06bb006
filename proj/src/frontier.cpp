#include "eqproof/frontier.hpp"

namespace eqproof {

Frontier frontier_gen(const Expr& e, const Vocabulary& vocab, TraversalStats* stats) {
    auto entries = rewrite_everywhere(e, kAllRules, vocab, stats);
    Expr source = entries.empty() ? annotate(e) : entries.front().source;
    return {std::move(source), std::move(entries)};
}

Membership frontier_contains(const Frontier& f, RuleId rule, const Expr& candidate) {
    const std::string text = print_canonical(normalize(candidate));
    bool other = false;
    for (const auto& t : f.entries) {
        if (t.text != text) continue;
        if (t.rule == rule) return Membership::Hit;
        other = true;
    }
    return other ? Membership::RuleMismatch : Membership::Miss;
}

}  // namespace eqproof
