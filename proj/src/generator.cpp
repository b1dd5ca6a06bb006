#include "eqproof/generator.hpp"

#include <set>
#include <string>
#include <utility>

#include "eqproof/frontier.hpp"
#include "eqproof/random.hpp"

namespace eqproof {

GeneratedProof proof_gen(const Expr& target, std::size_t n, const Vocabulary& vocab, std::uint64_t rng_seed) {
    for (const auto& v : variables(target))
        if (!vocab.count(v)) throw std::invalid_argument("vocabulary is missing variable " + v);

    Rng rng(rng_seed);
    const Expr start = normalize(target);
    Expr current = start;
    const std::string start_key = print_canonical(start);
    std::string current_key = start_key;
    std::string previous_key;

    // walk[i] is the transform that left the i-th visited expression.
    std::vector<std::pair<RuleId, Expr>> walk;
    walk.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        Frontier f = frontier_gen(current, vocab);
        if (f.entries.empty()) throw EmptyFrontier();
        std::vector<const Transform*> pool;
        for (const auto& t : f.entries)
            if (t.text != current_key && t.text != previous_key && t.text != start_key) pool.push_back(&t);
        if (pool.empty())
            for (const auto& t : f.entries) pool.push_back(&t);
        const Transform& pick = *pool[uniform_index(rng, pool.size())];
        walk.emplace_back(pick.rule, current);
        previous_key = std::move(current_key);
        current_key = pick.text;
        current = pick.result;
    }

    // Every edge is undone by the rule that made it, so the reversed walk is
    // a proof from the end point back to the start.
    GeneratedProof out{Proof{current, start, {}, true, {}}, start, n, rng_seed};
    for (auto it = walk.rbegin(); it != walk.rend(); ++it) out.proof.steps.push_back({it->first, it->second});
    return out;
}

std::vector<GeneratedQuestion> make_dataset(std::span<const Expr> targets, std::size_t n,
                                            std::size_t count_per_target, std::uint64_t rng_seed) {
    std::vector<GeneratedQuestion> out;
    std::set<std::pair<std::string, std::string>> seen;
    for (std::size_t t = 0; t < targets.size(); ++t) {
        const Vocabulary vocab = variables(targets[t]);
        for (std::size_t j = 0; j < count_per_target; ++j) {
            GeneratedProof g = proof_gen(targets[t], n, vocab, derive_seed(rng_seed, t, j));
            std::string premise = print_canonical(g.proof.premise);
            std::string target = print_canonical(g.proof.target);
            if (premise == target) continue;
            if (!seen.emplace(premise, target).second) continue;
            Question q{"gen-n" + std::to_string(n) + "-t" + std::to_string(t) + "-" + std::to_string(j),
                       level_for_steps(n), g.proof.premise, g.proof.target, "generated"};
            out.push_back({std::move(q), std::move(g.proof)});
        }
    }
    return out;
}

}  // namespace eqproof
