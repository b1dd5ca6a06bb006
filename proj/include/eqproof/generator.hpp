#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "eqproof/bank.hpp"
#include "eqproof/expr.hpp"
#include "eqproof/rules.hpp"
#include "eqproof/search.hpp"

namespace eqproof {

/// A proof built by walking away from `seed_expr` and reversing the walk.
/// proof.premise is the walk's end point and proof.target is seed_expr.
struct GeneratedProof {
    Proof proof;
    Expr seed_expr;
    std::size_t steps = 0;
    std::uint64_t rng_seed = 0;
};

class EmptyFrontier : public std::logic_error {
public:
    EmptyFrontier() : std::logic_error("expression has no rewrites") {}
};

/// Random walk of n rule applications from `target`. Each draw is uniform over
/// the frontier minus self-loops, the expression just left and `target`
/// itself, so the reversed walk only reaches the target at its last step. If
/// nothing else remains the full frontier is used. Requires
/// vocab ⊇ variables(target).
GeneratedProof proof_gen(const Expr& target, std::size_t n, const Vocabulary& vocab, std::uint64_t rng_seed);

struct GeneratedQuestion {
    Question question;
    Proof witness;
};

/// count_per_target walks of n steps from each target, using each target's own
/// variables as vocabulary. Walks that return to their target and repeated
/// (premise, target) pairs are dropped, so the result may be shorter than
/// targets.size() * count_per_target.
std::vector<GeneratedQuestion> make_dataset(std::span<const Expr> targets, std::size_t n,
                                            std::size_t count_per_target, std::uint64_t rng_seed);

}  // namespace eqproof
