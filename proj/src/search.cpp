#include "eqproof/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <queue>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "eqproof/frontier.hpp"

namespace eqproof {

HeuristicWeights HeuristicWeights::production() {
    HeuristicWeights w;
    w.levenshtein = 3.36;
    w.unitary = 3.76;
    w.variable_mismatch = 6.09;
    w.length_difference = 1.53;
    w.start = 1.44;
    w.rule_weight(RuleId::Absorption) = -3.88;
    w.rule_weight(RuleId::Associativity) = 1.94;
    w.rule_weight(RuleId::Commutativity) = -8.07;
    w.rule_weight(RuleId::DeMorgan) = 3.71;
    w.rule_weight(RuleId::Distributivity) = 3.94;
    w.rule_weight(RuleId::Domination) = 4.09;
    w.rule_weight(RuleId::Idempotence) = -7.03;
    w.rule_weight(RuleId::Identity) = -9.85;
    w.rule_weight(RuleId::IffAsImplication) = -4.20;
    w.rule_weight(RuleId::ImplicationAsDisjunction) = 6.92;
    w.rule_weight(RuleId::Negation) = -0.55;
    w.rule_weight(RuleId::DoubleNegation) = 0.0;
    return w;
}

HeuristicWeights HeuristicWeights::unitary_only() {
    HeuristicWeights w;
    w.unitary = 1.0;
    return w;
}

std::array<double, HeuristicWeights::kGeneCount> HeuristicWeights::genes() const {
    std::array<double, kGeneCount> g{};
    g[0] = unitary;
    g[1] = levenshtein;
    g[2] = variable_mismatch;
    g[3] = length_difference;
    g[4] = start;
    std::copy(rule.begin(), rule.end(), g.begin() + 5);
    return g;
}

HeuristicWeights HeuristicWeights::from_genes(const std::array<double, kGeneCount>& g) {
    HeuristicWeights w;
    w.unitary = g[0];
    w.levenshtein = g[1];
    w.variable_mismatch = g[2];
    w.length_difference = g[3];
    w.start = g[4];
    std::copy(g.begin() + 5, g.end(), w.rule.begin());
    return w;
}

bool HeuristicWeights::in_bounds() const {
    auto g = genes();
    return std::all_of(g.begin(), g.end(), [](double x) { return x >= kWeightMin && x <= kWeightMax; });
}

void SearchConfig::validate() const {
    if (!(time_budget > 0.0)) throw std::invalid_argument("time_budget must be positive");
    if (depth_limit <= 0) throw std::invalid_argument("depth_limit must be positive");
    if (max_expansions == 0) throw std::invalid_argument("max_expansions must be positive");
}

std::size_t SearchConfig::token_cap(const Expr& premise, const Expr& target) const {
    if (max_tokens) return max_tokens;
    return 2 * std::max(token_count(premise), token_count(target)) + 16;
}

std::size_t levenshtein(std::string_view a, std::string_view b) {
    if (a.size() < b.size()) std::swap(a, b);
    std::vector<std::size_t> row(b.size() + 1);
    for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= a.size(); ++i) {
        std::size_t diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= b.size(); ++j) {
            std::size_t up = row[j];
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + (a[i - 1] == b[j - 1] ? 0 : 1)});
            diag = up;
        }
    }
    return row[b.size()];
}

namespace {

// Target-side quantities computed once per search.
class Scorer {
public:
    Scorer(const Expr& target, const HeuristicWeights& w)
        : w_(w), text_(print_compact(target)), vars_(variables(target)) {}

    double operator()(const Expr& candidate, std::optional<RuleId> via) const {
        return score(print_compact(candidate), variables(candidate), via);
    }

    double score(const std::string& text, const std::set<std::string>& vars, std::optional<RuleId> via) const {
        std::size_t mismatch = 0;
        for (const auto& v : vars) mismatch += vars_.count(v) ? 0 : 1;
        for (const auto& v : vars_) mismatch += vars.count(v) ? 0 : 1;
        const double len_diff =
            std::fabs(static_cast<double>(text.size()) - static_cast<double>(text_.size()));
        return w_.unitary + w_.levenshtein * static_cast<double>(levenshtein(text, text_)) +
               w_.variable_mismatch * static_cast<double>(mismatch) + w_.length_difference * len_diff +
               (via ? w_.rule_weight(*via) : w_.start);
    }

private:
    const HeuristicWeights& w_;
    std::string text_;
    std::set<std::string> vars_;
};

struct SearchNode {
    Expr expr;
    std::string key;  // canonical text
    int parent;       // -1 at the root
    std::optional<RuleId> via_rule;
    int g;
    double h;
    double f() const { return g + h; }
};

struct OpenEntry {
    double f;
    double h;
    std::uint64_t seq;
    std::size_t node;
};

// Min-heap order: lower f, then lower h, then first inserted.
struct OpenAfter {
    bool operator()(const OpenEntry& a, const OpenEntry& b) const {
        if (a.f != b.f) return a.f > b.f;
        if (a.h != b.h) return a.h > b.h;
        return a.seq > b.seq;
    }
};

}  // namespace

double heuristic_eval(const Expr& candidate, const Expr& target, std::optional<RuleId> via_rule,
                      const HeuristicWeights& w) {
    return Scorer(normalize(target), w)(normalize(candidate), via_rule);
}

Vocabulary question_vocabulary(const Expr& premise, const Expr& target) {
    auto v = variables(premise);
    v.merge(variables(target));
    return v;
}

Proof astar_solve(const Expr& premise, const Expr& target, const HeuristicWeights& w, const SearchConfig& cfg) {
    cfg.validate();
    using Clock = std::chrono::steady_clock;
    const auto started = Clock::now();
    const auto deadline = started + std::chrono::duration_cast<Clock::duration>(
                                        std::chrono::duration<double>(cfg.time_budget));

    Proof proof{normalize(premise), normalize(target), {}, false, {}};
    const Vocabulary vocab = question_vocabulary(proof.premise, proof.target);
    const std::string goal = print_canonical(proof.target);
    const Scorer scorer(proof.target, w);
    const std::size_t cap = cfg.token_cap(proof.premise, proof.target);

    std::vector<SearchNode> nodes;
    std::priority_queue<OpenEntry, std::vector<OpenEntry>, OpenAfter> open;
    std::unordered_map<std::string, int> best_g;
    std::unordered_set<std::string> closed;
    std::uint64_t seq = 0;

    auto finish = [&](std::optional<std::size_t> last, bool complete) {
        std::vector<ProofStep> reversed;
        for (auto i = last; i && nodes[*i].parent >= 0; i = static_cast<std::size_t>(nodes[*i].parent))
            reversed.push_back({*nodes[*i].via_rule, nodes[*i].expr});
        proof.steps.assign(reversed.rbegin(), reversed.rend());
        proof.complete = complete;
        proof.stats.generated = nodes.size();
        proof.stats.elapsed_seconds = std::chrono::duration<double>(Clock::now() - started).count();
        return proof;
    };

    nodes.push_back({proof.premise, print_canonical(proof.premise), -1, std::nullopt, 0,
                     scorer(proof.premise, std::nullopt)});
    if (nodes[0].key == goal) return finish(0, true);
    best_g[nodes[0].key] = 0;
    open.push({nodes[0].f(), nodes[0].h, seq++, 0});

    // Lowest (f, h, seq) among generated non-root nodes.
    std::optional<std::size_t> best;
    std::uint64_t best_seq = 0;

    while (!open.empty()) {
        const OpenEntry top = open.top();
        open.pop();
        // Copy out: `nodes` grows below.
        const Expr expr = nodes[top.node].expr;
        const int g = nodes[top.node].g;
        if (!closed.insert(nodes[top.node].key).second) continue;
        if (g >= cfg.depth_limit) continue;
        if (proof.stats.expansions >= cfg.max_expansions) {
            proof.stats.expansion_limit_hit = true;
            break;
        }
        if (proof.stats.expansions > 0 && Clock::now() >= deadline) {
            proof.stats.timed_out = true;
            break;
        }
        ++proof.stats.expansions;

        Frontier frontier = frontier_gen(expr, vocab);
        for (auto& t : frontier.entries) {
            if (closed.count(t.text)) continue;
            if (token_count(t.result) > cap) {
                ++proof.stats.pruned_by_size;
                continue;
            }
            const int child_g = g + 1;
            auto [it, fresh] = best_g.try_emplace(t.text, child_g);
            if (!fresh) {
                if (it->second <= child_g) continue;
                it->second = child_g;
            }
            const double h = scorer.score(print_compact(t.result), variables(t.result), t.rule);
            const std::size_t id = nodes.size();
            nodes.push_back({std::move(t.result), std::move(t.text), static_cast<int>(top.node), t.rule, child_g, h});
            const SearchNode& n = nodes.back();
            if (n.key == goal) return finish(id, true);
            open.push({n.f(), n.h, seq, id});
            if (!best || OpenAfter{}({nodes[*best].f(), nodes[*best].h, best_seq, *best}, {n.f(), n.h, seq, id})) {
                best = id;
                best_seq = seq;
            }
            ++seq;
        }
    }
    return finish(best ? best : std::optional<std::size_t>(0), false);
}

Hint next_step_hint(const Expr& current, const Expr& target, HintLevel level, const HeuristicWeights& w,
                    const SearchConfig& cfg) {
    Hint hint;
    if (structural_eq(current, target)) {
        hint.at_target = true;
        hint.complete = true;
        return hint;
    }
    hint.proof = astar_solve(current, target, w, cfg);
    if (hint.proof->steps.empty()) throw NoStepAvailable();
    const ProofStep& first = hint.proof->steps.front();
    hint.rule = first.rule;
    if (level == HintLevel::Expression) hint.expr = first.expr;
    hint.complete = hint.proof->complete;
    return hint;
}

std::optional<std::size_t> find_invalid_step(const Proof& proof) {
    const Vocabulary vocab = question_vocabulary(proof.premise, proof.target);
    Expr current = proof.premise;
    for (std::size_t i = 0; i < proof.steps.size(); ++i) {
        Frontier f = frontier_gen(current, vocab);
        if (frontier_contains(f, proof.steps[i].rule, proof.steps[i].expr) != Membership::Hit) return i;
        current = proof.steps[i].expr;
    }
    if (proof.complete && !structural_eq(current, proof.target)) return proof.steps.size();
    return std::nullopt;
}

}  // namespace eqproof
