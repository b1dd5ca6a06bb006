#include <gtest/gtest.h>

#include <fstream>
#include <functional>
#include <map>

#include <nlohmann/json.hpp>

#include "eqproof/frontier.hpp"
#include "eqproof/truth.hpp"
#include "support/random_expr.hpp"

using namespace eqproof;

namespace {

Expr P(std::string_view s) { return normalize(parse(s)); }

using Plug = std::function<Expr(const Expr&)>;

// Calls f(site, plug) for every subtree and every proper contiguous chain
// segment of length >= 2; plug(x) rebuilds the whole expression with the
// site replaced by x, normalized.
void for_each_site(const Expr& e, const Plug& outer, const std::function<void(const Expr&, const Plug&)>& f) {
    f(e, outer);
    if (e.is(NodeKind::Chain)) {
        const auto ops = e.children();
        const std::size_t n = ops.size();
        for (std::size_t len = 2; len < n; ++len) {
            for (std::size_t s = 0; s + len <= n; ++s) {
                std::vector<Expr> seg(ops.begin() + s, ops.begin() + s + len);
                Plug plug = [=, &outer](const Expr& x) {
                    std::vector<Expr> rebuilt(ops.begin(), ops.begin() + s);
                    rebuilt.push_back(x);
                    rebuilt.insert(rebuilt.end(), ops.begin() + s + len, ops.end());
                    return outer(normalize(Expr::chain(e.op(), rebuilt)));
                };
                f(Expr::chain(e.op(), seg), plug);
            }
        }
    }
    for (std::size_t i = 0; i < e.arity(); ++i) {
        Plug plug = [&, i](const Expr& x) {
            std::vector<Expr> kids(e.children().begin(), e.children().end());
            kids[i] = x;
            return outer(normalize(e.with_children(kids)));
        };
        for_each_site(e.child(i), plug, f);
    }
}

std::set<std::string> oracle(RuleId r, const Expr& e) {
    std::set<std::string> out;
    auto add = [&](const Plug& plug, const Expr& x) { out.insert(print_canonical(normalize(plug(x)))); };
    const Plug root = [](const Expr& x) { return x; };
    for_each_site(e, root, [&](const Expr& site, const Plug& plug) {
        switch (r) {
            case RuleId::DoubleNegation:
                add(plug, Expr::negate(Expr::negate(site)));
                if (site.is(NodeKind::Not) && site.child(0).is(NodeKind::Not)) add(plug, site.child(0).child(0));
                break;
            case RuleId::Commutativity:
                if (site.is(NodeKind::Chain) && site.arity() == 2)
                    add(plug, Expr::chain(site.op(), {site.child(1), site.child(0)}));
                break;
            case RuleId::Idempotence:
                for (ChainOp op : {ChainOp::Or, ChainOp::And}) add(plug, join(op, {site, site}));
                if (site.is(NodeKind::Chain) && site.arity() % 2 == 0) {
                    const auto ops = site.children();
                    const std::size_t h = ops.size() / 2;
                    if (std::equal(ops.begin(), ops.begin() + h, ops.begin() + h))
                        add(plug, join(site.op(), std::vector<Expr>(ops.begin(), ops.begin() + h)));
                }
                break;
            case RuleId::Identity:
                add(plug, join(ChainOp::Or, {site, Expr::constant(false)}));
                add(plug, join(ChainOp::And, {site, Expr::constant(true)}));
                if (site.is(NodeKind::Chain) && site.children().back().is_const(site.op() == ChainOp::And)) {
                    const auto ops = site.children();
                    add(plug, join(site.op(), std::vector<Expr>(ops.begin(), ops.end() - 1)));
                }
                break;
            default: break;
        }
    });
    return out;
}

std::set<std::string> engine(RuleId r, const Expr& e) {
    std::set<std::string> out;
    for (const auto& t : apply_rule(r, e, variables(e))) out.insert(t.text);
    return out;
}

using Pair = std::pair<std::string, std::string>;

std::set<Pair> pairs(const std::vector<Transform>& ts) {
    std::set<Pair> out;
    for (const auto& t : ts) out.emplace(rule_name(t.rule), t.text);
    return out;
}

std::size_t node_count(const Expr& e) {
    std::size_t n = 1;
    for (const auto& c : e.children()) n += node_count(c);
    return n;
}

}  // namespace

TEST(Frontier, IdempotenceContraction) {
    const Frontier f = frontier_gen(P("p∨p"), {"p"});
    EXPECT_EQ(frontier_contains(f, RuleId::Idempotence, P("p")), Membership::Hit);
}

TEST(Frontier, DominationExpansionOfConstant) {
    const Frontier f = frontier_gen(P("T"), {"p"});
    EXPECT_EQ(frontier_contains(f, RuleId::Domination, P("p∨T")), Membership::Hit);
}

TEST(Frontier, ContainsVerdicts) {
    const Frontier f = frontier_gen(P("p∨q∨q"), {"p", "q"});
    EXPECT_EQ(frontier_contains(f, RuleId::Idempotence, P("p∨q")), Membership::Hit);
    EXPECT_EQ(frontier_contains(f, RuleId::Commutativity, P("p∨q")), Membership::RuleMismatch);
    EXPECT_EQ(frontier_contains(frontier_gen(P("p"), {"p", "q"}), RuleId::Identity, P("q∧T")), Membership::Miss);
}

TEST(Frontier, ContainsNormalizesCandidate) {
    const Frontier f = frontier_gen(P("p∨q"), {"p", "q"});
    const Expr nested = Expr::chain(ChainOp::Or, {Expr::var("p"), Expr::chain(ChainOp::Or, {Expr::var("q"), Expr::var("q")})});
    EXPECT_EQ(frontier_contains(f, RuleId::Idempotence, nested), Membership::Hit);
}

TEST(Frontier, GoldenSetForNegatedConjunction) {
    std::ifstream in(std::string(EQPROOF_GOLDEN_DIR) + "/frontier_negated_conjunction.json");
    ASSERT_TRUE(in);
    const auto golden = nlohmann::json::parse(in);
    const Expr source = P(golden["source"].get<std::string>());
    Vocabulary vocab;
    for (const auto& v : golden["vocab"]) vocab.insert(v.get<std::string>());

    std::set<Pair> expected;
    for (const auto& entry : golden["entries"]) {
        const Pair p{entry[0].get<std::string>(), entry[1].get<std::string>()};
        // Every recorded member is checked against the truth table.
        ASSERT_TRUE(equivalent(source, P(p.second))) << p.second;
        expected.insert(p);
    }
    EXPECT_EQ(pairs(frontier_gen(source, vocab).entries), expected);

    // Hand-derived members.
    for (const Pair& p : std::vector<Pair>{{"DeMorgan", "¬p∨¬¬q∨q"},
                                           {"ImplicationAsDisjunction", "p∧¬q→q"},
                                           {"Commutativity", "q∨¬(p∧¬q)"},
                                           {"Commutativity", "¬(¬q∧p)∨q"},
                                           {"DoubleNegation", "¬¬(¬(p∧¬q)∨q)"},
                                           {"DoubleNegation", "¬(p∧¬q)∨¬¬q"},
                                           {"Idempotence", "¬(p∧¬q)∨q∨q"},
                                           {"Identity", "¬(p∧¬q)∨q∨F"}})
        EXPECT_TRUE(expected.count(p)) << p.first << " " << p.second;

    // The oracle-enumerable rules agree with an independent enumeration.
    for (RuleId r : {RuleId::DoubleNegation, RuleId::Commutativity, RuleId::Idempotence, RuleId::Identity}) {
        std::set<std::string> listed;
        for (const auto& [rule, text] : expected)
            if (rule == rule_name(r)) listed.insert(text);
        EXPECT_EQ(listed, oracle(r, source)) << rule_name(r);
    }
}

TEST(Property, SimpleRulesMatchIndependentEnumeration) {
    Rng rng(2024);
    testgen::RandomExprOptions o;
    o.max_tokens = 20;
    for (int i = 0; i < 300; ++i) {
        const Expr e = normalize(testgen::random_expr(rng, o));
        for (RuleId r : {RuleId::DoubleNegation, RuleId::Commutativity, RuleId::Idempotence, RuleId::Identity})
            ASSERT_EQ(engine(r, e), oracle(r, e)) << rule_name(r) << " on " << print_canonical(e);
    }
}

TEST(Property, FrontierIsUnionOfRules) {
    Rng rng(8);
    for (int i = 0; i < 200; ++i) {
        const Expr e = normalize(testgen::random_expr(rng));
        const Vocabulary vocab = variables(e);
        std::set<Pair> uni;
        for (RuleId r : kAllRules) {
            auto part = pairs(apply_rule(r, e, vocab));
            uni.insert(part.begin(), part.end());
        }
        const auto f = frontier_gen(e, vocab);
        EXPECT_EQ(pairs(f.entries), uni);
        EXPECT_EQ(f.entries.size(), uni.size()) << "duplicate (rule, result) pair";
    }
}

TEST(Property, EverySubtreeVisitedOnce) {
    Rng rng(12);
    for (int i = 0; i < 200; ++i) {
        const Expr e = normalize(testgen::random_expr(rng));
        TraversalStats stats;
        frontier_gen(e, variables(e), &stats);
        EXPECT_EQ(stats.subtrees_visited, node_count(e));
        EXPECT_EQ(stats.subtrees_total, node_count(e));
    }
}

TEST(Property, FrontierMembersAreEquivalent) {
    Rng rng(13);
    for (int i = 0; i < 200; ++i) {
        const Expr e = normalize(testgen::random_expr(rng));
        for (const auto& t : frontier_gen(e, variables(e)).entries)
            ASSERT_TRUE(equivalent(e, t.result)) << print_canonical(e) << " => " << t.text;
    }
}

// Entries per token should not grow with expression size for a fixed
// vocabulary. Compare small and large random expressions.
TEST(Property, FrontierSizeGrowsLinearly) {
    Rng rng(21);
    const Vocabulary vocab = {"p", "q", "r"};
    testgen::RandomExprOptions o;
    o.max_vars = 3;
    o.max_tokens = 80;
    o.max_depth = 8;
    double small_ratio = 0, large_ratio = 0;
    int small_n = 0, large_n = 0;
    for (int i = 0; i < 600; ++i) {
        const Expr e = normalize(testgen::random_expr(rng, o));
        const std::size_t tokens = token_count(e);
        const double ratio = static_cast<double>(frontier_gen(e, vocab).entries.size()) / static_cast<double>(tokens);
        if (tokens >= 5 && tokens <= 15) {
            small_ratio += ratio;
            ++small_n;
        } else if (tokens >= 40) {
            large_ratio += ratio;
            ++large_n;
        }
    }
    ASSERT_GT(small_n, 20);
    ASSERT_GT(large_n, 20);
    small_ratio /= small_n;
    large_ratio /= large_n;
    RecordProperty("small_ratio", std::to_string(small_ratio));
    RecordProperty("large_ratio", std::to_string(large_ratio));
    EXPECT_LT(large_ratio, 2.0 * small_ratio) << "small " << small_ratio << " large " << large_ratio;
}
