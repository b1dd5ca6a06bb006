#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "eqproof/rules.hpp"
#include "eqproof/truth.hpp"
#include "support/random_expr.hpp"

using namespace eqproof;

namespace {

Expr P(std::string_view s) { return normalize(parse(s)); }

bool produces(RuleId r, std::string_view source, std::string_view result, const Vocabulary& vocab) {
    const std::string want = print_canonical(P(result));
    for (const auto& t : apply_rule(r, P(source), vocab))
        if (t.text == want) return true;
    return false;
}

std::set<std::string> results(RuleId r, std::string_view source, const Vocabulary& vocab) {
    std::set<std::string> out;
    for (const auto& t : apply_rule(r, P(source), vocab)) out.insert(t.text);
    return out;
}

}  // namespace

TEST(RuleNames, MachineAndDisplayForms) {
    EXPECT_EQ(rule_name(RuleId::DeMorgan), "DeMorgan");
    EXPECT_EQ(rule_display_name(RuleId::DeMorgan), "De Morgan's Law");
    EXPECT_EQ(rule_display_name(RuleId::DoubleNegation), "Double Negation");
    for (RuleId r : kAllRules) {
        EXPECT_EQ(rule_from_name(rule_name(r)), r);
        EXPECT_EQ(rule_from_name(rule_display_name(r)), r);
    }
    EXPECT_FALSE(rule_from_name("ModusPonens").has_value());
}

TEST(RuleDirections, VariantCounts) {
    std::map<RuleId, std::size_t> expected = {
        {RuleId::Distributivity, 8},  {RuleId::ImplicationAsDisjunction, 2}, {RuleId::Negation, 4},
        {RuleId::IffAsImplication, 2}, {RuleId::DoubleNegation, 2},
    };
    std::size_t total = 0;
    for (RuleId r : kAllRules) {
        const auto dirs = rule_directions(r);
        const std::size_t want = expected.count(r) ? expected[r] : 4;
        EXPECT_EQ(dirs.size(), want) << rule_name(r);
        total += dirs.size();
        for (const auto& d : dirs) EXPECT_EQ(d.rule, r);
    }
    EXPECT_EQ(total, 46u);
}

TEST(RuleDirections, EveryVariantHasItsInverse) {
    for (RuleId r : kAllRules) {
        const auto dirs = rule_directions(r);
        for (const auto& d : dirs) {
            const bool inverse = std::any_of(dirs.begin(), dirs.end(), [&](const RuleDirection& o) {
                return o.direction != d.direction && o.lhs == d.rhs && o.rhs == d.lhs;
            });
            EXPECT_TRUE(inverse) << d.pattern;
        }
    }
}

TEST(RuleDirections, SameOperatorDistributivityIsListed) {
    std::set<std::string> patterns;
    for (const auto& d : rule_directions(RuleId::Distributivity)) patterns.insert(print_canonical(normalize(d.lhs)));
    EXPECT_TRUE(patterns.count("p∨q∨r"));
    EXPECT_TRUE(patterns.count("p∨q∨p∨r"));
    EXPECT_TRUE(patterns.count("p∧q∧r"));
    EXPECT_TRUE(patterns.count("p∧q∧p∧r"));
}

TEST(RuleDirections, SchemasAreSound) {
    for (RuleId r : kAllRules)
        for (const auto& d : rule_directions(r)) EXPECT_TRUE(equivalent(d.lhs, d.rhs)) << d.pattern;
}

TEST(RuleDirections, EachSchemaRewritesItsOwnInstance) {
    const Vocabulary vocab = {"p", "q", "r"};
    for (RuleId r : kAllRules)
        for (const auto& d : rule_directions(r))
            EXPECT_TRUE(produces(r, print_canonical(d.lhs), print_canonical(d.rhs), vocab)) << d.pattern;
}

TEST(ApplyRule, IdempotenceBothWays) {
    EXPECT_TRUE(produces(RuleId::Idempotence, "p∨q∨q", "p∨q", {"p", "q"}));
    EXPECT_TRUE(produces(RuleId::Idempotence, "p∨q", "p∨q∨q", {"p", "q"}));
}

TEST(ApplyRule, CommutativityDoesNotTouchImplication) {
    EXPECT_TRUE(apply_rule(RuleId::Commutativity, P("p→q"), {"p", "q"}).empty());
}

TEST(ApplyRule, DeMorganPush) { EXPECT_TRUE(produces(RuleId::DeMorgan, "¬(p∨q)", "¬p∧¬q", {"p", "q"})); }

TEST(ApplyRule, DeMorganOnLongChainSplitsOnce) {
    const auto got = results(RuleId::DeMorgan, "¬(p∨q∨r)", {"p", "q", "r"});
    EXPECT_TRUE(got.count("¬p∧¬(q∨r)"));
    EXPECT_TRUE(got.count("¬(p∨q)∧¬r"));
}

TEST(ApplyRule, CommutativityIsAdjacentTranspositions) {
    EXPECT_EQ(results(RuleId::Commutativity, "p∨q∨r∨s", {"p", "q", "r", "s"}),
              (std::set<std::string>{"q∨p∨r∨s", "p∨r∨q∨s", "p∨q∨s∨r"}));
    EXPECT_EQ(results(RuleId::Commutativity, "p∧q", {"p", "q"}), (std::set<std::string>{"q∧p"}));
}

TEST(ApplyRule, FreshAtomsComeFromVocabularyAndConstants) {
    EXPECT_TRUE(produces(RuleId::Domination, "T", "p∨T", {"p"}));
    EXPECT_TRUE(produces(RuleId::Domination, "F", "p∧F", {"p"}));
    EXPECT_EQ(results(RuleId::Absorption, "p", {"p", "q"}),
              (std::set<std::string>{"p∨p∧p", "p∨p∧q", "p∨p∧T", "p∨p∧F", "p∧(p∨p)", "p∧(p∨q)", "p∧(p∨T)",
                                     "p∧(p∨F)"}));
    // No variable outside the vocabulary appears.
    for (RuleId r : kAllRules)
        for (const auto& t : apply_rule(r, P("T∧¬p"), {"p", "q"}))
            for (const auto& name : variables(t.result)) EXPECT_TRUE(name == "p" || name == "q") << t.text;
}

TEST(ApplyRule, EmptyWhenNothingMatches) {
    EXPECT_EQ(apply_rule(RuleId::DoubleNegation, P("p"), {"p"}).size(), 1u);
    EXPECT_TRUE(apply_rule(RuleId::IffAsImplication, P("p∨q"), {"p", "q"}).empty());
    EXPECT_TRUE(apply_rule(RuleId::Distributivity, P("p"), {"p"}).empty());
}

TEST(ApplyRule, ImplicationAndIff) {
    EXPECT_TRUE(produces(RuleId::ImplicationAsDisjunction, "p→q", "¬p∨q", {"p", "q"}));
    EXPECT_TRUE(produces(RuleId::ImplicationAsDisjunction, "¬p∨q", "p→q", {"p", "q"}));
    EXPECT_TRUE(produces(RuleId::IffAsImplication, "p↔q", "(p→q)∧(q→p)", {"p", "q"}));
    EXPECT_TRUE(produces(RuleId::IffAsImplication, "(p→q)∧(q→p)", "p↔q", {"p", "q"}));
}

TEST(ApplyRule, Distributivity) {
    EXPECT_TRUE(produces(RuleId::Distributivity, "(p∨q)∧(p∨r)", "p∨q∧r", {"p", "q", "r"}));
    EXPECT_TRUE(produces(RuleId::Distributivity, "p∨q∧r", "(p∨q)∧(p∨r)", {"p", "q", "r"}));
    EXPECT_TRUE(produces(RuleId::Distributivity, "p∧(q∨r)", "p∧q∨p∧r", {"p", "q", "r"}));
    EXPECT_TRUE(produces(RuleId::Distributivity, "p∧q∨p∧r", "p∧(q∨r)", {"p", "q", "r"}));
}

TEST(ApplyRule, SitesAreValidSpans) {
    Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        const Expr e = normalize(testgen::random_expr(rng));
        const std::size_t n = token_count(e);
        for (RuleId r : kAllRules) {
            for (const auto& t : apply_rule(r, e, variables(e))) {
                EXPECT_LT(t.site.begin, t.site.end);
                EXPECT_LE(t.site.end, n);
                EXPECT_EQ(t.result, normalize(t.result));
                EXPECT_EQ(t.text, print_canonical(t.result));
            }
        }
    }
}

TEST(Property, TransformsAreSound) {
    Rng rng(41);
    for (int i = 0; i < 300; ++i) {
        const Expr e = normalize(testgen::random_expr(rng));
        for (RuleId r : kAllRules)
            for (const auto& t : apply_rule(r, e, variables(e)))
                ASSERT_TRUE(equivalent(e, t.result)) << rule_name(r) << ": " << print_canonical(e) << " => " << t.text;
    }
}

TEST(Property, EveryTransformIsUndoneBySameRule) {
    Rng rng(43);
    testgen::RandomExprOptions o;
    o.max_tokens = 15;
    int checked = 0;
    for (int i = 0; i < 150; ++i) {
        const Expr e = normalize(testgen::random_expr(rng, o));
        const Vocabulary vocab = variables(e);
        const std::string source = print_canonical(e);
        for (RuleId r : kAllRules) {
            const auto ts = apply_rule(r, e, vocab);
            // A sample per rule keeps the run short.
            for (std::size_t k = 0; k < ts.size(); k += 1 + ts.size() / 4) {
                const auto back = apply_rule(r, ts[k].result, vocab);
                const bool ok = std::any_of(back.begin(), back.end(), [&](const Transform& b) { return b.text == source; });
                ASSERT_TRUE(ok) << rule_name(r) << ": " << source << " => " << ts[k].text;
                ++checked;
            }
        }
    }
    EXPECT_GT(checked, 500);
}
