#include <gtest/gtest.h>

#include "eqproof/truth.hpp"
#include "support/random_expr.hpp"

using namespace eqproof;

namespace {

Expr P(std::string_view s) { return parse(s); }

// Equivalence by enumerating assignments through evaluate(), independent of
// the compiled fast path inside equivalent().
bool slow_equivalent(const Expr& a, const Expr& b) {
    auto vars = variables(a);
    vars.merge(variables(b));
    std::vector<std::string> names(vars.begin(), vars.end());
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << names.size()); ++m) {
        Assignment asg;
        for (std::size_t i = 0; i < names.size(); ++i) asg[names[i]] = (m >> i) & 1;
        if (evaluate(a, asg) != evaluate(b, asg)) return false;
    }
    return true;
}

}  // namespace

TEST(Evaluate, Examples) {
    EXPECT_TRUE(evaluate(P("p∨¬p"), {{"p", false}}));
    EXPECT_FALSE(evaluate(P("p→q"), {{"p", true}, {"q", false}}));
    EXPECT_FALSE(evaluate(P("p∧F"), {{"p", true}}));
    EXPECT_FALSE(evaluate(P("p∧F"), {{"p", false}}));
    EXPECT_TRUE(evaluate(P("p↔q"), {{"p", false}, {"q", false}}));
    EXPECT_FALSE(evaluate(P("p↔q"), {{"p", true}, {"q", false}}));
}

TEST(Evaluate, UnboundVariable) {
    try {
        evaluate(P("p∧q"), {{"p", true}});
        FAIL();
    } catch (const UnboundVariable& e) {
        EXPECT_EQ(e.name(), "q");
    }
}

TEST(Equivalent, Examples) {
    EXPECT_TRUE(equivalent(P("¬(p∨q)"), P("¬p∧¬q")));
    EXPECT_FALSE(equivalent(P("p"), P("q")));
    EXPECT_TRUE(equivalent(P("p∨(q∧r)"), P("(p∨q)∧(p∨r)")));
    EXPECT_TRUE(equivalent(P("p∨¬p"), P("T")));
    EXPECT_TRUE(equivalent(P("T"), P("¬F")));
}

TEST(Equivalent, VariableGuard) {
    std::string wide = "a0";
    for (int i = 1; i <= 20; ++i) wide += "∨a" + std::to_string(i);
    EXPECT_THROW(equivalent(P(wide), P("a0")), TooManyVariables);
    std::string ok = "a0";
    for (int i = 1; i < 20; ++i) ok += "∨a" + std::to_string(i);
    EXPECT_TRUE(equivalent(P(ok), P(ok)));
}

TEST(Classify, Examples) {
    EXPECT_EQ(classify(P("p∨¬p")), Classification::Tautology);
    EXPECT_EQ(classify(P("p∧¬p")), Classification::Fallacy);
    EXPECT_EQ(classify(P("p∨q")), Classification::Contingent);
    EXPECT_EQ(classification_name(Classification::Tautology), "tautology");
}

TEST(Property, FastPathAgreesWithEvaluate) {
    Rng rng(5);
    testgen::RandomExprOptions o;
    o.max_vars = 4;
    o.max_tokens = 18;
    int same = 0;
    for (int i = 0; i < 600; ++i) {
        const Expr a = testgen::random_expr(rng, o);
        const Expr b = testgen::random_expr(rng, o);
        const bool fast = equivalent(a, b);
        ASSERT_EQ(fast, slow_equivalent(a, b)) << print_canonical(a) << " vs " << print_canonical(b);
        same += fast;
    }
    // Small vocabularies make some random pairs equivalent; make sure both
    // outcomes were exercised.
    EXPECT_GT(same, 0);
}

TEST(Property, EquivalenceRelation) {
    Rng rng(17);
    testgen::RandomExprOptions o;
    o.max_vars = 2;
    o.max_tokens = 10;
    std::vector<Expr> pool;
    for (int i = 0; i < 60; ++i) pool.push_back(testgen::random_expr(rng, o));
    for (const auto& a : pool) {
        ASSERT_TRUE(equivalent(a, a));
        for (const auto& b : pool) {
            const bool ab = equivalent(a, b);
            ASSERT_EQ(ab, equivalent(b, a));
            if (!ab) continue;
            for (const auto& c : pool)
                if (equivalent(b, c)) {
                    ASSERT_TRUE(equivalent(a, c));
                }
        }
    }
}
