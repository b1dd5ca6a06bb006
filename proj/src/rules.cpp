#include "eqproof/rules.hpp"

#include <algorithm>
#include <unordered_set>

namespace eqproof {

namespace {

constexpr std::array<std::string_view, kRuleCount> kMachineNames = {
    "Absorption", "Associativity", "Commutativity", "DeMorgan", "Distributivity", "Domination",
    "Idempotence", "Identity", "IffAsImplication", "ImplicationAsDisjunction", "Negation", "DoubleNegation",
};

constexpr std::array<std::string_view, kRuleCount> kDisplayNames = {
    "Absorption", "Associativity", "Commutativity", "De Morgan's Law", "Distributivity", "Domination",
    "Idempotence", "Identity", "Iff as Implication", "Implication as Disjunction", "Negation", "Double Negation",
};

}  // namespace

std::string_view rule_name(RuleId r) { return kMachineNames[static_cast<std::size_t>(r)]; }

std::string_view rule_display_name(RuleId r) { return kDisplayNames[static_cast<std::size_t>(r)]; }

std::optional<RuleId> rule_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kRuleCount; ++i)
        if (kMachineNames[i] == name || kDisplayNames[i] == name) return kAllRules[i];
    return std::nullopt;
}

// ---------------------------------------------------------------------------
// Local rewrites

namespace {

struct LocalRewrite {
    Expr replacement;  // replaces the visited node
    TokenSpan site;
};

struct Context {
    std::vector<Expr> atoms;  // vocabulary variables, then T, F
};

bool is_atom(const Expr& e) { return e.is(NodeKind::Var) || e.is(NodeKind::Const); }

std::vector<Expr> slice(std::span<const Expr> xs, std::size_t first, std::size_t last_exclusive) {
    return {xs.begin() + static_cast<std::ptrdiff_t>(first), xs.begin() + static_cast<std::ptrdiff_t>(last_exclusive)};
}

// Collects rewrites of one node. For chains, `range` replaces the contiguous
// operands [first, last] by a single expression.
class Sink {
public:
    Sink(const Expr& node, std::vector<LocalRewrite>& out) : node_(node), out_(out) {}

    void whole(Expr replacement) { out_.push_back({std::move(replacement), node_.span().value_or(TokenSpan{})}); }

    void range(std::size_t first, std::size_t last, Expr replacement) {
        const std::size_t n = node_.arity();
        TokenSpan site{outer(first).begin, outer(last).end};
        if (first == 0 && last + 1 == n) {
            out_.push_back({std::move(replacement), site});
            return;
        }
        std::vector<Expr> ops;
        ops.reserve(n - (last - first));
        for (std::size_t i = 0; i < first; ++i) ops.push_back(node_.child(i));
        ops.push_back(std::move(replacement));
        for (std::size_t i = last + 1; i < n; ++i) ops.push_back(node_.child(i));
        out_.push_back({join(node_.op(), ops), site});
    }

private:
    TokenSpan outer(std::size_t i) const {
        const Expr& c = node_.child(i);
        TokenSpan s = c.span().value_or(TokenSpan{});
        if (needs_parens(node_, i, c) && s.begin > 0) {
            --s.begin;
            ++s.end;
        }
        return s;
    }

    const Expr& node_;
    std::vector<LocalRewrite>& out_;
};

// Visits every site a single-expression pattern can match at this node: the
// node itself and, for chains, each proper contiguous run of >= 2 operands.
template <typename F>
void for_each_site(const Expr& node, Sink& out, F&& f) {
    f(node, [&](Expr r) { out.whole(std::move(r)); });
    if (!node.is(NodeKind::Chain)) return;
    const std::size_t n = node.arity();
    for (std::size_t len = 2; len < n; ++len) {
        for (std::size_t s = 0; s + len <= n; ++s) {
            Expr segment = Expr::chain(node.op(), slice(node.children(), s, s + len));
            f(segment, [&](Expr r) { out.range(s, s + len - 1, std::move(r)); });
        }
    }
}

constexpr ChainOp kOr = ChainOp::Or;
constexpr ChainOp kAnd = ChainOp::And;

// Constant that dominates an `op` chain: T for or, F for and.
constexpr bool dominator(ChainOp op) { return op == kOr; }
// Neutral element of an `op` chain: F for or, T for and.
constexpr bool neutral(ChainOp op) { return op == kAnd; }

using RewriteFn = void (*)(const Expr& node, const Context& ctx, Sink& out);

// -- Absorption: p∘(p•q) ≡ p, with q an atom.

template <ChainOp Op>
void absorb(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const Expr& y = x[i + 1];
        if (!y.is_chain(dual(Op)) || !is_atom(y.child(y.arity() - 1))) continue;
        const auto prefix = y.children().first(y.arity() - 1);
        for (std::size_t s = i + 1; s-- > 0;) {
            auto kept = slice(x, s, i + 1);
            Expr p = join(Op, kept);
            auto ps = operands_of(dual(Op), p);
            if (std::equal(ps.begin(), ps.end(), prefix.begin(), prefix.end())) out.range(s, i + 1, p);
        }
    }
}

template <ChainOp Op>
void unabsorb(const Expr& node, const Context& ctx, Sink& out) {
    for_each_site(node, out, [&](const Expr& p, auto emit) {
        for (const auto& q : ctx.atoms) emit(join(Op, {p, join(dual(Op), {p, q})}));
    });
}

// -- Associativity. Chains are kept flat, so regrouping normalizes back to
// the same chain; ungrouping only fires on unnormalized input.

template <ChainOp Op>
void regroup(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i].is_chain(Op)) {
            out.whole(join(Op, x));
            return;
        }
    }
    if (x.size() >= 3) out.range(0, 1, Expr::chain(Op, {x[0], x[1]}));
}

// -- Commutativity: adjacent transpositions.

template <ChainOp Op>
void commute(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) out.range(i, i + 1, Expr::chain(Op, {x[i + 1], x[i]}));
}

// -- De Morgan: ¬(p∘q) ≡ ¬p•¬q. Pushing splits the chain in two.

template <ChainOp Op>
void demorgan_push(const Expr& node, const Context&, Sink& out) {
    if (!node.is(NodeKind::Not) || !node.child(0).is_chain(Op)) return;
    const auto c = node.child(0).children();
    for (std::size_t k = 1; k < c.size(); ++k) {
        auto lhs = slice(c, 0, k);
        auto rhs = slice(c, k, c.size());
        out.whole(Expr::chain(dual(Op), {Expr::negate(join(Op, lhs)), Expr::negate(join(Op, rhs))}));
    }
}

template <ChainOp Op>
void demorgan_pull(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(dual(Op))) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (x[i].is(NodeKind::Not) && x[i + 1].is(NodeKind::Not))
            out.range(i, i + 1, Expr::negate(join(Op, {x[i].child(0), x[i + 1].child(0)})));
    }
}

// -- Distributivity: p∘(q•r) ≡ (p∘q)•(p∘r).

template <ChainOp Op>
void distribute(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const Expr& y = x[i + 1];
        if (!y.is_chain(dual(Op))) continue;
        const auto ys = y.children();
        for (std::size_t s = 0; s <= i; ++s) {
            for (std::size_t k = 1; k < ys.size(); ++k) {
                auto a = slice(x, s, i + 1);
                auto b = a;
                a.push_back(join(dual(Op), ys.first(k)));
                b.push_back(join(dual(Op), ys.subspan(k)));
                out.range(s, i + 1, Expr::chain(dual(Op), {join(Op, a), join(Op, b)}));
            }
        }
    }
}

template <ChainOp Op>
void factor(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(dual(Op))) return;
    const auto x = node.children();
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        if (!x[j].is_chain(Op) || !x[j + 1].is_chain(Op)) continue;
        const auto z1 = x[j].children();
        const auto z2 = x[j + 1].children();
        const std::size_t limit = std::min(z1.size(), z2.size());
        for (std::size_t len = 1; len < limit && z1[len - 1] == z2[len - 1]; ++len) {
            Expr q = join(Op, z1.subspan(len));
            Expr r = join(Op, z2.subspan(len));
            auto items = slice(z1, 0, len);
            items.push_back(join(dual(Op), {q, r}));
            out.range(j, j + 1, join(Op, items));
        }
    }
}

// p∘(q∘r) ≡ (p∘q)∘(p∘r); on flat chains: [p, q, r] <-> [p, q, p, r].
template <ChainOp Op>
void distribute_same(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 2 < x.size(); ++i)
        out.range(i, i + 2, Expr::chain(Op, {x[i], x[i + 1], x[i], x[i + 2]}));
}

template <ChainOp Op>
void factor_same(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 3 < x.size(); ++i)
        if (x[i] == x[i + 2]) out.range(i, i + 3, Expr::chain(Op, {x[i], x[i + 1], x[i + 3]}));
}

// -- Domination: p∨T ≡ T, p∧F ≡ F, with p an atom.

template <ChainOp Op>
void dominate(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (is_atom(x[i]) && x[i + 1].is_const(dominator(Op))) out.range(i, i + 1, Expr::constant(dominator(Op)));
}

template <ChainOp Op>
void undominate(const Expr& node, const Context& ctx, Sink& out) {
    if (!node.is_const(dominator(Op))) return;
    for (const auto& p : ctx.atoms) out.whole(Expr::chain(Op, {p, node}));
}

// -- Idempotence: p∘p ≡ p, where p may be a run of operands.

template <ChainOp Op>
void dedupe(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t k = 1; i + 2 * k <= x.size(); ++k) {
            if (std::equal(x.begin() + i, x.begin() + i + k, x.begin() + i + k))
                out.range(i, i + 2 * k - 1, join(Op, x.subspan(i, k)));
        }
    }
}

template <ChainOp Op>
void duplicate(const Expr& node, const Context&, Sink& out) {
    for_each_site(node, out, [](const Expr& p, auto emit) { emit(join(Op, {p, p})); });
}

// -- Identity: p∨F ≡ p, p∧T ≡ p.

template <ChainOp Op>
void drop_neutral(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 1; i < x.size(); ++i)
        if (x[i].is_const(neutral(Op))) out.range(i - 1, i, x[i - 1]);
}

template <ChainOp Op>
void add_neutral(const Expr& node, const Context&, Sink& out) {
    for_each_site(node, out, [](const Expr& p, auto emit) { emit(join(Op, {p, Expr::constant(neutral(Op))})); });
}

// -- Iff as Implication: p↔q ≡ (p→q)∧(q→p).

void iff_to_implications(const Expr& node, const Context&, Sink& out) {
    if (!node.is(NodeKind::Iff)) return;
    const Expr& a = node.child(0);
    const Expr& b = node.child(1);
    out.whole(Expr::chain(kAnd, {Expr::implies(a, b), Expr::implies(b, a)}));
}

void implications_to_iff(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(kAnd)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const Expr& l = x[i];
        const Expr& r = x[i + 1];
        if (l.is(NodeKind::Implies) && r.is(NodeKind::Implies) && l.child(0) == r.child(1) &&
            l.child(1) == r.child(0))
            out.range(i, i + 1, Expr::iff(l.child(0), l.child(1)));
    }
}

// -- Implication as Disjunction: p→q ≡ ¬p∨q.

void implication_to_disjunction(const Expr& node, const Context&, Sink& out) {
    if (!node.is(NodeKind::Implies)) return;
    out.whole(join(kOr, {Expr::negate(node.child(0)), node.child(1)}));
}

void disjunction_to_implication(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(kOr)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (!x[i].is(NodeKind::Not)) continue;
        for (std::size_t t = i + 1; t < x.size(); ++t)
            out.range(i, t, Expr::implies(x[i].child(0), join(kOr, x.subspan(i + 1, t - i))));
    }
}

// -- Negation: p∨¬p ≡ T, p∧¬p ≡ F, with p an atom.

template <ChainOp Op>
void cancel(const Expr& node, const Context&, Sink& out) {
    if (!node.is_chain(Op)) return;
    const auto x = node.children();
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        if (is_atom(x[i]) && x[i + 1].is(NodeKind::Not) && x[i + 1].child(0) == x[i])
            out.range(i, i + 1, Expr::constant(dominator(Op)));
    }
}

template <ChainOp Op>
void uncancel(const Expr& node, const Context& ctx, Sink& out) {
    if (!node.is_const(dominator(Op))) return;
    for (const auto& p : ctx.atoms) out.whole(Expr::chain(Op, {p, Expr::negate(p)}));
}

// -- Double Negation: ¬¬p ≡ p.

void drop_double_negation(const Expr& node, const Context&, Sink& out) {
    if (node.is(NodeKind::Not) && node.child(0).is(NodeKind::Not)) out.whole(node.child(0).child(0));
}

void add_double_negation(const Expr& node, const Context&, Sink& out) {
    for_each_site(node, out, [](const Expr& p, auto emit) { emit(Expr::negate(Expr::negate(p))); });
}

// ---------------------------------------------------------------------------
// Variant table

struct VariantSpec {
    RuleId rule;
    Direction direction;
    std::string_view lhs;
    std::string_view rhs;
    RewriteFn fn;
};

constexpr auto F = Direction::Forward;
constexpr auto R = Direction::Reverse;

// Forward rows read the equivalence left to right; reverse rows undo them.
const VariantSpec kVariants[] = {
    {RuleId::Absorption, F, "p∨(p∧q)", "p", absorb<kOr>},
    {RuleId::Absorption, R, "p", "p∨(p∧q)", unabsorb<kOr>},
    {RuleId::Absorption, F, "p∧(p∨q)", "p", absorb<kAnd>},
    {RuleId::Absorption, R, "p", "p∧(p∨q)", unabsorb<kAnd>},

    {RuleId::Associativity, F, "p∨(q∨r)", "(p∨q)∨r", regroup<kOr>},
    {RuleId::Associativity, R, "(p∨q)∨r", "p∨(q∨r)", regroup<kOr>},
    {RuleId::Associativity, F, "p∧(q∧r)", "(p∧q)∧r", regroup<kAnd>},
    {RuleId::Associativity, R, "(p∧q)∧r", "p∧(q∧r)", regroup<kAnd>},

    {RuleId::Commutativity, F, "p∨q", "q∨p", commute<kOr>},
    {RuleId::Commutativity, R, "q∨p", "p∨q", commute<kOr>},
    {RuleId::Commutativity, F, "p∧q", "q∧p", commute<kAnd>},
    {RuleId::Commutativity, R, "q∧p", "p∧q", commute<kAnd>},

    {RuleId::DeMorgan, F, "¬(p∨q)", "¬p∧¬q", demorgan_push<kOr>},
    {RuleId::DeMorgan, R, "¬p∧¬q", "¬(p∨q)", demorgan_pull<kOr>},
    {RuleId::DeMorgan, F, "¬(p∧q)", "¬p∨¬q", demorgan_push<kAnd>},
    {RuleId::DeMorgan, R, "¬p∨¬q", "¬(p∧q)", demorgan_pull<kAnd>},

    {RuleId::Distributivity, F, "p∨(q∧r)", "(p∨q)∧(p∨r)", distribute<kOr>},
    {RuleId::Distributivity, R, "(p∨q)∧(p∨r)", "p∨(q∧r)", factor<kOr>},
    {RuleId::Distributivity, F, "p∧(q∨r)", "(p∧q)∨(p∧r)", distribute<kAnd>},
    {RuleId::Distributivity, R, "(p∧q)∨(p∧r)", "p∧(q∨r)", factor<kAnd>},
    {RuleId::Distributivity, F, "p∨(q∨r)", "(p∨q)∨(p∨r)", distribute_same<kOr>},
    {RuleId::Distributivity, R, "(p∨q)∨(p∨r)", "p∨(q∨r)", factor_same<kOr>},
    {RuleId::Distributivity, F, "p∧(q∧r)", "(p∧q)∧(p∧r)", distribute_same<kAnd>},
    {RuleId::Distributivity, R, "(p∧q)∧(p∧r)", "p∧(q∧r)", factor_same<kAnd>},

    {RuleId::Domination, F, "p∨T", "T", dominate<kOr>},
    {RuleId::Domination, R, "T", "p∨T", undominate<kOr>},
    {RuleId::Domination, F, "p∧F", "F", dominate<kAnd>},
    {RuleId::Domination, R, "F", "p∧F", undominate<kAnd>},

    {RuleId::Idempotence, F, "p∨p", "p", dedupe<kOr>},
    {RuleId::Idempotence, R, "p", "p∨p", duplicate<kOr>},
    {RuleId::Idempotence, F, "p∧p", "p", dedupe<kAnd>},
    {RuleId::Idempotence, R, "p", "p∧p", duplicate<kAnd>},

    {RuleId::Identity, F, "p∨F", "p", drop_neutral<kOr>},
    {RuleId::Identity, R, "p", "p∨F", add_neutral<kOr>},
    {RuleId::Identity, F, "p∧T", "p", drop_neutral<kAnd>},
    {RuleId::Identity, R, "p", "p∧T", add_neutral<kAnd>},

    {RuleId::IffAsImplication, F, "p↔q", "(p→q)∧(q→p)", iff_to_implications},
    {RuleId::IffAsImplication, R, "(p→q)∧(q→p)", "p↔q", implications_to_iff},

    {RuleId::ImplicationAsDisjunction, F, "p→q", "¬p∨q", implication_to_disjunction},
    {RuleId::ImplicationAsDisjunction, R, "¬p∨q", "p→q", disjunction_to_implication},

    {RuleId::Negation, F, "p∨¬p", "T", cancel<kOr>},
    {RuleId::Negation, R, "T", "p∨¬p", uncancel<kOr>},
    {RuleId::Negation, F, "p∧¬p", "F", cancel<kAnd>},
    {RuleId::Negation, R, "F", "p∧¬p", uncancel<kAnd>},

    {RuleId::DoubleNegation, F, "¬¬p", "p", drop_double_negation},
    {RuleId::DoubleNegation, R, "p", "¬¬p", add_double_negation},
};

struct VariantTable {
    std::array<std::vector<RuleDirection>, kRuleCount> directions;
    std::array<std::vector<RewriteFn>, kRuleCount> functions;

    VariantTable() {
        for (const auto& v : kVariants) {
            auto idx = static_cast<std::size_t>(v.rule);
            std::string pattern = std::string(v.lhs) + " ⇒ " + std::string(v.rhs);
            // Schemas are written unflattened on purpose (Associativity).
            directions[idx].push_back({v.rule, std::move(pattern), v.direction, parse_raw(v.lhs), parse_raw(v.rhs)});
            functions[idx].push_back(v.fn);
        }
    }

    // Parses a schema keeping explicit grouping: parenthesized same-operator
    // chains are not spliced into their parent.
    static Expr parse_raw(std::string_view text) {
        auto tokens = tokenize(text);
        std::size_t pos = 0;
        return parse_group(tokens, pos);
    }

    static Expr parse_group(const std::vector<Token>& t, std::size_t& pos) {
        auto operand = [&]() -> Expr {
            if (t[pos].kind == TokenKind::Not) {
                ++pos;
                return Expr::negate(operand_unary(t, pos));
            }
            return operand_unary(t, pos);
        };
        Expr lhs = operand();
        if (pos >= t.size() || t[pos].kind == TokenKind::RParen) return lhs;
        TokenKind sep = t[pos].kind;
        std::vector<Expr> items{lhs};
        while (pos < t.size() && t[pos].kind == sep) {
            ++pos;
            items.push_back(operand());
        }
        switch (sep) {
            case TokenKind::And: return Expr::chain(kAnd, std::move(items));
            case TokenKind::Or: return Expr::chain(kOr, std::move(items));
            case TokenKind::Implies: return Expr::implies(items[0], items[1]);
            default: return Expr::iff(items[0], items[1]);
        }
    }

    static Expr operand_unary(const std::vector<Token>& t, std::size_t& pos) {
        const Token& tok = t[pos++];
        switch (tok.kind) {
            case TokenKind::Not: return Expr::negate(operand_unary(t, pos));
            case TokenKind::LParen: {
                Expr inner = parse_group(t, pos);
                ++pos;  // ')'
                return inner;
            }
            case TokenKind::ConstTrue: return Expr::constant(true);
            case TokenKind::ConstFalse: return Expr::constant(false);
            default: return Expr::var(tok.lexeme);
        }
    }
};

const VariantTable& table() {
    static const VariantTable t;
    return t;
}

// ---------------------------------------------------------------------------
// Traversal

// Re-attaches `child` as operand `index` of `parent`, flattening a chain into
// a same-operator parent so results stay normalized.
Expr attach(const Expr& parent, std::size_t index, const Expr& child) {
    std::vector<Expr> kids;
    const auto old = parent.children();
    if (parent.is(NodeKind::Chain) && child.is_chain(parent.op())) {
        kids.reserve(old.size() + child.arity() - 1);
        for (std::size_t j = 0; j < index; ++j) kids.push_back(old[j]);
        for (const auto& g : child.children()) kids.push_back(g);
        for (std::size_t j = index + 1; j < old.size(); ++j) kids.push_back(old[j]);
    } else {
        kids.assign(old.begin(), old.end());
        kids[index] = child;
    }
    return parent.with_children(std::move(kids));
}

Expr splice(const Expr& root, std::span<const std::size_t> path, const Expr& replacement) {
    if (path.empty()) return replacement;
    return attach(root, path[0], splice(root.child(path[0]), path.subspan(1), replacement));
}

std::size_t count_subtrees(const Expr& e) {
    std::size_t n = 1;
    for (const auto& c : e.children()) n += count_subtrees(c);
    return n;
}

class Traversal {
public:
    Traversal(const Expr& root, std::span<const RuleId> rules, const Vocabulary& vocab)
        : root_(root), rules_(rules) {
        for (const auto& v : vocab) ctx_.atoms.push_back(Expr::var(v));
        ctx_.atoms.push_back(Expr::constant(true));
        ctx_.atoms.push_back(Expr::constant(false));
    }

    std::vector<Transform> run(TraversalStats* stats) {
        std::vector<std::size_t> path;
        visit(root_, path);
        if (stats) {
            stats->subtrees_visited = visited_;
            stats->subtrees_total = count_subtrees(root_);
        }
        return std::move(out_);
    }

private:
    void visit(const Expr& node, std::vector<std::size_t>& path) {
        for (std::size_t i = 0; i < node.arity(); ++i) {
            path.push_back(i);
            visit(node.child(i), path);
            path.pop_back();
        }
        ++visited_;
        const auto& fns = table().functions;
        for (RuleId rule : rules_) {
            for (RewriteFn fn : fns[static_cast<std::size_t>(rule)]) {
                local_.clear();
                Sink sink(node, local_);
                fn(node, ctx_, sink);
                for (auto& lr : local_) emit(rule, path, lr);
            }
        }
    }

    void emit(RuleId rule, std::span<const std::size_t> path, const LocalRewrite& lr) {
        Expr result = splice(root_, path, lr.replacement);
        std::string text = print_canonical(result);
        std::string key;
        key.reserve(text.size() + 1);
        key.push_back(static_cast<char>('A' + static_cast<int>(rule)));
        key += text;
        if (!seen_.insert(std::move(key)).second) return;
        out_.push_back({root_, rule, lr.site, std::move(result), std::move(text)});
    }

    const Expr& root_;
    std::span<const RuleId> rules_;
    Context ctx_;
    std::vector<LocalRewrite> local_;
    std::unordered_set<std::string> seen_;
    std::vector<Transform> out_;
    std::size_t visited_ = 0;
};

}  // namespace

std::span<const RuleDirection> rule_directions(RuleId r) {
    return table().directions[static_cast<std::size_t>(r)];
}

std::vector<Transform> rewrite_everywhere(const Expr& e, std::span<const RuleId> rules, const Vocabulary& vocab,
                                          TraversalStats* stats) {
    Expr source = annotate(e);
    Traversal t(source, rules, vocab);
    return t.run(stats);
}

std::vector<Transform> apply_rule(RuleId r, const Expr& e, const Vocabulary& vocab) {
    const RuleId one[] = {r};
    return rewrite_everywhere(e, one, vocab);
}

}  // namespace eqproof
