#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eqproof {

enum class TokenKind {
    Variable,
    ConstTrue,
    ConstFalse,
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
};

std::string_view token_kind_name(TokenKind kind);

struct Token {
    TokenKind kind;
    std::string lexeme;
    std::size_t position;  // character (code point) offset into the input
    std::size_t length;    // lexeme length in characters
};

/// Half-open range [begin, end) of token indices.
struct TokenSpan {
    std::size_t begin = 0;
    std::size_t end = 0;

    bool operator==(const TokenSpan&) const = default;
};

enum class NodeKind { Var, Const, Not, Chain, Implies, Iff };
enum class ChainOp { And, Or };

inline ChainOp dual(ChainOp op) { return op == ChainOp::And ? ChainOp::Or : ChainOp::And; }

/// Immutable Boolean expression tree. Copies share structure.
///
/// `and`/`or` are n-ary Chain nodes. Trees produced by parse() and normalize()
/// are maximally flattened: a Chain never has a direct child Chain with the
/// same operator.
class Expr {
public:
    static Expr var(std::string name);
    static Expr constant(bool value);
    static Expr negate(Expr child);
    /// Raw chain constructor; does not flatten. Requires at least two operands.
    static Expr chain(ChainOp op, std::vector<Expr> operands);
    static Expr implies(Expr lhs, Expr rhs);
    static Expr iff(Expr lhs, Expr rhs);

    NodeKind kind() const { return node_->kind; }
    bool is(NodeKind k) const { return node_->kind == k; }
    bool is_chain(ChainOp op) const { return node_->kind == NodeKind::Chain && node_->op == op; }
    bool is_const(bool value) const { return node_->kind == NodeKind::Const && node_->value == value; }

    const std::string& name() const { return node_->name; }
    bool value() const { return node_->value; }
    ChainOp op() const { return node_->op; }

    std::span<const Expr> children() const { return node_->children; }
    const Expr& child(std::size_t i) const { return node_->children[i]; }
    std::size_t arity() const { return node_->children.size(); }

    const std::optional<TokenSpan>& span() const { return node_->span; }
    Expr with_span(TokenSpan span) const;

    /// Same kind, payload and children, children replaced.
    Expr with_children(std::vector<Expr> children) const;

    /// Structural identity of the trees as stored (spans ignored, no normalization).
    friend bool operator==(const Expr& a, const Expr& b);

    bool same_node(const Expr& other) const { return node_ == other.node_; }

private:
    struct Node {
        NodeKind kind = NodeKind::Var;
        ChainOp op = ChainOp::And;
        bool value = false;
        std::string name;
        std::vector<Expr> children;
        std::optional<TokenSpan> span;
    };

    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

/// Base for lexical and grammatical errors; position is a character offset.
class SyntaxError : public std::runtime_error {
public:
    SyntaxError(std::size_t position, const std::string& message)
        : std::runtime_error(message), position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

class LexError : public SyntaxError {
public:
    LexError(std::size_t position, std::string offending);
    const std::string& offending() const { return offending_; }

private:
    std::string offending_;
};

class ParseError : public SyntaxError {
public:
    ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found);
    const std::vector<std::string>& expected() const { return expected_; }

private:
    std::vector<std::string> expected_;
};

std::vector<Token> tokenize(std::string_view input);

/// Precedence (tightest first): not, and, or, implies, iff. Implication and
/// biconditional associate to the right; and/or sequences become flat chains.
Expr parse(std::span<const Token> tokens);
Expr parse(std::string_view input);

/// Canonical Unicode rendering with no spaces and minimal parentheses.
std::string print_canonical(const Expr& e);

/// Same layout as print_canonical but one ASCII byte per glyph, so byte
/// lengths and edit distances equal their character counterparts.
std::string print_compact(const Expr& e);

/// Flattens nested same-operator chains; no logical simplification.
Expr normalize(const Expr& e);

bool structural_eq(const Expr& a, const Expr& b);

std::set<std::string> variables(const Expr& e);

/// Counts tokens of the canonical rendering.
std::size_t token_count(const Expr& e);

/// Re-derives spans by parsing the canonical rendering of `e`.
Expr annotate(const Expr& e);

/// True when `child`, placed as operand `index` of `parent`, is printed in
/// parentheses.
bool needs_parens(const Expr& parent, std::size_t index, const Expr& child);

// Chain helpers shared by the rule engine and the generators.

/// Operands of `e` viewed as an `op` chain: its children if it is one, else {e}.
std::vector<Expr> operands_of(ChainOp op, const Expr& e);

/// Builds an `op` chain over `items`, splicing items that are `op` chains.
/// A single item is returned as-is. Requires a nonempty list.
Expr join(ChainOp op, std::span<const Expr> items);
Expr join(ChainOp op, std::initializer_list<Expr> items);

}  // namespace eqproof
