#include "eqproof/expr.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace eqproof {

std::string_view token_kind_name(TokenKind kind) {
    switch (kind) {
        case TokenKind::Variable: return "variable";
        case TokenKind::ConstTrue: return "true";
        case TokenKind::ConstFalse: return "false";
        case TokenKind::Not: return "not";
        case TokenKind::And: return "and";
        case TokenKind::Or: return "or";
        case TokenKind::Implies: return "implies";
        case TokenKind::Iff: return "iff";
        case TokenKind::LParen: return "'('";
        case TokenKind::RParen: return "')'";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Expr

Expr Expr::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Var;
    n->name = std::move(name);
    return Expr(std::move(n));
}

Expr Expr::constant(bool value) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Const;
    n->value = value;
    return Expr(std::move(n));
}

Expr Expr::negate(Expr child) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Not;
    n->children.push_back(std::move(child));
    return Expr(std::move(n));
}

Expr Expr::chain(ChainOp op, std::vector<Expr> operands) {
    if (operands.size() < 2) throw std::invalid_argument("chain needs at least two operands");
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Chain;
    n->op = op;
    n->children = std::move(operands);
    return Expr(std::move(n));
}

Expr Expr::implies(Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Implies;
    n->children = {std::move(lhs), std::move(rhs)};
    return Expr(std::move(n));
}

Expr Expr::iff(Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>();
    n->kind = NodeKind::Iff;
    n->children = {std::move(lhs), std::move(rhs)};
    return Expr(std::move(n));
}

Expr Expr::with_span(TokenSpan span) const {
    auto n = std::make_shared<Node>(*node_);
    n->span = span;
    return Expr(std::move(n));
}

Expr Expr::with_children(std::vector<Expr> children) const {
    if (node_->kind == NodeKind::Chain && children.size() < 2)
        throw std::invalid_argument("chain needs at least two operands");
    auto n = std::make_shared<Node>();
    n->kind = node_->kind;
    n->op = node_->op;
    n->value = node_->value;
    n->name = node_->name;
    n->children = std::move(children);
    return Expr(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    const auto& x = *a.node_;
    const auto& y = *b.node_;
    if (x.kind != y.kind) return false;
    switch (x.kind) {
        case NodeKind::Var: return x.name == y.name;
        case NodeKind::Const: return x.value == y.value;
        case NodeKind::Chain:
            if (x.op != y.op) return false;
            break;
        default: break;
    }
    return x.children == y.children;
}

// ---------------------------------------------------------------------------
// Errors

namespace {

std::string join_expected(const std::vector<std::string>& expected) {
    std::string out;
    for (std::size_t i = 0; i < expected.size(); ++i) {
        if (i) out += i + 1 == expected.size() ? " or " : ", ";
        out += expected[i];
    }
    return out;
}

}  // namespace

LexError::LexError(std::size_t position, std::string offending)
    : SyntaxError(position, "unexpected character '" + offending + "' at offset " + std::to_string(position)),
      offending_(std::move(offending)) {}

ParseError::ParseError(std::size_t position, std::vector<std::string> expected, const std::string& found)
    : SyntaxError(position, "expected " + join_expected(expected) + " at offset " + std::to_string(position) +
                                ", found " + found),
      expected_(std::move(expected)) {}

// ---------------------------------------------------------------------------
// Lexer

namespace {

// Decodes one UTF-8 sequence at `i`, returning the code point and its byte width.
// Malformed bytes decode as themselves with width 1.
std::pair<char32_t, std::size_t> decode(std::string_view s, std::size_t i) {
    auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) return {b0, 1};
    std::size_t width = b0 >= 0xF0 ? 4 : b0 >= 0xE0 ? 3 : b0 >= 0xC0 ? 2 : 1;
    if (width == 1 || i + width > s.size()) return {b0, 1};
    char32_t cp = b0 & (0xFF >> (width + 1));
    for (std::size_t k = 1; k < width; ++k) {
        auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return {b0, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, width};
}

std::optional<TokenKind> glyph_kind(char32_t cp) {
    switch (cp) {
        case U'¬': case U'~': case U'!': return TokenKind::Not;
        case U'∧': case U'&': return TokenKind::And;
        case U'∨': case U'|': return TokenKind::Or;
        case U'→': return TokenKind::Implies;
        case U'↔': return TokenKind::Iff;
        case U'⊤': case U'1': return TokenKind::ConstTrue;
        case U'⊥': case U'0': return TokenKind::ConstFalse;
        case U'(': return TokenKind::LParen;
        case U')': return TokenKind::RParen;
        default: return std::nullopt;
    }
}

struct AsciiOperator {
    std::string_view text;
    TokenKind kind;
};

// Longest spellings first.
constexpr AsciiOperator kAsciiOperators[] = {
    {"<->", TokenKind::Iff}, {"<=>", TokenKind::Iff}, {"->", TokenKind::Implies},
    {"=>", TokenKind::Implies}, {"/\\", TokenKind::And}, {"\\/", TokenKind::Or},
};

std::optional<TokenKind> keyword_kind(std::string_view lower) {
    if (lower == "not") return TokenKind::Not;
    if (lower == "and") return TokenKind::And;
    if (lower == "or") return TokenKind::Or;
    if (lower == "t" || lower == "true") return TokenKind::ConstTrue;
    if (lower == "f" || lower == "false") return TokenKind::ConstFalse;
    return std::nullopt;
}

bool is_space(char32_t cp) { return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' || cp == U' '; }

bool is_word_start(char32_t cp) { return cp < 0x80 && std::isalpha(static_cast<int>(cp)); }
bool is_word_char(char32_t cp) { return cp < 0x80 && (std::isalnum(static_cast<int>(cp)) || cp == U'_'); }

}  // namespace

std::vector<Token> tokenize(std::string_view input) {
    std::vector<Token> tokens;
    std::size_t i = 0;     // byte index
    std::size_t pos = 0;   // character index
    while (i < input.size()) {
        auto [cp, width] = decode(input, i);
        if (is_space(cp)) {
            i += width;
            ++pos;
            continue;
        }

        bool matched = false;
        for (const auto& op : kAsciiOperators) {
            if (input.substr(i, op.text.size()) == op.text) {
                tokens.push_back({op.kind, std::string(op.text), pos, op.text.size()});
                i += op.text.size();
                pos += op.text.size();
                matched = true;
                break;
            }
        }
        if (matched) continue;

        if (auto kind = glyph_kind(cp)) {
            tokens.push_back({*kind, std::string(input.substr(i, width)), pos, 1});
            i += width;
            ++pos;
            continue;
        }

        if (is_word_start(cp)) {
            std::size_t j = i;
            while (j < input.size() && is_word_char(static_cast<unsigned char>(input[j]))) ++j;
            std::string word(input.substr(i, j - i));
            std::string lower = word;
            std::transform(lower.begin(), lower.end(), lower.begin(),
                           [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            if (auto kind = keyword_kind(lower)) {
                tokens.push_back({*kind, word, pos, word.size()});
            } else {
                // Variables are lowercase identifiers.
                auto upper = std::find_if(word.begin(), word.end(),
                                          [](unsigned char c) { return std::isupper(c) != 0; });
                if (upper != word.end()) {
                    auto off = static_cast<std::size_t>(upper - word.begin());
                    throw LexError(pos + off, std::string(1, *upper));
                }
                tokens.push_back({TokenKind::Variable, word, pos, word.size()});
            }
            pos += j - i;
            i = j;
            continue;
        }

        throw LexError(pos, std::string(input.substr(i, width)));
    }
    return tokens;
}

// ---------------------------------------------------------------------------
// Parser: recursive descent with one token of look-ahead.
//
//   iff     := implies ('↔' iff)?
//   implies := or ('→' implies)?
//   or      := and ('∨' and)*
//   and     := unary ('∧' unary)*
//   unary   := '¬' unary | atom
//   atom    := variable | constant | '(' iff ')'

namespace {

class Parser {
public:
    explicit Parser(std::span<const Token> tokens) : tokens_(tokens) {}

    Expr parse_all() {
        if (tokens_.empty()) fail({"expression"});
        Expr e = parse_iff();
        if (pos_ != tokens_.size()) fail({"operator", "end of input"});
        return e;
    }

private:
    bool peek(TokenKind kind) const { return pos_ < tokens_.size() && tokens_[pos_].kind == kind; }

    std::size_t offset() const {
        if (pos_ < tokens_.size()) return tokens_[pos_].position;
        if (tokens_.empty()) return 0;
        return tokens_.back().position + tokens_.back().length;
    }

    [[noreturn]] void fail(std::vector<std::string> expected) const {
        std::string found = pos_ < tokens_.size() ? "'" + tokens_[pos_].lexeme + "'" : "end of input";
        throw ParseError(offset(), std::move(expected), found);
    }

    Expr parse_iff() {
        std::size_t start = pos_;
        Expr lhs = parse_implies();
        if (!peek(TokenKind::Iff)) return lhs;
        ++pos_;
        Expr rhs = parse_iff();
        return Expr::iff(std::move(lhs), std::move(rhs)).with_span({start, pos_});
    }

    Expr parse_implies() {
        std::size_t start = pos_;
        Expr lhs = parse_chain(ChainOp::Or);
        if (!peek(TokenKind::Implies)) return lhs;
        ++pos_;
        Expr rhs = parse_implies();
        return Expr::implies(std::move(lhs), std::move(rhs)).with_span({start, pos_});
    }

    Expr parse_chain(ChainOp op) {
        const TokenKind sep = op == ChainOp::Or ? TokenKind::Or : TokenKind::And;
        auto operand = [&] { return op == ChainOp::Or ? parse_chain(ChainOp::And) : parse_unary(); };
        std::size_t start = pos_;
        Expr first = operand();
        if (!peek(sep)) return first;
        std::vector<Expr> items;
        auto push = [&](Expr e) {
            if (e.is_chain(op)) {
                for (const auto& c : e.children()) items.push_back(c);
            } else {
                items.push_back(std::move(e));
            }
        };
        push(std::move(first));
        while (peek(sep)) {
            ++pos_;
            push(operand());
        }
        return Expr::chain(op, std::move(items)).with_span({start, pos_});
    }

    Expr parse_unary() {
        if (!peek(TokenKind::Not)) return parse_atom();
        std::size_t start = pos_++;
        Expr child = parse_unary();
        return Expr::negate(std::move(child)).with_span({start, pos_});
    }

    Expr parse_atom() {
        if (pos_ >= tokens_.size()) fail({"expression"});
        const Token& t = tokens_[pos_];
        switch (t.kind) {
            case TokenKind::Variable:
                ++pos_;
                return Expr::var(t.lexeme).with_span({pos_ - 1, pos_});
            case TokenKind::ConstTrue:
            case TokenKind::ConstFalse:
                ++pos_;
                return Expr::constant(t.kind == TokenKind::ConstTrue).with_span({pos_ - 1, pos_});
            case TokenKind::LParen: {
                ++pos_;
                Expr inner = parse_iff();
                if (!peek(TokenKind::RParen)) fail({"')'"});
                ++pos_;
                return inner;
            }
            default:
                fail({"expression"});
        }
    }

    std::span<const Token> tokens_;
    std::size_t pos_ = 0;
};

}  // namespace

Expr parse(std::span<const Token> tokens) { return Parser(tokens).parse_all(); }

Expr parse(std::string_view input) {
    auto tokens = tokenize(input);
    return parse(tokens);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Iff: return 1;
        case NodeKind::Implies: return 2;
        case NodeKind::Chain: return e.op() == ChainOp::Or ? 3 : 4;
        case NodeKind::Not: return 5;
        default: return 6;
    }
}

struct Glyphs {
    std::string_view not_, and_, or_, implies, iff, t, f;
};

constexpr Glyphs kUnicode{"¬", "∧", "∨", "→", "↔", "T", "F"};
constexpr Glyphs kCompact{"~", "&", "|", ">", "=", "T", "F"};

void print_to(const Expr& e, const Glyphs& g, std::string& out) {
    auto operand = [&](std::size_t i) {
        const Expr& c = e.child(i);
        bool parens = needs_parens(e, i, c);
        if (parens) out += '(';
        print_to(c, g, out);
        if (parens) out += ')';
    };
    switch (e.kind()) {
        case NodeKind::Var: out += e.name(); break;
        case NodeKind::Const: out += e.value() ? g.t : g.f; break;
        case NodeKind::Not:
            out += g.not_;
            operand(0);
            break;
        case NodeKind::Chain:
            for (std::size_t i = 0; i < e.arity(); ++i) {
                if (i) out += e.op() == ChainOp::And ? g.and_ : g.or_;
                operand(i);
            }
            break;
        case NodeKind::Implies:
        case NodeKind::Iff:
            operand(0);
            out += e.is(NodeKind::Implies) ? g.implies : g.iff;
            operand(1);
            break;
    }
}

}  // namespace

bool needs_parens(const Expr& parent, std::size_t index, const Expr& child) {
    int p = precedence(child);
    switch (parent.kind()) {
        case NodeKind::Not: return p < 5;
        case NodeKind::Chain: return p <= precedence(parent);
        case NodeKind::Implies: return index == 0 ? p <= 2 : p < 2;
        case NodeKind::Iff: return index == 0 ? p <= 1 : false;
        default: return false;
    }
}

std::string print_canonical(const Expr& e) {
    std::string out;
    print_to(e, kUnicode, out);
    return out;
}

std::string print_compact(const Expr& e) {
    std::string out;
    print_to(e, kCompact, out);
    return out;
}

// ---------------------------------------------------------------------------
// Structure

Expr normalize(const Expr& e) {
    switch (e.kind()) {
        case NodeKind::Var:
        case NodeKind::Const: return e;
        case NodeKind::Chain: {
            std::vector<Expr> out;
            out.reserve(e.arity());
            bool changed = false;
            for (const auto& c : e.children()) {
                Expr n = normalize(c);
                if (n.is_chain(e.op())) {
                    for (const auto& g : n.children()) out.push_back(g);
                    changed = true;
                } else {
                    changed |= !n.same_node(c);
                    out.push_back(std::move(n));
                }
            }
            return changed ? Expr::chain(e.op(), std::move(out)) : e;
        }
        default: {
            std::vector<Expr> out;
            bool changed = false;
            for (const auto& c : e.children()) {
                out.push_back(normalize(c));
                changed |= !out.back().same_node(c);
            }
            return changed ? e.with_children(std::move(out)) : e;
        }
    }
}

bool structural_eq(const Expr& a, const Expr& b) { return normalize(a) == normalize(b); }

namespace {

void collect_variables(const Expr& e, std::set<std::string>& out) {
    if (e.is(NodeKind::Var)) {
        out.insert(e.name());
        return;
    }
    for (const auto& c : e.children()) collect_variables(c, out);
}

}  // namespace

std::set<std::string> variables(const Expr& e) {
    std::set<std::string> out;
    collect_variables(e, out);
    return out;
}

std::size_t token_count(const Expr& e) {
    std::size_t n = 0;
    switch (e.kind()) {
        case NodeKind::Var:
        case NodeKind::Const: return 1;
        case NodeKind::Not: n = 1; break;
        default: n = e.arity() - 1; break;
    }
    for (std::size_t i = 0; i < e.arity(); ++i)
        n += token_count(e.child(i)) + (needs_parens(e, i, e.child(i)) ? 2 : 0);
    return n;
}

Expr annotate(const Expr& e) { return parse(print_canonical(e)); }

std::vector<Expr> operands_of(ChainOp op, const Expr& e) {
    if (e.is_chain(op)) return {e.children().begin(), e.children().end()};
    return {e};
}

Expr join(ChainOp op, std::span<const Expr> items) {
    if (items.empty()) throw std::invalid_argument("join of an empty operand list");
    std::vector<Expr> out;
    out.reserve(items.size());
    for (const auto& it : items) {
        if (it.is_chain(op)) {
            for (const auto& c : it.children()) out.push_back(c);
        } else {
            out.push_back(it);
        }
    }
    if (out.size() == 1) return out.front();
    return Expr::chain(op, std::move(out));
}

Expr join(ChainOp op, std::initializer_list<Expr> items) {
    return join(op, std::span<const Expr>(items.begin(), items.size()));
}

}  // namespace eqproof
