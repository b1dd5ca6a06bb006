#include "eqproof/truth.hpp"

#include <cstdint>
#include <vector>

namespace eqproof {

bool evaluate(const Expr& e, const Assignment& a) {
    switch (e.kind()) {
        case NodeKind::Var: {
            auto it = a.find(e.name());
            if (it == a.end()) throw UnboundVariable(e.name());
            return it->second;
        }
        case NodeKind::Const: return e.value();
        case NodeKind::Not: return !evaluate(e.child(0), a);
        case NodeKind::Chain:
            if (e.op() == ChainOp::And) {
                for (const auto& c : e.children())
                    if (!evaluate(c, a)) return false;
                return true;
            }
            for (const auto& c : e.children())
                if (evaluate(c, a)) return true;
            return false;
        case NodeKind::Implies: return !evaluate(e.child(0), a) || evaluate(e.child(1), a);
        case NodeKind::Iff: return evaluate(e.child(0), a) == evaluate(e.child(1), a);
    }
    return false;
}

namespace {

// Flat postfix program over variable bit indices; avoids map lookups in the
// 2^n enumeration loop.
struct Program {
    enum class Op : std::uint8_t { Var, True, False, Not, And, Or, Implies, Iff };
    struct Instr {
        Op op;
        std::uint32_t arg;  // variable bit, or operand count for And/Or
    };
    std::vector<Instr> code;

    void compile(const Expr& e, const std::map<std::string, std::uint32_t>& index) {
        switch (e.kind()) {
            case NodeKind::Var: code.push_back({Op::Var, index.at(e.name())}); return;
            case NodeKind::Const: code.push_back({e.value() ? Op::True : Op::False, 0}); return;
            case NodeKind::Not:
                compile(e.child(0), index);
                code.push_back({Op::Not, 0});
                return;
            case NodeKind::Chain:
                for (const auto& c : e.children()) compile(c, index);
                code.push_back({e.op() == ChainOp::And ? Op::And : Op::Or,
                                static_cast<std::uint32_t>(e.arity())});
                return;
            case NodeKind::Implies:
            case NodeKind::Iff:
                compile(e.child(0), index);
                compile(e.child(1), index);
                code.push_back({e.is(NodeKind::Implies) ? Op::Implies : Op::Iff, 0});
                return;
        }
    }

    bool run(std::uint32_t bits, std::vector<bool>& stack) const {
        stack.clear();
        for (const auto& in : code) {
            switch (in.op) {
                case Op::Var: stack.push_back(((bits >> in.arg) & 1U) != 0); break;
                case Op::True: stack.push_back(true); break;
                case Op::False: stack.push_back(false); break;
                case Op::Not: stack.back() = !stack.back(); break;
                case Op::And:
                case Op::Or: {
                    bool acc = in.op == Op::And;
                    for (std::uint32_t k = 0; k < in.arg; ++k) {
                        bool v = stack.back();
                        stack.pop_back();
                        acc = in.op == Op::And ? (acc && v) : (acc || v);
                    }
                    stack.push_back(acc);
                    break;
                }
                case Op::Implies:
                case Op::Iff: {
                    bool rhs = stack.back();
                    stack.pop_back();
                    bool lhs = stack.back();
                    stack.back() = in.op == Op::Implies ? (!lhs || rhs) : (lhs == rhs);
                    break;
                }
            }
        }
        return stack.back();
    }
};

}  // namespace

bool equivalent(const Expr& a, const Expr& b) {
    auto vars = variables(a);
    vars.merge(variables(b));
    if (vars.size() > kMaxTruthTableVariables) throw TooManyVariables(vars.size());

    std::map<std::string, std::uint32_t> index;
    for (const auto& v : vars) index.emplace(v, static_cast<std::uint32_t>(index.size()));

    Program pa, pb;
    pa.compile(a, index);
    pb.compile(b, index);

    std::vector<bool> stack;
    const std::uint32_t rows = 1U << vars.size();
    for (std::uint32_t bits = 0; bits < rows; ++bits)
        if (pa.run(bits, stack) != pb.run(bits, stack)) return false;
    return true;
}

Classification classify(const Expr& e) {
    if (equivalent(e, Expr::constant(true))) return Classification::Tautology;
    if (equivalent(e, Expr::constant(false))) return Classification::Fallacy;
    return Classification::Contingent;
}

std::string_view classification_name(Classification c) {
    switch (c) {
        case Classification::Tautology: return "tautology";
        case Classification::Fallacy: return "fallacy";
        case Classification::Contingent: return "contingent";
    }
    return "?";
}

}  // namespace eqproof
