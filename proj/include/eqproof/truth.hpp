#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>

#include "eqproof/expr.hpp"

namespace eqproof {

using Assignment = std::map<std::string, bool>;

class UnboundVariable : public std::runtime_error {
public:
    explicit UnboundVariable(const std::string& name)
        : std::runtime_error("unbound variable '" + name + "'"), name_(name) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

class TooManyVariables : public std::runtime_error {
public:
    explicit TooManyVariables(std::size_t count)
        : std::runtime_error("truth table over " + std::to_string(count) + " variables exceeds the limit"),
          count_(count) {}
    std::size_t count() const { return count_; }

private:
    std::size_t count_;
};

inline constexpr std::size_t kMaxTruthTableVariables = 20;

bool evaluate(const Expr& e, const Assignment& a);

/// Brute-force comparison over all assignments of the union variable set.
bool equivalent(const Expr& a, const Expr& b);

enum class Classification { Tautology, Fallacy, Contingent };

Classification classify(const Expr& e);

std::string_view classification_name(Classification c);

}  // namespace eqproof
