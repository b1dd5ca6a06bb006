#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqproof/expr.hpp"
#include "eqproof/rules.hpp"

namespace eqproof {

enum class Level { Novice, Learner, Expert };

std::string_view level_name(Level level);
std::optional<Level> level_from_name(std::string_view name);

/// Difficulty label for a generated question with an n-step witness.
Level level_for_steps(std::size_t n);

struct Question {
    std::string id;
    Level level = Level::Novice;
    Expr premise;
    Expr target;
    std::string origin;  // free-form provenance label, may be empty

    /// "Prove that ... is logically equivalent to ...", or "... is a
    /// Tautology" / "... is a Fallacy" for constant targets.
    std::string phrasing() const;
    Vocabulary vocabulary() const;
};

class BankFormatError : public std::runtime_error {
public:
    BankFormatError(std::size_t line, std::string id, const std::string& reason);
    std::size_t line() const { return line_; }
    const std::string& id() const { return id_; }

private:
    std::size_t line_;
    std::string id_;
};

class NonEquivalentQuestion : public std::runtime_error {
public:
    NonEquivalentQuestion(std::size_t line, std::string id);
    std::size_t line() const { return line_; }
    const std::string& id() const { return id_; }

private:
    std::size_t line_;
    std::string id_;
};

/// Bank files are JSON Lines: one object per question with string fields
/// "id", "level", "premise", "target" and an optional "origin". Blank lines
/// and lines starting with '#' are ignored. Any invalid entry rejects the
/// whole file.
std::vector<Question> parse_bank(std::istream& in);
std::vector<Question> load_bank(const std::filesystem::path& path);

void write_question(std::ostream& out, const Question& q);
void write_bank(std::ostream& out, std::span<const Question> questions);

class QuestionBank {
public:
    QuestionBank() = default;
    explicit QuestionBank(std::vector<Question> questions);

    /// Ordered by id.
    const std::vector<Question>& all() const { return questions_; }
    const Question* find(std::string_view id) const;
    std::vector<const Question*> by_level(Level level) const;

private:
    std::vector<Question> questions_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

}  // namespace eqproof
