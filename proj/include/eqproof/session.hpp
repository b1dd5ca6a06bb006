#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "eqproof/bank.hpp"
#include "eqproof/search.hpp"

namespace eqproof {

enum class Status { Untouched, InProgress, Completed };
std::string_view status_name(Status s);

/// Internal verdicts. Students only ever see valid / invalid / syntax_error /
/// already_complete; rule_mismatch and not_entailed both read as invalid.
enum class Verdict { Valid, SyntaxError, RuleMismatch, NotEntailed, AlreadyComplete };
std::string_view verdict_name(Verdict v);
std::string_view public_verdict_name(Verdict v);

struct StepRecord {
    std::string rule;        // machine rule name
    std::string expression;  // as typed
    Verdict verdict;
};

struct HintCounts {
    std::uint64_t rule_hints = 0;
    std::uint64_t expression_hints = 0;
    std::uint64_t full_solutions = 0;
};

struct AttemptState {
    Status status = Status::Untouched;
    std::string current;  // canonical text of the current expression, empty before the first step
    std::vector<StepRecord> history;
    HintCounts hints;
    int hint_level = 0;  // highest hint level shown at the current expression
    bool via_solution = false;
    std::int64_t started_at = 0;
    std::int64_t updated_at = 0;
};

struct SessionRecord {
    std::string token;
    std::int64_t created_at = 0;
    std::map<std::string, AttemptState> attempts;  // keyed by question id; absent means untouched
};

class StoreError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SessionStore {
public:
    virtual ~SessionStore() = default;
    virtual std::optional<SessionRecord> load(const std::string& token) = 0;
    virtual void save(const SessionRecord& record) = 0;
};

class MemorySessionStore : public SessionStore {
public:
    std::optional<SessionRecord> load(const std::string& token) override;
    void save(const SessionRecord& record) override;

private:
    std::mutex mu_;
    std::map<std::string, SessionRecord> records_;
};

/// All sessions in one JSON document tagged with kFormat. Every operation
/// re-reads the file, and writes go through a temporary file and a rename.
class FileSessionStore : public SessionStore {
public:
    static constexpr std::string_view kFormat = "eqproof-sessions/1";

    explicit FileSessionStore(std::filesystem::path path);
    std::optional<SessionRecord> load(const std::string& token) override;
    void save(const SessionRecord& record) override;

private:
    std::filesystem::path path_;
    std::mutex mu_;
};

class UnknownSession : public std::runtime_error {
public:
    explicit UnknownSession(const std::string& token) : std::runtime_error("unknown session " + token) {}
};

class UnknownQuestion : public std::runtime_error {
public:
    explicit UnknownQuestion(const std::string& id) : std::runtime_error("unknown question " + id) {}
};

struct TutorConfig {
    HeuristicWeights weights = HeuristicWeights::production();
    SearchConfig search;
};

struct SyntaxDetail {
    std::size_t position;
    std::string message;
};

struct StepResult {
    Verdict verdict;
    std::optional<SyntaxDetail> syntax;
    std::string current;  // canonical text after the step
    bool completed = false;
};

struct HintResult {
    int level = 0;  // 1 rule, 2 rule and expression, 3 full solution; 0 when nothing is left
    std::optional<RuleId> rule;
    std::optional<Expr> expr;
    std::optional<Proof> solution;  // level 3
    bool search_complete = false;   // the search reached the target
    bool completed = false;         // question status after the request
};

struct LevelProgress {
    std::size_t total = 0;
    std::size_t untouched = 0;
    std::size_t in_progress = 0;
    std::size_t completed = 0;
};

struct QuestionProgress {
    std::string id;
    Level level;
    Status status;
    std::size_t valid_steps = 0;
    bool via_solution = false;
};

struct ProgressView {
    std::map<Level, LevelProgress> levels;
    std::vector<QuestionProgress> questions;  // bank order
};

/// Session-scoped tutoring protocol over a question bank. Operations on one
/// session are serialized; distinct sessions proceed independently.
class Tutor {
public:
    using TokenSource = std::function<std::string()>;
    using ClockSource = std::function<std::int64_t()>;

    Tutor(const QuestionBank& bank, SessionStore& store, TutorConfig cfg = {}, TokenSource tokens = {},
          ClockSource clock = {});

    const QuestionBank& bank() const { return bank_; }
    const TutorConfig& config() const { return cfg_; }

    std::string create_session();

    StepResult validate_step(const std::string& token, const std::string& question_id, RuleId rule,
                             std::string_view input);
    /// Escalates rule, then expression, then the full remaining proof, which
    /// completes the question when the search succeeds. A valid step resets
    /// the escalation.
    HintResult request_hint(const std::string& token, const std::string& question_id);
    /// Full proof from the premise. Does not change the session.
    Proof solution(const std::string& token, const std::string& question_id);
    void reset(const std::string& token, const std::string& question_id);
    ProgressView progress(const std::string& token);
    AttemptState attempt(const std::string& token, const std::string& question_id);

    /// Expression the attempt currently stands at.
    Expr current_expression(const Question& q, const AttemptState& a) const;

private:
    const Question& question(const std::string& id) const;
    std::shared_ptr<std::mutex> lock_for(const std::string& token);
    SessionRecord load(const std::string& token);

    const QuestionBank& bank_;
    SessionStore& store_;
    TutorConfig cfg_;
    TokenSource tokens_;
    ClockSource clock_;
    std::mutex locks_mu_;
    std::map<std::string, std::shared_ptr<std::mutex>> locks_;
};

}  // namespace eqproof
