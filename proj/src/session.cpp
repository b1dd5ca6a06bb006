#include "eqproof/session.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <random>

#include <nlohmann/json.hpp>

#include "eqproof/frontier.hpp"

namespace eqproof {

using nlohmann::json;

std::string_view status_name(Status s) {
    switch (s) {
        case Status::Untouched: return "untouched";
        case Status::InProgress: return "in_progress";
        case Status::Completed: return "completed";
    }
    return "untouched";
}

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Valid: return "valid";
        case Verdict::SyntaxError: return "syntax_error";
        case Verdict::RuleMismatch: return "rule_mismatch";
        case Verdict::NotEntailed: return "not_entailed";
        case Verdict::AlreadyComplete: return "already_complete";
    }
    return "valid";
}

std::string_view public_verdict_name(Verdict v) {
    if (v == Verdict::RuleMismatch || v == Verdict::NotEntailed) return "invalid";
    return verdict_name(v);
}

namespace {

template <typename E, std::size_t N>
E enum_from(const std::string& name, std::string_view (*namer)(E), const E (&values)[N]) {
    for (E v : values)
        if (namer(v) == name) return v;
    throw StoreError("session store: unknown value '" + name + "'");
}

constexpr Status kStatuses[] = {Status::Untouched, Status::InProgress, Status::Completed};
constexpr Verdict kVerdicts[] = {Verdict::Valid, Verdict::SyntaxError, Verdict::RuleMismatch, Verdict::NotEntailed,
                                 Verdict::AlreadyComplete};

json to_json(const SessionRecord& r) {
    json attempts = json::object();
    for (const auto& [id, a] : r.attempts) {
        json history = json::array();
        for (const auto& s : a.history)
            history.push_back({{"rule", s.rule}, {"expression", s.expression}, {"verdict", verdict_name(s.verdict)}});
        attempts[id] = {{"status", status_name(a.status)},
                        {"current", a.current},
                        {"history", std::move(history)},
                        {"hints",
                         {{"rule", a.hints.rule_hints},
                          {"expression", a.hints.expression_hints},
                          {"solution", a.hints.full_solutions}}},
                        {"hint_level", a.hint_level},
                        {"via_solution", a.via_solution},
                        {"started_at", a.started_at},
                        {"updated_at", a.updated_at}};
    }
    return {{"created_at", r.created_at}, {"attempts", std::move(attempts)}};
}

SessionRecord from_json(const std::string& token, const json& j) {
    SessionRecord r;
    r.token = token;
    r.created_at = j.at("created_at").get<std::int64_t>();
    for (const auto& [id, a] : j.at("attempts").items()) {
        AttemptState s;
        s.status = enum_from(a.at("status").get<std::string>(), status_name, kStatuses);
        s.current = a.at("current").get<std::string>();
        for (const auto& h : a.at("history"))
            s.history.push_back({h.at("rule").get<std::string>(), h.at("expression").get<std::string>(),
                                 enum_from(h.at("verdict").get<std::string>(), verdict_name, kVerdicts)});
        const auto& hints = a.at("hints");
        s.hints = {hints.at("rule").get<std::uint64_t>(), hints.at("expression").get<std::uint64_t>(),
                   hints.at("solution").get<std::uint64_t>()};
        s.hint_level = a.at("hint_level").get<int>();
        s.via_solution = a.at("via_solution").get<bool>();
        s.started_at = a.at("started_at").get<std::int64_t>();
        s.updated_at = a.at("updated_at").get<std::int64_t>();
        r.attempts.emplace(id, std::move(s));
    }
    return r;
}

std::string random_token() {
    std::random_device rd;
    std::uniform_int_distribution<unsigned> hex(0, 15);
    std::string out(32, '0');
    for (auto& c : out) c = "0123456789abcdef"[hex(rd)];
    return out;
}

std::int64_t unix_now() {
    return std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch())
        .count();
}

}  // namespace

std::optional<SessionRecord> MemorySessionStore::load(const std::string& token) {
    std::lock_guard lock(mu_);
    auto it = records_.find(token);
    if (it == records_.end()) return std::nullopt;
    return it->second;
}

void MemorySessionStore::save(const SessionRecord& record) {
    std::lock_guard lock(mu_);
    records_[record.token] = record;
}

FileSessionStore::FileSessionStore(std::filesystem::path path) : path_(std::move(path)) {}

namespace {

json read_store(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) return {{"format", FileSessionStore::kFormat}, {"sessions", json::object()}};
    std::ifstream in(path);
    if (!in) throw StoreError("cannot read session store " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw StoreError("corrupt session store " + path.string() + ": " + e.what());
    }
    if (!doc.is_object() || doc.value("format", "") != FileSessionStore::kFormat)
        throw StoreError("session store " + path.string() + " has an unsupported format tag");
    return doc;
}

}  // namespace

std::optional<SessionRecord> FileSessionStore::load(const std::string& token) {
    std::lock_guard lock(mu_);
    json doc = read_store(path_);
    auto& sessions = doc.at("sessions");
    auto it = sessions.find(token);
    if (it == sessions.end()) return std::nullopt;
    try {
        return from_json(token, *it);
    } catch (const json::exception& e) {
        throw StoreError("corrupt session record: " + std::string(e.what()));
    }
}

void FileSessionStore::save(const SessionRecord& record) {
    std::lock_guard lock(mu_);
    json doc = read_store(path_);
    doc["sessions"][record.token] = to_json(record);
    auto tmp = path_;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        if (!out) throw StoreError("cannot write session store " + tmp.string());
        out << doc.dump() << '\n';
        out.flush();
        if (!out) throw StoreError("failed writing session store " + tmp.string());
    }
    std::filesystem::rename(tmp, path_);
}

Tutor::Tutor(const QuestionBank& bank, SessionStore& store, TutorConfig cfg, TokenSource tokens, ClockSource clock)
    : bank_(bank),
      store_(store),
      cfg_(std::move(cfg)),
      tokens_(tokens ? std::move(tokens) : TokenSource(random_token)),
      clock_(clock ? std::move(clock) : ClockSource(unix_now)) {
    cfg_.search.validate();
}

const Question& Tutor::question(const std::string& id) const {
    const Question* q = bank_.find(id);
    if (!q) throw UnknownQuestion(id);
    return *q;
}

std::shared_ptr<std::mutex> Tutor::lock_for(const std::string& token) {
    std::lock_guard lock(locks_mu_);
    auto& m = locks_[token];
    if (!m) m = std::make_shared<std::mutex>();
    return m;
}

SessionRecord Tutor::load(const std::string& token) {
    auto r = store_.load(token);
    if (!r) throw UnknownSession(token);
    return std::move(*r);
}

Expr Tutor::current_expression(const Question& q, const AttemptState& a) const {
    return a.current.empty() ? q.premise : normalize(parse(a.current));
}

std::string Tutor::create_session() {
    for (;;) {
        std::string token = tokens_();
        auto m = lock_for(token);
        std::lock_guard lock(*m);
        if (store_.load(token)) continue;
        SessionRecord r;
        r.token = token;
        r.created_at = clock_();
        store_.save(r);
        return token;
    }
}

StepResult Tutor::validate_step(const std::string& token, const std::string& question_id, RuleId rule,
                                std::string_view input) {
    const Question& q = question(question_id);
    auto m = lock_for(token);
    std::lock_guard lock(*m);
    SessionRecord rec = load(token);
    AttemptState& a = rec.attempts[question_id];
    Expr current = current_expression(q, a);

    StepResult result{Verdict::Valid, std::nullopt, print_canonical(current), false};
    if (a.status == Status::Completed) {
        result.verdict = Verdict::AlreadyComplete;
        result.completed = true;
        return result;
    }

    const std::int64_t now = clock_();
    if (a.status == Status::Untouched) {
        a.status = Status::InProgress;
        a.started_at = now;
    }
    a.updated_at = now;

    std::optional<Expr> candidate;
    try {
        candidate = normalize(parse(input));
    } catch (const SyntaxError& e) {
        result.verdict = Verdict::SyntaxError;
        result.syntax = SyntaxDetail{e.position(), e.what()};
    }
    if (candidate) {
        const Frontier f = frontier_gen(current, q.vocabulary());
        switch (frontier_contains(f, rule, *candidate)) {
            case Membership::Hit: result.verdict = Verdict::Valid; break;
            case Membership::RuleMismatch: result.verdict = Verdict::RuleMismatch; break;
            case Membership::Miss: result.verdict = Verdict::NotEntailed; break;
        }
    }
    a.history.push_back({std::string(rule_name(rule)), std::string(input), result.verdict});
    if (result.verdict == Verdict::Valid) {
        a.current = print_canonical(*candidate);
        a.hint_level = 0;
        result.current = a.current;
        if (structural_eq(*candidate, q.target)) {
            a.status = Status::Completed;
            result.completed = true;
        }
    }
    store_.save(rec);
    return result;
}

HintResult Tutor::request_hint(const std::string& token, const std::string& question_id) {
    const Question& q = question(question_id);
    auto m = lock_for(token);
    std::lock_guard lock(*m);
    SessionRecord rec = load(token);
    AttemptState& a = rec.attempts[question_id];
    Expr current = current_expression(q, a);

    HintResult out;
    if (a.status == Status::Completed || structural_eq(current, q.target)) {
        out.completed = true;
        out.search_complete = true;
        return out;
    }

    const std::int64_t now = clock_();
    if (a.status == Status::Untouched) {
        a.status = Status::InProgress;
        a.started_at = now;
    }
    a.updated_at = now;

    Proof proof = astar_solve(current, q.target, cfg_.weights, cfg_.search);
    if (proof.steps.empty()) throw NoStepAvailable();
    out.level = std::min(a.hint_level + 1, 3);
    out.search_complete = proof.complete;
    out.rule = proof.steps.front().rule;
    if (out.level >= 2) out.expr = proof.steps.front().expr;
    switch (out.level) {
        case 1: ++a.hints.rule_hints; break;
        case 2: ++a.hints.expression_hints; break;
        default:
            ++a.hints.full_solutions;
            if (proof.complete) {
                a.status = Status::Completed;
                a.via_solution = true;
                out.completed = true;
            }
            out.solution = std::move(proof);
            break;
    }
    a.hint_level = out.level;
    store_.save(rec);
    return out;
}

Proof Tutor::solution(const std::string& token, const std::string& question_id) {
    const Question& q = question(question_id);
    {
        auto m = lock_for(token);
        std::lock_guard lock(*m);
        load(token);
    }
    return astar_solve(q.premise, q.target, cfg_.weights, cfg_.search);
}

void Tutor::reset(const std::string& token, const std::string& question_id) {
    question(question_id);
    auto m = lock_for(token);
    std::lock_guard lock(*m);
    SessionRecord rec = load(token);
    rec.attempts.erase(question_id);
    store_.save(rec);
}

ProgressView Tutor::progress(const std::string& token) {
    SessionRecord rec;
    {
        auto m = lock_for(token);
        std::lock_guard lock(*m);
        rec = load(token);
    }
    ProgressView view;
    for (Level l : {Level::Novice, Level::Learner, Level::Expert}) view.levels[l];
    for (const auto& q : bank_.all()) {
        QuestionProgress qp{q.id, q.level, Status::Untouched, 0, false};
        if (auto it = rec.attempts.find(q.id); it != rec.attempts.end()) {
            qp.status = it->second.status;
            qp.via_solution = it->second.via_solution;
            for (const auto& s : it->second.history) qp.valid_steps += s.verdict == Verdict::Valid ? 1 : 0;
        }
        LevelProgress& lp = view.levels[q.level];
        ++lp.total;
        switch (qp.status) {
            case Status::Untouched: ++lp.untouched; break;
            case Status::InProgress: ++lp.in_progress; break;
            case Status::Completed: ++lp.completed; break;
        }
        view.questions.push_back(std::move(qp));
    }
    return view;
}

AttemptState Tutor::attempt(const std::string& token, const std::string& question_id) {
    question(question_id);
    auto m = lock_for(token);
    std::lock_guard lock(*m);
    SessionRecord rec = load(token);
    auto it = rec.attempts.find(question_id);
    return it == rec.attempts.end() ? AttemptState{} : it->second;
}

}  // namespace eqproof
