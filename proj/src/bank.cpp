#include "eqproof/bank.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>

#include <nlohmann/json.hpp>

#include "eqproof/truth.hpp"

namespace eqproof {

using nlohmann::json;

std::string_view level_name(Level level) {
    switch (level) {
        case Level::Novice: return "novice";
        case Level::Learner: return "learner";
        case Level::Expert: return "expert";
    }
    return "novice";
}

std::optional<Level> level_from_name(std::string_view name) {
    if (name == "novice") return Level::Novice;
    if (name == "learner") return Level::Learner;
    if (name == "expert") return Level::Expert;
    return std::nullopt;
}

Level level_for_steps(std::size_t n) {
    if (n <= 2) return Level::Novice;
    if (n <= 4) return Level::Learner;
    return Level::Expert;
}

std::string Question::phrasing() const {
    const std::string p = print_canonical(premise);
    if (target.kind() == NodeKind::Const)
        return "Prove that " + p + " is a " + (target.value() ? "Tautology" : "Fallacy");
    return "Prove that " + p + " is logically equivalent to " + print_canonical(target);
}

Vocabulary Question::vocabulary() const {
    auto v = variables(premise);
    v.merge(variables(target));
    return v;
}

BankFormatError::BankFormatError(std::size_t line, std::string id, const std::string& reason)
    : std::runtime_error("line " + std::to_string(line) + (id.empty() ? "" : " (" + id + ")") + ": " + reason),
      line_(line),
      id_(std::move(id)) {}

NonEquivalentQuestion::NonEquivalentQuestion(std::size_t line, std::string id)
    : std::runtime_error("line " + std::to_string(line) + " (" + id + "): premise and target are not equivalent"),
      line_(line),
      id_(std::move(id)) {}

namespace {

std::string required_string(const json& obj, const char* field, std::size_t line, const std::string& id) {
    auto it = obj.find(field);
    if (it == obj.end()) throw BankFormatError(line, id, std::string("missing field '") + field + "'");
    if (!it->is_string()) throw BankFormatError(line, id, std::string("field '") + field + "' must be a string");
    return it->get<std::string>();
}

Expr parse_field(const std::string& text, const char* field, std::size_t line, const std::string& id) {
    try {
        return normalize(parse(text));
    } catch (const SyntaxError& e) {
        throw BankFormatError(line, id, std::string(field) + ": " + e.what());
    }
}

bool skippable(std::string_view line) {
    const auto first = line.find_first_not_of(" \t\r");
    return first == std::string_view::npos || line[first] == '#';
}

}  // namespace

std::vector<Question> parse_bank(std::istream& in) {
    std::vector<Question> out;
    std::set<std::string> seen;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (skippable(raw)) continue;
        json obj;
        try {
            obj = json::parse(raw);
        } catch (const json::parse_error& e) {
            throw BankFormatError(line, "", std::string("invalid JSON: ") + e.what());
        }
        if (!obj.is_object()) throw BankFormatError(line, "", "entry must be a JSON object");

        const std::string id = required_string(obj, "id", line, "");
        if (id.empty()) throw BankFormatError(line, id, "empty id");
        const std::string level_text = required_string(obj, "level", line, id);
        const std::string premise_text = required_string(obj, "premise", line, id);
        const std::string target_text = required_string(obj, "target", line, id);
        std::string origin;
        if (auto it = obj.find("origin"); it != obj.end()) {
            if (!it->is_string()) throw BankFormatError(line, id, "field 'origin' must be a string");
            origin = it->get<std::string>();
        }

        auto level = level_from_name(level_text);
        if (!level) throw BankFormatError(line, id, "unknown level '" + level_text + "'");
        if (!seen.insert(id).second) throw BankFormatError(line, id, "duplicate id");

        Expr premise = parse_field(premise_text, "premise", line, id);
        Expr target = parse_field(target_text, "target", line, id);
        bool same;
        try {
            same = equivalent(premise, target);
        } catch (const TooManyVariables& e) {
            throw BankFormatError(line, id, e.what());
        }
        if (!same) throw NonEquivalentQuestion(line, id);
        out.push_back(Question{id, *level, std::move(premise), std::move(target), std::move(origin)});
    }
    return out;
}

std::vector<Question> load_bank(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open bank file " + path.string());
    return parse_bank(in);
}

void write_question(std::ostream& out, const Question& q) {
    json obj = {{"id", q.id},
                {"level", level_name(q.level)},
                {"premise", print_canonical(q.premise)},
                {"target", print_canonical(q.target)}};
    if (!q.origin.empty()) obj["origin"] = q.origin;
    out << obj.dump() << '\n';
}

void write_bank(std::ostream& out, std::span<const Question> questions) {
    for (const auto& q : questions) write_question(out, q);
}

QuestionBank::QuestionBank(std::vector<Question> questions) : questions_(std::move(questions)) {
    std::sort(questions_.begin(), questions_.end(), [](const Question& a, const Question& b) { return a.id < b.id; });
    for (std::size_t i = 0; i < questions_.size(); ++i) {
        if (!index_.emplace(questions_[i].id, i).second)
            throw std::invalid_argument("duplicate question id " + questions_[i].id);
    }
}

const Question* QuestionBank::find(std::string_view id) const {
    auto it = index_.find(id);
    return it == index_.end() ? nullptr : &questions_[it->second];
}

std::vector<const Question*> QuestionBank::by_level(Level level) const {
    std::vector<const Question*> out;
    for (const auto& q : questions_)
        if (q.level == level) out.push_back(&q);
    return out;
}

}  // namespace eqproof
