#include "eqproof/api.hpp"

#include <vector>

#include "eqproof/generator.hpp"

namespace eqproof {

namespace {

std::vector<std::string> split_path(std::string_view path) {
    std::vector<std::string> parts;
    std::size_t i = 0;
    while (i < path.size()) {
        if (path[i] == '/') {
            ++i;
            continue;
        }
        const auto j = path.find('/', i);
        parts.emplace_back(path.substr(i, j == std::string_view::npos ? std::string_view::npos : j - i));
        if (j == std::string_view::npos) break;
        i = j;
    }
    return parts;
}

// Thrown inside handlers and turned into an error response.
struct RequestError {
    int status;
    std::string code;
    std::string message;
    Json detail = nullptr;
};

RequestError bad_request(std::string message) { return {400, "bad_request", std::move(message)}; }

std::string string_field(const Json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end()) throw bad_request(std::string("missing field '") + key + "'");
    if (!it->is_string()) throw bad_request(std::string("field '") + key + "' must be a string");
    return it->get<std::string>();
}

std::uint64_t unsigned_field(const Json& body, const char* key) {
    auto it = body.find(key);
    if (it == body.end()) throw bad_request(std::string("missing field '") + key + "'");
    if (!it->is_number_unsigned()) throw bad_request(std::string("field '") + key + "' must be a non-negative integer");
    return it->get<std::uint64_t>();
}

std::string query_field(const ApiService::Query& q, const char* key) {
    auto it = q.find(key);
    if (it == q.end() || it->second.empty()) throw bad_request(std::string("missing query parameter '") + key + "'");
    return it->second;
}

Json hint_to_json(const HintResult& h) {
    Json j = {{"level", h.level}, {"completed", h.completed}, {"search_complete", h.search_complete}};
    if (h.rule) {
        j["rule"] = rule_name(*h.rule);
        j["display_name"] = rule_display_name(*h.rule);
    }
    if (h.expr) j["expression"] = print_canonical(*h.expr);
    if (h.solution) j["solution"] = proof_to_json(*h.solution);
    return j;
}

}  // namespace

ApiService::ApiService(Tutor& tutor, ServiceConfig cfg) : tutor_(tutor), cfg_(cfg) {}

ApiResponse ApiService::error(int status, std::string_view code, std::string_view message, Json detail) {
    Json err = {{"code", code}, {"message", message}};
    err["detail"] = std::move(detail);
    return {status, {{"error", std::move(err)}}};
}

ApiResponse ApiService::handle(std::string_view method, std::string_view path, const Query& query,
                               std::string_view body) const {
    try {
        const auto parts = split_path(path);
        if (parts.empty() || parts[0] != "api") throw RequestError{404, "not_found", "no such endpoint"};

        Json payload = Json::object();
        if (method == "POST" && !body.empty()) {
            try {
                payload = Json::parse(body);
            } catch (const Json::parse_error& e) {
                throw RequestError{400, "bad_request", "request body is not valid JSON", {{"position", e.byte}}};
            }
            if (!payload.is_object()) throw bad_request("request body must be a JSON object");
        }

        const std::size_t n = parts.size();
        if (n == 2 && parts[1] == "session" && method == "POST") return create_session();
        if (n == 2 && parts[1] == "rules" && method == "GET") return rules();
        if (n == 2 && parts[1] == "questions" && method == "GET") return questions(query);
        if (n == 2 && parts[1] == "parse" && method == "POST") return parse_expression(payload);
        if (n == 2 && parts[1] == "progress" && method == "GET") return progress(query);
        if (n == 2 && parts[1] == "generate" && method == "POST") return generate(payload);
        if (n == 4 && parts[1] == "attempt") {
            const std::string& qid = parts[2];
            if (parts[3] == "step" && method == "POST") return step(qid, payload);
            if (parts[3] == "hint" && method == "POST") return hint(qid, payload);
            if (parts[3] == "solution" && method == "GET") return solution(qid, query);
            if (parts[3] == "reset" && method == "POST") return reset(qid, payload);
        }
        throw RequestError{404, "not_found", "no such endpoint"};
    } catch (const RequestError& e) {
        return error(e.status, e.code, e.message, e.detail);
    } catch (const UnknownQuestion& e) {
        return error(404, "not_found", e.what());
    } catch (const UnknownSession& e) {
        return error(404, "not_found", e.what());
    } catch (const NoStepAvailable& e) {
        return error(504, "timeout", e.what());
    } catch (const std::exception& e) {
        return error(500, "server_error", e.what());
    }
}

ApiResponse ApiService::create_session() const { return {201, {{"session", tutor_.create_session()}}}; }

ApiResponse ApiService::rules() const {
    Json list = Json::array();
    for (RuleId r : kAllRules) {
        Json j = rule_to_json(r);
        Json patterns = Json::array();
        for (const auto& d : rule_directions(r)) patterns.push_back(d.pattern);
        j["patterns"] = std::move(patterns);
        list.push_back(std::move(j));
    }
    return {200, {{"rules", std::move(list)}}};
}

ApiResponse ApiService::questions(const Query& query) const {
    std::optional<Level> filter;
    if (auto it = query.find("level"); it != query.end() && !it->second.empty()) {
        filter = level_from_name(it->second);
        if (!filter) throw bad_request("unknown level '" + it->second + "'");
    }
    Json list = Json::array();
    for (const auto& q : tutor_.bank().all())
        if (!filter || q.level == *filter) list.push_back(question_to_json(q));
    return {200, {{"questions", std::move(list)}}};
}

ApiResponse ApiService::parse_expression(const Json& body) const {
    const std::string text = string_field(body, "expression");
    try {
        const Expr e = normalize(parse(text));
        return {200, {{"valid", true}, {"canonical", print_canonical(e)}}};
    } catch (const SyntaxError& e) {
        return {200, {{"valid", false}, {"error", syntax_error_to_json(e)}}};
    }
}

ApiResponse ApiService::step(const std::string& qid, const Json& body) const {
    const std::string session = string_field(body, "session");
    const std::string rule_text = string_field(body, "rule");
    const std::string expression = string_field(body, "expression");
    if (!tutor_.bank().find(qid)) throw UnknownQuestion(qid);
    auto rule = rule_from_name(rule_text);
    if (!rule) throw bad_request("unknown rule '" + rule_text + "'");
    const StepResult r = tutor_.validate_step(session, qid, *rule, expression);
    Json j = {{"verdict", public_verdict_name(r.verdict)},
              {"current_expression", r.current},
              {"completed", r.completed}};
    if (r.syntax) j["detail"] = {{"position", r.syntax->position}, {"message", r.syntax->message}};
    return {200, std::move(j)};
}

ApiResponse ApiService::hint(const std::string& qid, const Json& body) const {
    const std::string session = string_field(body, "session");
    return {200, hint_to_json(tutor_.request_hint(session, qid))};
}

ApiResponse ApiService::solution(const std::string& qid, const Query& query) const {
    const std::string session = query_field(query, "session");
    return {200, proof_to_json(tutor_.solution(session, qid))};
}

ApiResponse ApiService::reset(const std::string& qid, const Json& body) const {
    const std::string session = string_field(body, "session");
    tutor_.reset(session, qid);
    return {200, {{"question", qid}, {"status", status_name(Status::Untouched)}}};
}

ApiResponse ApiService::progress(const Query& query) const {
    const ProgressView view = tutor_.progress(query_field(query, "session"));
    Json levels = Json::object();
    for (const auto& [level, lp] : view.levels)
        levels[std::string(level_name(level))] = {{"total", lp.total},
                                                  {"untouched", lp.untouched},
                                                  {"in_progress", lp.in_progress},
                                                  {"completed", lp.completed}};
    Json qs = Json::array();
    for (const auto& q : view.questions)
        qs.push_back({{"id", q.id},
                      {"level", level_name(q.level)},
                      {"status", status_name(q.status)},
                      {"valid_steps", q.valid_steps},
                      {"via_solution", q.via_solution}});
    return {200, {{"levels", std::move(levels)}, {"questions", std::move(qs)}}};
}

ApiResponse ApiService::generate(const Json& body) const {
    if (!cfg_.generation_enabled) throw RequestError{409, "conflict", "question generation is disabled"};
    const std::string target_text = string_field(body, "target");
    const auto steps = unsigned_field(body, "steps");
    const auto count = unsigned_field(body, "count");
    const auto seed = unsigned_field(body, "seed");
    if (steps > cfg_.max_generate_steps)
        throw bad_request("steps must be at most " + std::to_string(cfg_.max_generate_steps));
    if (count == 0 || count > cfg_.max_generate_count)
        throw bad_request("count must be between 1 and " + std::to_string(cfg_.max_generate_count));
    Expr target = Expr::constant(true);
    try {
        target = normalize(parse(target_text));
    } catch (const SyntaxError& e) {
        throw RequestError{400, "bad_request", "target does not parse", syntax_error_to_json(e)};
    }
    const Expr targets[] = {target};
    Json list = Json::array();
    for (const auto& g : make_dataset(targets, steps, count, seed)) {
        Json j = question_to_json(g.question);
        j["witness"] = proof_to_json(g.witness);
        list.push_back(std::move(j));
    }
    return {200, {{"questions", std::move(list)}}};
}

}  // namespace eqproof
