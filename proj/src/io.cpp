#include "eqproof/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace eqproof {

namespace {

double number_field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) return 0.0;
    if (!it->is_number()) throw ConfigError(std::string("weight '") + key + "' must be a number");
    return it->get<double>();
}

Json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

template <typename T>
T get_or(const Json& j, const char* key, T fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    try {
        return it->get<T>();
    } catch (const Json::exception&) {
        throw ConfigError(std::string("field '") + key + "' has the wrong type");
    }
}

}  // namespace

Json weights_to_json(const HeuristicWeights& w) {
    Json rules = Json::object();
    for (RuleId r : kAllRules) rules[std::string(rule_name(r))] = w.rule_weight(r);
    return {{"unitary", w.unitary},
            {"levenshtein", w.levenshtein},
            {"variable_mismatch", w.variable_mismatch},
            {"length_difference", w.length_difference},
            {"start", w.start},
            {"rules", rules}};
}

HeuristicWeights weights_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("weights must be a JSON object");
    static const std::set<std::string> known = {"unitary", "levenshtein", "variable_mismatch",
                                                "length_difference", "start", "rules"};
    for (const auto& [key, _] : j.items())
        if (!known.count(key)) throw ConfigError("unknown weight '" + key + "'");
    HeuristicWeights w;
    w.unitary = number_field(j, "unitary");
    w.levenshtein = number_field(j, "levenshtein");
    w.variable_mismatch = number_field(j, "variable_mismatch");
    w.length_difference = number_field(j, "length_difference");
    w.start = number_field(j, "start");
    if (auto it = j.find("rules"); it != j.end()) {
        if (!it->is_object()) throw ConfigError("'rules' must be an object");
        for (const auto& [name, value] : it->items()) {
            auto r = rule_from_name(name);
            if (!r) throw ConfigError("unknown rule '" + name + "'");
            if (!value.is_number()) throw ConfigError("weight for rule '" + name + "' must be a number");
            w.rule_weight(*r) = value.get<double>();
        }
    }
    if (!w.in_bounds()) throw ConfigError("weights must lie in [-10, 10]");
    return w;
}

HeuristicWeights load_weights(const std::filesystem::path& path) { return weights_from_json(read_json_file(path)); }

void save_weights(const std::filesystem::path& path, const HeuristicWeights& w) {
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write " + path.string());
    out << weights_to_json(w).dump(2) << '\n';
}

Json rule_to_json(RuleId r) { return {{"name", rule_name(r)}, {"display_name", rule_display_name(r)}}; }

Json proof_to_json(const Proof& p) {
    Json steps = Json::array();
    for (const auto& s : p.steps) {
        Json step = rule_to_json(s.rule);
        step["rule"] = step["name"];
        step.erase("name");
        step["expression"] = print_canonical(s.expr);
        steps.push_back(std::move(step));
    }
    return {{"premise", print_canonical(p.premise)},
            {"target", print_canonical(p.target)},
            {"complete", p.complete},
            {"steps", std::move(steps)},
            {"stats",
             {{"expansions", p.stats.expansions},
              {"generated", p.stats.generated},
              {"elapsed_seconds", p.stats.elapsed_seconds},
              {"timed_out", p.stats.timed_out},
              {"expansion_limit_hit", p.stats.expansion_limit_hit},
              {"pruned_by_size", p.stats.pruned_by_size}}}};
}

Proof proof_from_json(const Json& j) {
    try {
        Proof p{normalize(parse(j.at("premise").get<std::string>())),
                normalize(parse(j.at("target").get<std::string>())),
                {},
                j.at("complete").get<bool>(),
                {}};
        for (const auto& s : j.at("steps")) {
            const auto name = s.at("rule").get<std::string>();
            auto r = rule_from_name(name);
            if (!r) throw ConfigError("unknown rule '" + name + "'");
            p.steps.push_back({*r, normalize(parse(s.at("expression").get<std::string>()))});
        }
        return p;
    } catch (const Json::exception& e) {
        throw ConfigError(std::string("malformed proof: ") + e.what());
    }
}

Json transform_to_json(const Transform& t) {
    Json j = rule_to_json(t.rule);
    j["rule"] = j["name"];
    j.erase("name");
    j["site"] = {{"begin", t.site.begin}, {"end", t.site.end}};
    j["result"] = t.text;
    return j;
}

Json question_to_json(const Question& q) {
    return {{"id", q.id},
            {"level", level_name(q.level)},
            {"phrasing", q.phrasing()},
            {"premise", print_canonical(q.premise)},
            {"target", print_canonical(q.target)}};
}

Json syntax_error_to_json(const SyntaxError& e) {
    Json j = {{"position", e.position()}, {"message", e.what()}};
    if (auto* pe = dynamic_cast<const ParseError*>(&e)) j["expected"] = pe->expected();
    if (auto* le = dynamic_cast<const LexError*>(&e)) j["offending"] = le->offending();
    return j;
}

GAConfig ga_config_from_json(const Json& j, const std::filesystem::path& base_dir) {
    if (!j.is_object()) throw ConfigError("GA config must be a JSON object");
    GAConfig c;
    c.population_size = get_or(j, "population_size", c.population_size);
    c.generations = get_or(j, "generations", c.generations);
    c.per_question_time = get_or(j, "per_question_time", c.per_question_time);
    c.elitism = get_or(j, "elitism", c.elitism);
    c.crossover_prob = get_or(j, "crossover_prob", c.crossover_prob);
    c.mutation_prob = get_or(j, "mutation_prob", c.mutation_prob);
    c.rng_seed = get_or(j, "rng_seed", c.rng_seed);
    c.depth_limit = get_or(j, "depth_limit", c.depth_limit);
    c.max_expansions = get_or(j, "max_expansions", c.max_expansions);
    c.max_tokens = get_or(j, "max_tokens", c.max_tokens);
    c.threads = get_or(j, "threads", c.threads);

    auto ts = j.find("training_set");
    if (ts == j.end()) throw ConfigError("missing field 'training_set'");
    if (ts->is_string()) {
        std::filesystem::path p = ts->get<std::string>();
        if (p.is_relative()) p = base_dir / p;
        c.training_set = load_bank(p);
    } else if (ts->is_array()) {
        std::stringstream lines;
        for (const auto& entry : *ts) lines << entry.dump() << '\n';
        c.training_set = parse_bank(lines);
    } else {
        throw ConfigError("'training_set' must be a path or an array");
    }
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

GAConfig load_ga_config(const std::filesystem::path& path) {
    return ga_config_from_json(read_json_file(path), path.parent_path());
}

void write_history_csv(std::ostream& out, std::span<const GenerationRecord> history) {
    out << "generation,best,mean\n";
    for (const auto& r : history) out << r.generation << ',' << r.best << ',' << r.mean << '\n';
}

}  // namespace eqproof
