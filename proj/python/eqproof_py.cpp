#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eqproof/frontier.hpp"
#include "eqproof/generator.hpp"
#include "eqproof/io.hpp"
#include "eqproof/truth.hpp"
#include "eqproof/tuner.hpp"

namespace py = pybind11;
using namespace eqproof;

namespace {

// Round-trips through Python's json module; payloads here are small.
py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

Json from_py(const py::object& o) {
    return Json::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

Expr expr_of(const std::string& text) { return normalize(parse(text)); }

HeuristicWeights weights_of(const py::object& w) {
    return w.is_none() ? HeuristicWeights::production() : weights_from_json(from_py(w));
}

SearchConfig search_config(double time_budget, int depth_limit, std::size_t max_expansions) {
    SearchConfig c;
    c.time_budget = time_budget;
    c.depth_limit = depth_limit;
    c.max_expansions = max_expansions;
    return c;
}

Vocabulary vocab_of(const Expr& e, const std::optional<std::vector<std::string>>& extra) {
    Vocabulary v = variables(e);
    if (extra) v.insert(extra->begin(), extra->end());
    return v;
}

}  // namespace

PYBIND11_MODULE(_eqproof, m) {
    m.doc() = "Propositional equivalence proofs";

    py::register_exception<SyntaxError>(m, "SyntaxError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<BankFormatError>(m, "BankFormatError", PyExc_ValueError);
    py::register_exception<NonEquivalentQuestion>(m, "NonEquivalentQuestion", PyExc_ValueError);

    m.def("canonical", [](const std::string& text) { return print_canonical(expr_of(text)); }, py::arg("expression"));

    m.def(
        "tokenize",
        [](const std::string& text) {
            std::vector<std::tuple<std::string, std::string, std::size_t>> out;
            for (const auto& t : eqproof::tokenize(text))
                out.emplace_back(std::string(token_kind_name(t.kind)), t.lexeme, t.position);
            return out;
        },
        py::arg("expression"));

    m.def("classify", [](const std::string& text) { return std::string(classification_name(eqproof::classify(expr_of(text)))); },
          py::arg("expression"));

    m.def("equivalent", [](const std::string& a, const std::string& b) { return eqproof::equivalent(expr_of(a), expr_of(b)); },
          py::arg("a"), py::arg("b"));

    m.def(
        "frontier",
        [](const std::string& text, std::optional<std::vector<std::string>> vocab) {
            const Expr e = expr_of(text);
            Json list = Json::array();
            for (const auto& t : frontier_gen(e, vocab_of(e, vocab)).entries) list.push_back(transform_to_json(t));
            return to_py(list);
        },
        py::arg("expression"), py::arg("vocab") = py::none());

    m.def(
        "solve",
        [](const std::string& premise, const std::string& target, double time_budget, int depth_limit,
           std::size_t max_expansions, py::object weights) {
            const auto w = weights_of(weights);
            const auto cfg = search_config(time_budget, depth_limit, max_expansions);
            const Expr a = expr_of(premise), b = expr_of(target);
            std::optional<Proof> p;
            {
                py::gil_scoped_release release;
                p = astar_solve(a, b, w, cfg);
            }
            return to_py(proof_to_json(*p));
        },
        py::arg("premise"), py::arg("target"), py::arg("time_budget") = 3.0, py::arg("depth_limit") = 10,
        py::arg("max_expansions") = 50'000, py::arg("weights") = py::none());

    m.def(
        "hint",
        [](const std::string& current, const std::string& target, const std::string& level, double time_budget,
           py::object weights) {
            const HintLevel hl = level == "expression" ? HintLevel::Expression : HintLevel::Rule;
            const Hint h = next_step_hint(expr_of(current), expr_of(target), hl, weights_of(weights),
                                          search_config(time_budget, 10, 50'000));
            Json j = {{"at_target", h.at_target}, {"complete", h.complete}};
            if (h.rule) j["rule"] = rule_name(*h.rule);
            if (h.expr) j["expression"] = print_canonical(*h.expr);
            return to_py(j);
        },
        py::arg("current"), py::arg("target"), py::arg("level") = "rule", py::arg("time_budget") = 3.0,
        py::arg("weights") = py::none());

    m.def(
        "proof_gen",
        [](const std::string& target, std::size_t steps, std::uint64_t seed,
           std::optional<std::vector<std::string>> vocab) {
            const Expr t = expr_of(target);
            Json j = proof_to_json(eqproof::proof_gen(t, steps, vocab_of(t, vocab), seed).proof);
            j.erase("stats");
            return to_py(j);
        },
        py::arg("target"), py::arg("steps"), py::arg("seed"), py::arg("vocab") = py::none());

    m.def(
        "make_dataset",
        [](const std::vector<std::string>& targets, std::size_t steps, std::size_t count_per_target,
           std::uint64_t seed) {
            std::vector<Expr> ts;
            for (const auto& t : targets) ts.push_back(expr_of(t));
            Json list = Json::array();
            for (const auto& g : eqproof::make_dataset(ts, steps, count_per_target, seed)) {
                Json q = question_to_json(g.question);
                q["witness"] = proof_to_json(g.witness);
                q["witness"].erase("stats");
                list.push_back(std::move(q));
            }
            return to_py(list);
        },
        py::arg("targets"), py::arg("steps"), py::arg("count_per_target"), py::arg("seed"));

    m.def(
        "load_bank",
        [](const std::string& path) {
            Json list = Json::array();
            for (const auto& q : eqproof::load_bank(path)) list.push_back(question_to_json(q));
            return to_py(list);
        },
        py::arg("path"));

    m.def(
        "fitness",
        [](py::object weights, const std::vector<std::pair<std::string, std::string>>& questions, double time_budget) {
            std::vector<Question> qs;
            for (const auto& [p, t] : questions)
                qs.push_back(Question{"q" + std::to_string(qs.size()), Level::Novice, expr_of(p), expr_of(t), ""});
            const auto w = weights_of(weights);
            py::gil_scoped_release release;
            return eqproof::fitness(w, qs, time_budget);
        },
        py::arg("weights"), py::arg("questions"), py::arg("time_budget") = 1.0);

    m.def("production_weights", [] { return to_py(weights_to_json(HeuristicWeights::production())); });

    m.def("rules", [] {
        Json list = Json::array();
        for (RuleId r : kAllRules) list.push_back(rule_to_json(r));
        return to_py(list);
    });

    m.def(
        "validate_proof",
        [](py::object proof) -> std::optional<std::size_t> { return find_invalid_step(proof_from_json(from_py(proof))); },
        py::arg("proof"),
        "Index of the first invalid step, or None when the proof replays cleanly.");
}
