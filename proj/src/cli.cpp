#include "eqproof/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>

#include "eqproof/api.hpp"
#include "eqproof/frontier.hpp"
#include "eqproof/generator.hpp"
#include "eqproof/http.hpp"
#include "eqproof/io.hpp"
#include "eqproof/truth.hpp"

#ifndef EQPROOF_DEFAULT_BANK
#define EQPROOF_DEFAULT_BANK "data/bank.jsonl"
#endif

namespace eqproof {

namespace {

enum class Format { Text, Json };

struct SearchFlags {
    std::string weights_file;
    double time = 3.0;
    int depth = 10;
    std::size_t max_expansions = 50'000;
    std::size_t max_tokens = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--weights", weights_file, "Heuristic weights JSON file (default: production weights)");
        cmd->add_option("--time", time, "Search time budget in seconds")->capture_default_str();
        cmd->add_option("--depth", depth, "Search depth limit")->capture_default_str();
        cmd->add_option("--max-expansions", max_expansions, "Search expansion limit")->capture_default_str();
        cmd->add_option("--max-tokens", max_tokens, "Discard successors longer than this (0: automatic)")
            ->capture_default_str();
    }

    HeuristicWeights weights() const {
        return weights_file.empty() ? HeuristicWeights::production() : load_weights(weights_file);
    }

    SearchConfig config() const {
        SearchConfig c;
        c.time_budget = time;
        c.depth_limit = depth;
        c.max_expansions = max_expansions;
        c.max_tokens = max_tokens;
        c.validate();
        return c;
    }
};

// Raised for user-facing failures that map to exit code 1.
struct CliFailure {
    std::string message;
};

Expr parse_arg(const std::string& text, const char* what) {
    try {
        return normalize(parse(text));
    } catch (const SyntaxError& e) {
        std::ostringstream msg;
        msg << what << ": " << e.what() << "\n  " << text << "\n  " << std::string(e.position(), ' ') << '^';
        throw CliFailure{msg.str()};
    }
}

Vocabulary parse_vocab(const std::vector<std::string>& names, const Expr& e) {
    Vocabulary v = variables(e);
    for (const auto& n : names) v.insert(n);
    return v;
}

void print_proof_text(std::ostream& out, const Proof& p) {
    if (p.steps.empty() && p.complete) {
        out << "already equal\n";
        return;
    }
    for (std::size_t i = 0; i < p.steps.size(); ++i)
        out << (i + 1) << ". " << rule_display_name(p.steps[i].rule) << ": " << print_canonical(p.steps[i].expr)
            << '\n';
}

int cmd_parse(const std::string& text, Format fmt, std::ostream& out) {
    const Expr e = parse_arg(text, "expression");
    const std::string canonical = print_canonical(e);
    std::string cls;
    try {
        cls = classification_name(classify(e));
    } catch (const TooManyVariables&) {
        cls = "unknown";
    }
    if (fmt == Format::Json) {
        Json tokens = Json::array();
        for (const auto& t : tokenize(canonical)) tokens.push_back(t.lexeme);
        out << Json{{"canonical", canonical},
                    {"tokens", tokens},
                    {"variables", variables(e)},
                    {"classification", cls}}
                   .dump()
            << '\n';
    } else {
        out << canonical << '\n' << "classification: " << cls << '\n';
    }
    return 0;
}

int cmd_frontier(const std::string& text, const std::vector<std::string>& vocab, Format fmt, std::ostream& out) {
    const Expr e = parse_arg(text, "expression");
    const Frontier f = frontier_gen(e, parse_vocab(vocab, e));
    if (fmt == Format::Json) {
        Json list = Json::array();
        for (const auto& t : f.entries) list.push_back(transform_to_json(t));
        out << Json{{"source", print_canonical(e)}, {"transforms", list}}.dump() << '\n';
        return 0;
    }
    for (const auto& t : f.entries)
        out << rule_name(t.rule) << " [" << t.site.begin << ',' << t.site.end << ") " << t.text << '\n';
    return 0;
}

int cmd_solve(const std::string& premise_text, const std::string& target_text, const SearchFlags& flags,
              Format fmt, std::ostream& out, std::ostream& err) {
    const Expr premise = parse_arg(premise_text, "premise");
    const Expr target = parse_arg(target_text, "target");
    if (!equivalent(premise, target)) throw CliFailure{"premise and target are not logically equivalent"};
    const Proof p = astar_solve(premise, target, flags.weights(), flags.config());
    if (fmt == Format::Json)
        out << proof_to_json(p).dump() << '\n';
    else
        print_proof_text(out, p);
    if (!p.complete) {
        err << "search incomplete after " << p.stats.expansions << " expansions"
            << (p.stats.timed_out ? " (time budget exhausted)" : "") << "; showing best-effort path\n";
        return 2;
    }
    return 0;
}

int cmd_hint(const std::string& current_text, const std::string& target_text, const std::string& level,
             const SearchFlags& flags, Format fmt, std::ostream& out) {
    const Expr current = parse_arg(current_text, "current");
    const Expr target = parse_arg(target_text, "target");
    if (!equivalent(current, target)) throw CliFailure{"current and target are not logically equivalent"};
    const HintLevel hl = level == "expression" ? HintLevel::Expression : HintLevel::Rule;
    const Hint h = next_step_hint(current, target, hl, flags.weights(), flags.config());
    if (fmt == Format::Json) {
        Json j = {{"at_target", h.at_target}, {"complete", h.complete}};
        if (h.rule) {
            j["rule"] = rule_name(*h.rule);
            j["display_name"] = rule_display_name(*h.rule);
        }
        if (h.expr) j["expression"] = print_canonical(*h.expr);
        out << j.dump() << '\n';
        return 0;
    }
    if (h.at_target) {
        out << "already equal\n";
        return 0;
    }
    out << "rule: " << rule_display_name(*h.rule) << '\n';
    if (h.expr) out << "expression: " << print_canonical(*h.expr) << '\n';
    if (!h.complete) out << "(best effort: the search did not reach the target)\n";
    return 0;
}

int cmd_gen(const std::string& target_text, std::size_t steps, std::size_t count, std::uint64_t seed, Format fmt,
            std::ostream& out) {
    const Expr target = parse_arg(target_text, "target");
    const Expr targets[] = {target};
    for (const auto& g : make_dataset(targets, steps, count, seed)) {
        if (fmt == Format::Json) {
            Json j = question_to_json(g.question);
            j["witness"] = proof_to_json(g.witness);
            j["witness"].erase("stats");
            out << j.dump() << '\n';
        } else {
            write_question(out, g.question);
        }
    }
    return 0;
}

int cmd_tune(const std::string& config_path, const std::string& out_path, const std::string& history_path,
             Format fmt, std::ostream& out, std::ostream& err) {
    GAConfig cfg = load_ga_config(config_path);
    const EvolveResult r = evolve(cfg, [&](const GenerationRecord& g) {
        err << "generation " << g.generation << ": best " << g.best << ", mean " << g.mean
            << (g.degenerate ? " (all zero)" : "") << '\n';
    });
    if (!out_path.empty()) save_weights(out_path, r.best.weights);
    if (!history_path.empty()) {
        std::ofstream h(history_path);
        if (!h) throw CliFailure{"cannot write " + history_path};
        write_history_csv(h, r.history);
    }
    if (fmt == Format::Json) {
        Json hist = Json::array();
        for (const auto& g : r.history) hist.push_back({{"generation", g.generation}, {"best", g.best}, {"mean", g.mean}});
        out << Json{{"best_fitness", r.best.fitness},
                    {"training_size", cfg.training_set.size()},
                    {"weights", weights_to_json(r.best.weights)},
                    {"history", hist}}
                   .dump()
            << '\n';
    } else {
        if (history_path.empty()) write_history_csv(out, r.history);
        out << "best fitness: " << r.best.fitness << '/' << cfg.training_set.size() << '\n';
        if (out_path.empty()) out << weights_to_json(r.best.weights).dump(2) << '\n';
    }
    return 0;
}

int cmd_eval(const std::string& bank_path, const SearchFlags& flags, Format fmt, std::ostream& out) {
    const auto bank = load_bank(bank_path);
    const HeuristicWeights w = flags.weights();
    const SearchConfig cfg = flags.config();
    std::size_t solved = 0;
    Json rows = Json::array();
    if (fmt == Format::Text) out << "id,solved,steps,seconds,expansions,timed_out\n";
    for (const auto& q : bank) {
        const Proof p = astar_solve(q.premise, q.target, w, cfg);
        solved += p.complete ? 1 : 0;
        if (fmt == Format::Json) {
            rows.push_back({{"id", q.id},
                            {"solved", p.complete},
                            {"steps", p.steps.size()},
                            {"seconds", p.stats.elapsed_seconds},
                            {"expansions", p.stats.expansions},
                            {"timed_out", p.stats.timed_out}});
        } else {
            out << q.id << ',' << (p.complete ? 1 : 0) << ',' << p.steps.size() << ',' << std::fixed
                << std::setprecision(4) << p.stats.elapsed_seconds << std::defaultfloat << ',' << p.stats.expansions
                << ',' << (p.stats.timed_out ? 1 : 0) << '\n';
        }
    }
    if (fmt == Format::Json)
        out << Json{{"solved", solved}, {"total", bank.size()}, {"questions", rows}}.dump() << '\n';
    else
        out << "solved " << solved << '/' << bank.size() << '\n';
    return 0;
}

int cmd_bank_check(const std::string& path, Format fmt, std::ostream& out) {
    try {
        const auto bank = load_bank(path);
        std::map<Level, std::size_t> per_level;
        for (const auto& q : bank) ++per_level[q.level];
        if (fmt == Format::Json) {
            Json levels = Json::object();
            for (const auto& [l, n] : per_level) levels[std::string(level_name(l))] = n;
            out << Json{{"ok", true}, {"questions", bank.size()}, {"levels", levels}}.dump() << '\n';
        } else {
            out << "ok: " << bank.size() << " questions";
            for (const auto& [l, n] : per_level) out << ", " << level_name(l) << ' ' << n;
            out << '\n';
        }
        return 0;
    } catch (const NonEquivalentQuestion& e) {
        if (fmt == Format::Json)
            out << Json{{"ok", false}, {"id", e.id()}, {"line", e.line()}, {"error", e.what()}}.dump() << '\n';
        throw CliFailure{e.what()};
    } catch (const BankFormatError& e) {
        if (fmt == Format::Json)
            out << Json{{"ok", false}, {"id", e.id()}, {"line", e.line()}, {"error", e.what()}}.dump() << '\n';
        throw CliFailure{e.what()};
    }
}

struct ServeFlags {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::string bank = EQPROOF_DEFAULT_BANK;
    std::string store;
    bool generation = false;
};

int cmd_serve(const ServeFlags& sf, const SearchFlags& flags, std::ostream& out) {
    QuestionBank bank(load_bank(sf.bank));
    std::unique_ptr<SessionStore> store;
    if (sf.store.empty())
        store = std::make_unique<MemorySessionStore>();
    else
        store = std::make_unique<FileSessionStore>(sf.store);
    Tutor tutor(bank, *store, TutorConfig{flags.weights(), flags.config()});
    ServiceConfig scfg;
    scfg.generation_enabled = sf.generation;
    ApiService service(tutor, scfg);
    HttpServer server(service);
    const int port = server.bind(sf.host, sf.port);
    if (port < 0) throw CliFailure{"cannot bind " + sf.host + ":" + std::to_string(sf.port)};
    out << "listening on http://" << sf.host << ':' << port << " with " << bank.all().size() << " questions"
        << std::endl;
    return server.listen() ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Equivalence proofs for propositional logic: parsing, rewriting, proof search and tutoring.",
                 "eqproof"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string format = "text";
    app.add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    std::string a, b;
    std::vector<std::string> vocab;
    SearchFlags search;

    auto* parse_cmd = app.add_subcommand("parse", "Parse an expression and print its canonical form");
    parse_cmd->add_option("expression", a)->required();

    auto* frontier_cmd = app.add_subcommand("frontier", "List every one-step rewrite of an expression");
    frontier_cmd->add_option("expression", a)->required();
    frontier_cmd->add_option("--vocab", vocab, "Extra variables for rules that introduce atoms")->delimiter(',');

    auto* solve_cmd = app.add_subcommand("solve", "Search for a proof that premise is equivalent to target");
    solve_cmd->add_option("premise", a)->required();
    solve_cmd->add_option("target", b)->required();
    search.attach(solve_cmd);

    std::string hint_level = "rule";
    auto* hint_cmd = app.add_subcommand("hint", "Suggest the next proof step");
    hint_cmd->add_option("current", a)->required();
    hint_cmd->add_option("target", b)->required();
    hint_cmd->add_option("--level", hint_level)->check(CLI::IsMember({"rule", "expression"}))->capture_default_str();
    search.attach(hint_cmd);

    std::size_t steps = 3, count = 1;
    std::uint64_t seed = 0;
    auto* gen_cmd = app.add_subcommand("gen", "Generate questions by random walks from a target");
    gen_cmd->add_option("--target", a)->required();
    gen_cmd->add_option("--steps", steps)->capture_default_str();
    gen_cmd->add_option("--count", count)->capture_default_str();
    gen_cmd->add_option("--seed", seed)->capture_default_str();

    std::string tune_out, tune_history;
    auto* tune_cmd = app.add_subcommand("tune", "Evolve heuristic weights with a genetic algorithm");
    tune_cmd->add_option("config", a, "GA configuration JSON file")->required();
    tune_cmd->add_option("--out", tune_out, "Write the best weights here");
    tune_cmd->add_option("--history", tune_history, "Write per-generation history CSV here");

    auto* eval_cmd = app.add_subcommand("eval", "Score a weight vector on a question bank");
    eval_cmd->add_option("bank", a)->required();
    search.attach(eval_cmd);

    ServeFlags serve;
    auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP API");
    serve_cmd->add_option("--host", serve.host)->envname("EQPROOF_HOST")->capture_default_str();
    serve_cmd->add_option("--port", serve.port)->envname("EQPROOF_PORT")->capture_default_str();
    serve_cmd->add_option("--bank", serve.bank)->envname("EQPROOF_BANK")->capture_default_str();
    serve_cmd->add_option("--store", serve.store, "Session store file (default: in memory)")->envname("EQPROOF_STORE");
    serve_cmd->add_flag("--enable-generation", serve.generation)->envname("EQPROOF_GENERATION");
    search.attach(serve_cmd);
    for (auto* opt : serve_cmd->get_options()) {
        if (opt->get_name() == "--time") opt->envname("EQPROOF_TIME_BUDGET");
        if (opt->get_name() == "--depth") opt->envname("EQPROOF_DEPTH_LIMIT");
        if (opt->get_name() == "--weights") opt->envname("EQPROOF_WEIGHTS");
    }

    auto* check_cmd = app.add_subcommand("bank-check", "Validate a question bank file");
    check_cmd->add_option("bank", a)->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    const Format fmt = format == "json" ? Format::Json : Format::Text;
    try {
        if (parse_cmd->parsed()) return cmd_parse(a, fmt, out);
        if (frontier_cmd->parsed()) return cmd_frontier(a, vocab, fmt, out);
        if (solve_cmd->parsed()) return cmd_solve(a, b, search, fmt, out, err);
        if (hint_cmd->parsed()) return cmd_hint(a, b, hint_level, search, fmt, out);
        if (gen_cmd->parsed()) return cmd_gen(a, steps, count, seed, fmt, out);
        if (tune_cmd->parsed()) return cmd_tune(a, tune_out, tune_history, fmt, out, err);
        if (eval_cmd->parsed()) return cmd_eval(a, search, fmt, out);
        if (serve_cmd->parsed()) return cmd_serve(serve, search, out);
        if (check_cmd->parsed()) return cmd_bank_check(a, fmt, out);
    } catch (const CliFailure& e) {
        err << "error: " << e.message << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

}  // namespace eqproof
