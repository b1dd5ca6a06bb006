#include "eqproof/tuner.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <numeric>
#include <stdexcept>
#include <thread>

#include "eqproof/random.hpp"

namespace eqproof {

void GAConfig::validate() const {
    if (population_size == 0) throw std::invalid_argument("population_size must be positive");
    if (generations == 0) throw std::invalid_argument("generations must be positive");
    if (elitism >= population_size) throw std::invalid_argument("elitism must be smaller than population_size");
    if (!(per_question_time > 0.0)) throw std::invalid_argument("per_question_time must be positive");
    if (!(crossover_prob >= 0.0 && crossover_prob <= 1.0))
        throw std::invalid_argument("crossover_prob must lie in [0, 1]");
    if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
        throw std::invalid_argument("mutation_prob must lie in [0, 1]");
    if (training_set.empty()) throw std::invalid_argument("training_set must not be empty");
    search_config().validate();
}

SearchConfig GAConfig::search_config() const {
    SearchConfig s;
    s.time_budget = per_question_time;
    s.depth_limit = depth_limit;
    s.max_expansions = max_expansions;
    s.max_tokens = max_tokens;
    return s;
}

std::size_t fitness(const HeuristicWeights& w, std::span<const Question> questions, const SearchConfig& cfg) {
    if (questions.empty()) throw std::invalid_argument("fitness needs at least one question");
    std::size_t solved = 0;
    for (const auto& q : questions) solved += astar_solve(q.premise, q.target, w, cfg).complete ? 1 : 0;
    return solved;
}

std::size_t fitness(const HeuristicWeights& w, std::span<const Question> questions, double time_budget) {
    SearchConfig cfg;
    cfg.time_budget = time_budget;
    return fitness(w, questions, cfg);
}

namespace {

using Genes = std::array<double, HeuristicWeights::kGeneCount>;

Genes random_genes(Rng& rng) {
    Genes g;
    for (auto& x : g) x = uniform_real(rng, kWeightMin, kWeightMax);
    return g;
}

// Cumulative-sum roulette over slot order; uniform when every fitness is 0.
std::size_t select_parent(const std::vector<Individual>& pop, std::size_t total, Rng& rng) {
    if (total == 0) return uniform_index(rng, pop.size());
    const double x = uniform_unit(rng) * static_cast<double>(total);
    double acc = 0.0;
    for (std::size_t i = 0; i < pop.size(); ++i) {
        acc += static_cast<double>(pop[i].fitness);
        if (x < acc) return i;
    }
    return pop.size() - 1;
}

void evaluate_all(std::vector<Individual>& pop, std::vector<bool>& pending, std::span<const Question> questions,
                  const SearchConfig& scfg, unsigned threads) {
    std::vector<std::size_t> todo;
    for (std::size_t i = 0; i < pop.size(); ++i)
        if (pending[i]) todo.push_back(i);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t k; (k = next.fetch_add(1)) < todo.size();)
            pop[todo[k]].fitness = fitness(pop[todo[k]].weights, questions, scfg);
    };
    const unsigned n = std::min<std::size_t>(threads, todo.size());
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
    }
    for (auto i : todo) pending[i] = false;
}

}  // namespace

HeuristicWeights random_weights(std::uint64_t seed) {
    Rng rng(seed);
    return HeuristicWeights::from_genes(random_genes(rng));
}

EvolveResult evolve(const GAConfig& cfg, const std::function<void(const GenerationRecord&)>& on_generation) {
    cfg.validate();
    const SearchConfig scfg = cfg.search_config();
    const unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());

    std::vector<Individual> pop(cfg.population_size);
    std::vector<bool> pending(cfg.population_size, true);
    for (std::size_t i = 0; i < pop.size(); ++i) {
        Rng rng(derive_seed(cfg.rng_seed, 0, i));
        pop[i].weights = HeuristicWeights::from_genes(random_genes(rng));
    }

    // Identical genomes always score the same within a run.
    std::map<Genes, std::size_t> seen;

    EvolveResult result;
    bool have_best = false;
    for (std::size_t gen = 0; gen < cfg.generations; ++gen) {
        for (std::size_t i = 0; i < pop.size(); ++i) {
            if (!pending[i]) continue;
            if (auto it = seen.find(pop[i].weights.genes()); it != seen.end()) {
                pop[i].fitness = it->second;
                pending[i] = false;
            }
        }
        evaluate_all(pop, pending, cfg.training_set, scfg, threads);
        for (const auto& ind : pop) seen.emplace(ind.weights.genes(), ind.fitness);

        GenerationRecord rec;
        rec.generation = gen;
        std::size_t total = 0;
        for (const auto& ind : pop) {
            total += ind.fitness;
            rec.best = std::max(rec.best, ind.fitness);
            if (!have_best || ind.fitness > result.best.fitness) {
                result.best = ind;
                have_best = true;
            }
        }
        rec.mean = static_cast<double>(total) / static_cast<double>(pop.size());
        rec.degenerate = total == 0;
        rec.population = pop;
        if (on_generation) on_generation(rec);
        result.history.push_back(std::move(rec));
        if (gen + 1 == cfg.generations) break;

        std::vector<std::size_t> order(pop.size());
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return pop[a].fitness > pop[b].fitness; });

        std::vector<Individual> next(pop.size());
        std::vector<bool> next_pending(pop.size(), true);
        for (std::size_t s = 0; s < cfg.elitism; ++s) {
            next[s] = pop[order[s]];
            next_pending[s] = false;
        }
        for (std::size_t s = cfg.elitism; s < pop.size(); ++s) {
            // One stream per offspring slot keeps results independent of
            // evaluation order and thread count.
            Rng rng(derive_seed(cfg.rng_seed, gen + 1, s));
            const Genes a = pop[select_parent(pop, total, rng)].weights.genes();
            const Genes b = pop[select_parent(pop, total, rng)].weights.genes();
            Genes child = a;
            if (uniform_unit(rng) < cfg.crossover_prob)
                for (std::size_t k = 0; k < child.size(); ++k) child[k] = (rng() & 1) ? a[k] : b[k];
            if (uniform_unit(rng) < cfg.mutation_prob)
                child[uniform_index(rng, child.size())] = uniform_real(rng, kWeightMin, kWeightMax);
            next[s].weights = HeuristicWeights::from_genes(child);
        }
        pop = std::move(next);
        pending = std::move(next_pending);
    }
    return result;
}

}  // namespace eqproof
