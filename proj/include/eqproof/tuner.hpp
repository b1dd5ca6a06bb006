#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "eqproof/bank.hpp"
#include "eqproof/search.hpp"

namespace eqproof {

struct GAConfig {
    std::size_t population_size = 20;
    std::size_t generations = 8;
    double per_question_time = 1.0;  // seconds, the search time budget per question
    std::vector<Question> training_set;
    std::size_t elitism = 3;
    double crossover_prob = 0.8;
    double mutation_prob = 0.5;
    std::uint64_t rng_seed = 0;

    // Search limits applied during fitness evaluation besides the time budget.
    // A tight max_expansions with a generous time budget makes fitness
    // independent of machine speed.
    int depth_limit = 10;
    std::size_t max_expansions = 50'000;
    std::size_t max_tokens = 0;  // see SearchConfig::max_tokens

    unsigned threads = 0;  // 0 = hardware concurrency

    void validate() const;
    SearchConfig search_config() const;
};

struct Individual {
    HeuristicWeights weights;
    std::size_t fitness = 0;
};

struct GenerationRecord {
    std::size_t generation = 0;
    std::size_t best = 0;
    double mean = 0.0;
    bool degenerate = false;  // every fitness was 0; parents were drawn uniformly
    std::vector<Individual> population;  // evaluated, in slot order
};

struct EvolveResult {
    Individual best;  // fittest individual ever evaluated, earliest on ties
    std::vector<GenerationRecord> history;
};

/// Number of questions astar_solve completes under `cfg`.
std::size_t fitness(const HeuristicWeights& w, std::span<const Question> questions, const SearchConfig& cfg);
std::size_t fitness(const HeuristicWeights& w, std::span<const Question> questions, double time_budget);

/// Uniform sample of every gene in [kWeightMin, kWeightMax].
HeuristicWeights random_weights(std::uint64_t seed);

EvolveResult evolve(const GAConfig& cfg, const std::function<void(const GenerationRecord&)>& on_generation = {});

}  // namespace eqproof
