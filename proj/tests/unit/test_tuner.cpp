#include <gtest/gtest.h>

#include <sstream>

#include "eqproof/io.hpp"
#include "eqproof/tuner.hpp"

using namespace eqproof;

namespace {

Question Q(std::string id, std::string_view premise, std::string_view target) {
    return Question{std::move(id), Level::Novice, normalize(parse(premise)), normalize(parse(target)), "test"};
}

std::vector<Question> training() {
    return {Q("a", "¬¬p", "p"), Q("b", "¬p∧¬q", "¬(p∨q)"), Q("c", "¬(p∧¬q)∨q", "¬p∨q"),
            Q("d", "p→(q→r)", "(p∧q)→r"), Q("e", "(p∨q)∧(p∨r)", "p∨(q∧r)")};
}

// Expansion-bounded with a generous clock so results do not depend on speed.
GAConfig small_config(std::uint64_t seed) {
    GAConfig c;
    c.population_size = 6;
    c.generations = 4;
    c.per_question_time = 60;
    c.max_expansions = 60;
    c.elitism = 2;
    c.crossover_prob = 0.8;
    c.mutation_prob = 0.3;
    c.rng_seed = seed;
    c.threads = 1;
    c.training_set = training();
    return c;
}

}  // namespace

TEST(Fitness, CountsSolvedQuestions) {
    const auto qs = training();
    SearchConfig cfg;
    cfg.time_budget = 5;
    EXPECT_EQ(fitness(HeuristicWeights::production(), qs, cfg), qs.size());
    cfg.max_expansions = 1;
    // Only one-step questions finish on the first expansion.
    EXPECT_EQ(fitness(HeuristicWeights::production(), qs, cfg), 3u);
    EXPECT_THROW(fitness(HeuristicWeights::production(), std::span<const Question>{}, cfg), std::invalid_argument);
}

TEST(RandomWeights, InBoundsAndSeeded) {
    for (std::uint64_t s = 0; s < 50; ++s) EXPECT_TRUE(random_weights(s).in_bounds());
    EXPECT_EQ(random_weights(3), random_weights(3));
    EXPECT_NE(random_weights(3), random_weights(4));
}

TEST(GAConfig, Validation) {
    auto c = small_config(1);
    EXPECT_NO_THROW(c.validate());
    c.elitism = c.population_size;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config(1);
    c.crossover_prob = 1.5;
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config(1);
    c.training_set.clear();
    EXPECT_THROW(c.validate(), std::invalid_argument);
    c = small_config(1);
    c.per_question_time = 0;
    EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(Evolve, ElitesCarryOverAndBestNeverDrops) {
    const auto cfg = small_config(11);
    const auto r = evolve(cfg);
    ASSERT_EQ(r.history.size(), cfg.generations);
    for (std::size_t g = 0; g < r.history.size(); ++g) {
        const auto& rec = r.history[g];
        EXPECT_EQ(rec.generation, g);
        ASSERT_EQ(rec.population.size(), cfg.population_size);
        std::size_t total = 0, best = 0;
        for (const auto& ind : rec.population) {
            EXPECT_TRUE(ind.weights.in_bounds());
            EXPECT_LE(ind.fitness, cfg.training_set.size());
            total += ind.fitness;
            best = std::max(best, ind.fitness);
        }
        EXPECT_EQ(rec.best, best);
        EXPECT_DOUBLE_EQ(rec.mean, static_cast<double>(total) / cfg.population_size);
        if (g == 0) continue;
        EXPECT_GE(rec.best, r.history[g - 1].best);
        // The top elitism individuals of the previous generation are present.
        auto prev = r.history[g - 1].population;
        std::stable_sort(prev.begin(), prev.end(), [](const auto& a, const auto& b) { return a.fitness > b.fitness; });
        for (std::size_t e = 0; e < cfg.elitism; ++e) {
            EXPECT_EQ(rec.population[e].weights, prev[e].weights);
            EXPECT_EQ(rec.population[e].fitness, prev[e].fitness);
        }
    }
    EXPECT_EQ(r.best.fitness, r.history.back().best);
}

TEST(Evolve, DeterministicAcrossRunsAndThreadCounts) {
    auto a_cfg = small_config(5);
    auto b_cfg = small_config(5);
    b_cfg.threads = 3;
    const auto a = evolve(a_cfg);
    const auto b = evolve(b_cfg);
    ASSERT_EQ(a.history.size(), b.history.size());
    for (std::size_t g = 0; g < a.history.size(); ++g)
        for (std::size_t i = 0; i < a_cfg.population_size; ++i) {
            EXPECT_EQ(a.history[g].population[i].weights, b.history[g].population[i].weights);
            EXPECT_EQ(a.history[g].population[i].fitness, b.history[g].population[i].fitness);
        }
    EXPECT_EQ(a.best.weights, b.best.weights);
}

TEST(Evolve, AllZeroFitnessFallsBackToUniformParents) {
    auto cfg = small_config(2);
    cfg.training_set = {Q("hard", "p→(q→r)", "(p∧q)→r")};
    cfg.max_expansions = 1;
    cfg.generations = 3;
    std::size_t calls = 0;
    const auto r = evolve(cfg, [&](const GenerationRecord& rec) {
        ++calls;
        EXPECT_TRUE(rec.degenerate);
    });
    EXPECT_EQ(calls, 3u);
    EXPECT_EQ(r.best.fitness, 0u);
}

TEST(ConfigJson, InlineTrainingSet) {
    const Json j = {{"population_size", 4},
                    {"generations", 2},
                    {"elitism", 1},
                    {"rng_seed", 9},
                    {"training_set", Json::array({{{"id", "x"}, {"level", "novice"}, {"premise", "¬¬p"}, {"target", "p"}}})}};
    const auto c = ga_config_from_json(j, ".");
    EXPECT_EQ(c.population_size, 4u);
    EXPECT_EQ(c.generations, 2u);
    EXPECT_EQ(c.rng_seed, 9u);
    ASSERT_EQ(c.training_set.size(), 1u);
    EXPECT_EQ(c.training_set[0].id, "x");
    EXPECT_THROW(ga_config_from_json(Json{{"population_size", 4}}, "."), ConfigError);
    EXPECT_THROW(ga_config_from_json(Json{{"population_size", 4}, {"elitism", 9}, {"training_set", j["training_set"]}}, "."), ConfigError);
}

TEST(WeightsJson, RoundTripAndValidation) {
    const auto w = HeuristicWeights::production();
    EXPECT_EQ(weights_from_json(weights_to_json(w)), w);
    Json bad = weights_to_json(w);
    bad["unitary"] = 11.0;
    EXPECT_THROW(weights_from_json(bad), ConfigError);
    Json unknown = weights_to_json(w);
    unknown["rules"]["ModusPonens"] = 1.0;
    EXPECT_THROW(weights_from_json(unknown), ConfigError);
}

TEST(HistoryCsv, Format) {
    std::vector<GenerationRecord> h(2);
    h[0].generation = 0;
    h[0].best = 3;
    h[0].mean = 1.5;
    h[1].generation = 1;
    h[1].best = 4;
    h[1].mean = 2;
    std::ostringstream out;
    write_history_csv(out, h);
    EXPECT_EQ(out.str(), "generation,best,mean\n0,3,1.5\n1,4,2\n");
}
