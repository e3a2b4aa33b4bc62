#pragma once

#include <cstdint>
#include <filesystem>
#include <random>
#include <span>
#include <vector>

#include <json.hpp>

#include "costboost/boost.hpp"
#include "costboost/data.hpp"

namespace costboost {

struct GAConfig {
    int population_size = 10;
    int generations = 10;
    double cost_low = 0.95;
    double cost_high = 0.999;
    double fixed_minority_cost = 0.999;
    double mutation_scale = 0.001;
    std::uint64_t seed = 7;
    bool elitism = true;

    void validate() const;
};

void to_json(nlohmann::json& j, const GAConfig& c);
void from_json(const nlohmann::json& j, GAConfig& c);

struct Generation {
    std::vector<CostVector> members;
    std::vector<double> fitness;
    double best_fitness = 0.0;
    std::size_t best_member = 0;
};

struct GATrace {
    /// Entry 0 is the initial population; one more per generation.
    std::vector<Generation> generations;
};

/// Columns: generation,member,cost_1..cost_K,mavg.
void write_ga_trace_csv(const GATrace& trace, const std::filesystem::path& path);

/// Class whose cost stays pinned: fewest training samples, ties to the
/// higher class index.
int rarest_class(const Dataset& ds);

/// Index drawn with probability fitness[i] / sum(fitness); uniform when all
/// fitness is zero.
std::size_t roulette_select(std::span<const double> fitness, std::mt19937_64& rng);

/// Element-wise arithmetic mean.
CostVector crossover(const CostVector& a, const CostVector& b);

/// Adds Uniform(-mutation_scale, +mutation_scale) to every entry except
/// `fixed_class`, clamping into [cost_low, cost_high].
CostVector mutate(const CostVector& v, const GAConfig& ga, int fixed_class, std::mt19937_64& rng);

/// Fitness of one cost vector: validation MAvG of a SAMME.C2 fit on `train`.
double cost_fitness(const Dataset& train, const Dataset& val, int rounds, const CostVector& costs);

struct TuneResult {
    CostVector best;
    double best_fitness = 0.0;
    GATrace trace;
};

/// Genetic search over cost vectors maximizing validation MAvG of SAMME.C2.
/// Deterministic given `ga.seed`. Throws DataError when `val` lacks a class.
TuneResult tune_costs(const Dataset& train, const Dataset& val, int boost_rounds, const GAConfig& ga);

}  // namespace costboost
