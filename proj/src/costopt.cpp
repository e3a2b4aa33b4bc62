#include "costboost/costopt.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <optional>
#include <string>

#include "costboost/error.hpp"
#include "costboost/metrics.hpp"

namespace costboost {

void GAConfig::validate() const {
    if (population_size < 2) throw ConfigError("population_size must be at least 2");
    if (generations < 0) throw ConfigError("generations must be non-negative");
    if (!(cost_low > 0.0 && cost_low < cost_high && cost_high <= 1.0)) {
        throw ConfigError("costs bounds must satisfy 0 < cost_low < cost_high <= 1");
    }
    if (!(fixed_minority_cost > 0.0 && fixed_minority_cost <= 1.0)) {
        throw ConfigError("fixed_minority_cost must lie in (0, 1]");
    }
    if (!(mutation_scale > 0.0)) throw ConfigError("mutation_scale must be positive");
}

void to_json(nlohmann::json& j, const GAConfig& c) {
    j = nlohmann::json{{"population_size", c.population_size},
                       {"generations", c.generations},
                       {"cost_low", c.cost_low},
                       {"cost_high", c.cost_high},
                       {"fixed_minority_cost", c.fixed_minority_cost},
                       {"mutation_scale", c.mutation_scale},
                       {"seed", c.seed},
                       {"elitism", c.elitism}};
}

void from_json(const nlohmann::json& j, GAConfig& c) {
    c.population_size = j.value("population_size", c.population_size);
    c.generations = j.value("generations", c.generations);
    c.cost_low = j.value("cost_low", c.cost_low);
    c.cost_high = j.value("cost_high", c.cost_high);
    c.fixed_minority_cost = j.value("fixed_minority_cost", c.fixed_minority_cost);
    c.mutation_scale = j.value("mutation_scale", c.mutation_scale);
    c.seed = j.value("seed", c.seed);
    c.elitism = j.value("elitism", c.elitism);
}

void write_ga_trace_csv(const GATrace& trace, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    std::size_t k = 0;
    if (!trace.generations.empty() && !trace.generations.front().members.empty()) {
        k = trace.generations.front().members.front().size();
    }
    std::string text = "generation,member";
    for (std::size_t c = 1; c <= k; ++c) text += ",cost_" + std::to_string(c);
    text += ",mavg\n";
    auto real = [](double v) {
        char buf[64];
        auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, ptr);
    };
    for (std::size_t g = 0; g < trace.generations.size(); ++g) {
        const auto& gen = trace.generations[g];
        for (std::size_t m = 0; m < gen.members.size(); ++m) {
            text += std::to_string(g) + ',' + std::to_string(m);
            for (double v : gen.members[m].values()) text += ',' + real(v);
            text += ',' + real(gen.fitness[m]) + '\n';
        }
    }
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

int rarest_class(const Dataset& ds) {
    const auto& counts = ds.class_counts();
    std::size_t best = 0;
    for (std::size_t k = 1; k < counts.size(); ++k) {
        if (counts[k] <= counts[best]) best = k;
    }
    return static_cast<int>(best) + 1;
}

std::size_t roulette_select(std::span<const double> fitness, std::mt19937_64& rng) {
    if (fitness.empty()) throw ContractError("roulette over an empty population");
    double total = 0.0;
    for (double f : fitness) {
        if (!(f >= 0.0) || !std::isfinite(f)) throw ContractError("roulette fitness must be non-negative");
        total += f;
    }
    if (total == 0.0) {
        std::uniform_int_distribution<std::size_t> pick(0, fitness.size() - 1);
        return pick(rng);
    }
    std::uniform_real_distribution<double> spin(0.0, total);
    const double r = spin(rng);
    double acc = 0.0;
    std::size_t last_positive = 0;
    for (std::size_t i = 0; i < fitness.size(); ++i) {
        if (fitness[i] <= 0.0) continue;
        acc += fitness[i];
        last_positive = i;
        if (r < acc) return i;
    }
    return last_positive;  // r landed on the rounding slack at the top
}

CostVector crossover(const CostVector& a, const CostVector& b) {
    if (a.size() != b.size()) throw ContractError("crossover of cost vectors with different K");
    std::vector<double> child(a.size());
    for (std::size_t k = 0; k < child.size(); ++k) child[k] = (a.values()[k] + b.values()[k]) / 2.0;
    return CostVector(std::move(child));
}

CostVector mutate(const CostVector& v, const GAConfig& ga, int fixed_class, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> jitter(-ga.mutation_scale, ga.mutation_scale);
    std::vector<double> out(v.values());
    for (std::size_t k = 0; k < out.size(); ++k) {
        if (static_cast<int>(k) + 1 == fixed_class) continue;
        out[k] = std::clamp(out[k] + jitter(rng), ga.cost_low, ga.cost_high);
    }
    return CostVector(std::move(out));
}

namespace {

void require_all_classes(const Dataset& val) {
    const auto& counts = val.class_counts();
    for (std::size_t k = 0; k < counts.size(); ++k) {
        if (counts[k] == 0) {
            throw DataError("validation split has no samples of class " + std::to_string(k + 1) +
                            "; MAvG is undefined");
        }
    }
}

}  // namespace

double cost_fitness(const Dataset& train, const Dataset& val, int rounds, const CostVector& costs) {
    require_all_classes(val);
    FitOptions opts;
    opts.variant = Variant::SAMMEC2;
    opts.rounds = rounds;
    opts.costs = costs;
    const auto result = fit(train, opts);
    if (result.model.rounds.empty()) return 0.0;
    const auto preds = result.model.predict(val);
    return evaluate_predictions(val.labels(), preds, val.num_classes()).mavg;
}

TuneResult tune_costs(const Dataset& train, const Dataset& val, int boost_rounds, const GAConfig& ga) {
    ga.validate();
    if (train.num_classes() != val.num_classes() || train.num_features() != val.num_features()) {
        throw ContractError("training and validation sets differ in K or d");
    }
    require_all_classes(val);

    const int k = train.num_classes();
    const int fixed = rarest_class(train);
    const auto m = static_cast<std::size_t>(ga.population_size);
    std::mt19937_64 rng(ga.seed);
    std::uniform_real_distribution<double> draw(ga.cost_low, ga.cost_high);

    Generation current;
    for (std::size_t i = 0; i < m; ++i) {
        std::vector<double> v(static_cast<std::size_t>(k));
        for (int c = 1; c <= k; ++c) v[static_cast<std::size_t>(c - 1)] = c == fixed ? ga.fixed_minority_cost : draw(rng);
        current.members.emplace_back(std::move(v));
    }

    // Fitness values already known for members copied forward unchanged.
    std::vector<std::optional<double>> known(m);

    TuneResult result;
    result.best_fitness = -1.0;
    for (int g = 0; g <= ga.generations; ++g) {
        current.fitness.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            current.fitness[i] = known[i] ? *known[i] : cost_fitness(train, val, boost_rounds, current.members[i]);
        }
        current.best_member = static_cast<std::size_t>(
            std::max_element(current.fitness.begin(), current.fitness.end()) - current.fitness.begin());
        current.best_fitness = current.fitness[current.best_member];
        if (current.best_fitness > result.best_fitness) {
            result.best_fitness = current.best_fitness;
            result.best = current.members[current.best_member];
        }
        result.trace.generations.push_back(current);
        if (g == ga.generations) break;

        Generation next;
        std::fill(known.begin(), known.end(), std::nullopt);
        if (ga.elitism) {
            next.members.push_back(current.members[current.best_member]);
            known[0] = current.best_fitness;
        }
        while (next.members.size() < m) {
            const auto a = roulette_select(current.fitness, rng);
            const auto b = roulette_select(current.fitness, rng);
            next.members.push_back(mutate(crossover(current.members[a], current.members[b]), ga, fixed, rng));
        }
        current = std::move(next);
    }
    return result;
}

}  // namespace costboost
