#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "costboost/boost.hpp"
#include "costboost/costopt.hpp"
#include "costboost/data.hpp"

namespace costboost::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kIoError = 2, kContractError = 3, kDataError = 4 };

/// Every setting any subcommand reads. The JSON form is flat and each key is
/// also a command-line flag of the same name.
struct ExperimentConfig {
    SynthConfig synth;
    Variant variant = Variant::SAMMEC2;
    int rounds = 300;
    std::optional<CostVector> costs;
    bool tune = false;
    GAConfig ga;  // its seed is the "ga_seed" key
    double val_fraction = 0.2;
    std::uint64_t split_seed = 11;
    double test_fraction = 0.25;
    int k_folds = 5;
    std::uint64_t fold_seed = 5;
    std::vector<int> tree_counts{50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000};

    std::string data;
    std::string test;
    std::string out;
    std::string test_out;
    std::string model;
    std::string trace;
    std::string recall_trace;
    std::string ga_trace;
};

/// Named defaults: "desk" (10,000 x 10, T=300) and "paper" (100,000 x 50, T=1000).
nlohmann::json preset(const std::string& name);

/// Builds a config from a flat JSON document layered over the "desk" preset
/// (or the preset named by its "preset" key). Unknown keys raise ConfigError.
ExperimentConfig config_from_json(const nlohmann::json& doc);
nlohmann::json config_to_json(const ExperimentConfig& c);

struct SweepRow {
    int n_trees = 0;
    double cv_mavg = 0.0;
    double cv_accuracy = 0.0;
    std::optional<CostVector> costs;  // costs used at this count, when cost-sensitive
};

/// k-fold CV of `cfg.variant` at every tree count. SAMME.C2 without fixed
/// costs re-tunes them for each count on a stratified split of `ds`. Rows for
/// different counts are independent of each other.
std::vector<SweepRow> cv_sweep(const Dataset& ds, const ExperimentConfig& cfg);

/// Parses `args` (without the program name) and runs one subcommand.
int run(std::span<const std::string> args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace costboost::cli
