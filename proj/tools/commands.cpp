#include "commands.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "costboost/error.hpp"
#include "costboost/metrics.hpp"

namespace costboost::cli {

namespace {

using nlohmann::json;

enum class Kind { Int, UInt, Real, Bool, Text, RealList, IntList };

struct Key {
    const char* name;
    Kind kind;
    const char* help;
};

const std::vector<Key>& keys() {
    static const std::vector<Key> table{
        {"preset", Kind::Text, "named defaults: desk or paper"},
        {"n_samples", Kind::UInt, "synthetic sample count"},
        {"n_features", Kind::UInt, "synthetic feature count"},
        {"n_informative", Kind::UInt, "features carrying class signal"},
        {"n_classes", Kind::Int, "number of classes K"},
        {"clusters_per_class", Kind::UInt, "Gaussian clusters per class"},
        {"class_sep", Kind::Real, "cluster center spacing"},
        {"weights", Kind::RealList, "class proportions, comma separated"},
        {"seed", Kind::UInt, "generator seed"},
        {"variant", Kind::Text, "AdaBoostM1, AdaC2, SAMME or SAMMEC2"},
        {"rounds", Kind::Int, "boosting rounds T"},
        {"costs", Kind::RealList, "per-class costs, comma separated"},
        {"tune", Kind::Bool, "tune SAMME.C2 costs with the genetic search first"},
        {"population_size", Kind::Int, "GA population size M"},
        {"generations", Kind::Int, "GA generations P"},
        {"cost_low", Kind::Real, "lower bound for tuned costs"},
        {"cost_high", Kind::Real, "upper bound for tuned costs"},
        {"fixed_minority_cost", Kind::Real, "cost pinned on the rarest class"},
        {"mutation_scale", Kind::Real, "half-width of the mutation jitter"},
        {"ga_seed", Kind::UInt, "GA seed"},
        {"elitism", Kind::Bool, "carry the best member forward"},
        {"val_fraction", Kind::Real, "validation share of the tuning split"},
        {"split_seed", Kind::UInt, "seed of train/validation and train/test splits"},
        {"test_fraction", Kind::Real, "test share written by simulate --test_out"},
        {"k_folds", Kind::Int, "cross-validation folds"},
        {"fold_seed", Kind::UInt, "fold assignment seed"},
        {"tree_counts", Kind::IntList, "tree counts to sweep, comma separated"},
        {"data", Kind::Text, "input dataset CSV"},
        {"test", Kind::Text, "held-out dataset CSV"},
        {"out", Kind::Text, "primary output file"},
        {"test_out", Kind::Text, "second CSV for a train/test split"},
        {"model", Kind::Text, "model JSON"},
        {"trace", Kind::Text, "per-iteration trace CSV"},
        {"recall_trace", Kind::Text, "per-iteration recall CSV"},
        {"ga_trace", Kind::Text, "GA trace CSV"},
    };
    return table;
}

const char* type_label(Kind kind) {
    switch (kind) {
        case Kind::Int: return "INT";
        case Kind::UInt: return "UINT";
        case Kind::Real: return "REAL";
        case Kind::Bool: return "";
        case Kind::Text: return "TEXT";
        case Kind::RealList: return "REAL,...";
        case Kind::IntList: return "INT,...";
    }
    return "";
}

const Key* find_key(const std::string& name) {
    for (const auto& k : keys()) {
        if (name == k.name) return &k;
    }
    return nullptr;
}

template <typename T>
T parse_number(const std::string& key, std::string_view text) {
    T v{};
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ConfigError("--" + key + ": cannot parse '" + std::string(text) + "'");
    }
    return v;
}

json flag_value(const Key& key, const std::string& text) {
    const std::string name = key.name;
    auto list = [&](auto parse) {
        json arr = json::array();
        std::string_view rest = text;
        while (true) {
            const auto comma = rest.find(',');
            arr.push_back(parse(rest.substr(0, comma)));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        return arr;
    };
    switch (key.kind) {
        case Kind::Int: return parse_number<long long>(name, text);
        case Kind::UInt: return parse_number<unsigned long long>(name, text);
        case Kind::Real: return parse_number<double>(name, text);
        case Kind::Bool:
            if (text == "true" || text == "1") return true;
            if (text == "false" || text == "0") return false;
            throw ConfigError("--" + name + ": expected true or false");
        case Kind::Text: return text;
        case Kind::RealList: return list([&](std::string_view s) { return parse_number<double>(name, s); });
        case Kind::IntList: return list([&](std::string_view s) { return parse_number<long long>(name, s); });
    }
    return nullptr;
}

template <typename T>
T get(const json& doc, const char* key) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(std::string("config key '") + key + "' has the wrong type");
    }
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw LoadError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw LoadError(path + ": " + e.what());
    }
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path);
    out << text;
    if (!out) throw IoError("failed writing " + path);
}

std::string fixed4(double v) {
    std::ostringstream s;
    s.setf(std::ios::fixed);
    s.precision(4);
    s << v;
    return s.str();
}

void require(const std::string& value, const char* key) {
    if (value.empty()) throw ConfigError(std::string("--") + key + " is required");
}

void require_same_shape(const Dataset& a, const Dataset& b, const std::string& what) {
    if (a.num_features() != b.num_features() || a.num_classes() != b.num_classes()) {
        throw ContractError(what + " has d=" + std::to_string(b.num_features()) + ", K=" +
                            std::to_string(b.num_classes()) + " but training data has d=" +
                            std::to_string(a.num_features()) + ", K=" + std::to_string(a.num_classes()));
    }
}

TuneResult tune_on(const Dataset& ds, const ExperimentConfig& cfg, int rounds) {
    auto [train, val] = train_test_split(ds, 1.0 - cfg.val_fraction, cfg.split_seed);
    return tune_costs(train, val, rounds, cfg.ga);
}

// ---- subcommands ----------------------------------------------------------

int cmd_simulate(const ExperimentConfig& cfg, std::ostream& out) {
    require(cfg.out, "out");
    const Dataset ds = generate_synthetic(cfg.synth);
    if (cfg.test_out.empty()) {
        save_csv(ds, cfg.out);
    } else {
        auto [train, test] = train_test_split(ds, 1.0 - cfg.test_fraction, cfg.split_seed);
        save_csv(train, cfg.out);
        save_csv(test, cfg.test_out);
    }
    const auto& counts = ds.class_counts();
    out << "wrote " << ds.size() << " samples x " << ds.num_features() << " features\n";
    for (std::size_t k = 0; k < counts.size(); ++k) {
        out << "class " << k + 1 << ": " << counts[k] << " ("
            << fixed4(static_cast<double>(counts[k]) / static_cast<double>(ds.size())) << ")\n";
    }
    return kOk;
}

int cmd_train(const ExperimentConfig& cfg, std::ostream& out) {
    require(cfg.data, "data");
    require(cfg.model, "model");
    const Dataset train = load_csv(cfg.data);
    std::optional<Dataset> test;
    if (!cfg.test.empty()) {
        test = load_csv(cfg.test);
        require_same_shape(train, *test, cfg.test);
    }
    if (!cfg.recall_trace.empty() && !test) throw ConfigError("--recall_trace needs --test");
    check_variant_classes(cfg.variant, train.num_classes());

    FitOptions opts;
    opts.variant = cfg.variant;
    opts.rounds = cfg.rounds;
    opts.eval = test ? &*test : nullptr;
    if (is_cost_sensitive(cfg.variant)) {
        if (cfg.tune && cfg.costs) throw ConfigError("give either --costs or --tune, not both");
        if (cfg.tune) {
            if (cfg.variant != Variant::SAMMEC2) throw ConfigError("--tune is defined for SAMMEC2 only");
            auto tuned = tune_on(train, cfg, cfg.rounds);
            if (!cfg.ga_trace.empty()) write_ga_trace_csv(tuned.trace, cfg.ga_trace);
            out << "tuned costs (validation MAvG " << fixed4(tuned.best_fitness) << ")\n";
            opts.costs = tuned.best;
        } else if (cfg.costs) {
            opts.costs = cfg.costs;
        } else {
            throw ConfigError(std::string(to_string(cfg.variant)) + " needs per-class costs: pass --costs or --tune");
        }
        if (opts.costs->size() != static_cast<std::size_t>(train.num_classes())) {
            throw ContractError("costs has " + std::to_string(opts.costs->size()) + " entries but data has K=" +
                                std::to_string(train.num_classes()));
        }
    } else if (cfg.costs || cfg.tune) {
        throw ConfigError(std::string(to_string(cfg.variant)) + " does not use costs");
    }

    const FitResult result = fit(train, opts);
    write_text(cfg.model, json(result.model).dump(2) + "\n");
    if (!cfg.trace.empty()) write_trace_csv(result.trace, cfg.trace);
    if (!cfg.recall_trace.empty()) write_recall_csv(result.trace, train.num_classes(), cfg.recall_trace);

    out << to_string(cfg.variant) << ": " << result.model.rounds.size() << " rounds, "
        << to_string(result.trace.termination) << "\n";
    if (is_cost_sensitive(cfg.variant)) {
        out << "costs:";
        for (double c : result.model.costs.values()) out << ' ' << c;
        out << "\n";
    }
    if (test) {
        const auto report = evaluate_predictions(test->labels(), result.model.predict(*test), test->num_classes());
        out << "test error " << fixed4(report.test_error) << ", MAvG " << fixed4(report.mavg) << ", recalls";
        for (double r : report.recalls) out << ' ' << fixed4(r);
        out << "\n";
    }
    return kOk;
}

int cmd_tune(const ExperimentConfig& cfg, std::ostream& out) {
    require(cfg.data, "data");
    require(cfg.out, "out");
    const Dataset ds = load_csv(cfg.data);
    const TuneResult tuned = tune_on(ds, cfg, cfg.rounds);
    const json doc{{"costs", tuned.best.values()}, {"mavg", tuned.best_fitness}};
    write_text(cfg.out, doc.dump(2) + "\n");
    if (!cfg.ga_trace.empty()) write_ga_trace_csv(tuned.trace, cfg.ga_trace);
    for (std::size_t g = 0; g < tuned.trace.generations.size(); ++g) {
        out << "generation " << g << ": best MAvG " << fixed4(tuned.trace.generations[g].best_fitness) << "\n";
    }
    out << "best costs:";
    for (double c : tuned.best.values()) out << ' ' << c;
    out << "\n";
    return kOk;
}

int cmd_cv_sweep(const ExperimentConfig& cfg, std::ostream& out) {
    require(cfg.data, "data");
    require(cfg.out, "out");
    const Dataset ds = load_csv(cfg.data);
    const auto rows = cv_sweep(ds, cfg);
    std::ostringstream csv;
    csv.precision(17);
    csv << "n_trees,cv_mavg,cv_accuracy\n";
    for (const auto& r : rows) {
        csv << r.n_trees << ',' << r.cv_mavg << ',' << r.cv_accuracy << '\n';
        out << r.n_trees << " trees: MAvG " << fixed4(r.cv_mavg) << ", accuracy " << fixed4(r.cv_accuracy) << "\n";
    }
    write_text(cfg.out, csv.str());
    return kOk;
}

int cmd_evaluate(const ExperimentConfig& cfg, std::ostream& out) {
    require(cfg.model, "model");
    require(cfg.data, "data");
    EnsembleModel model;
    try {
        model = read_json_file(cfg.model).get<EnsembleModel>();
    } catch (const json::exception& e) {
        throw LoadError(cfg.model + ": " + e.what());
    } catch (const ContractError& e) {
        throw LoadError(cfg.model + ": " + e.what());
    } catch (const DomainError& e) {
        throw LoadError(cfg.model + ": " + e.what());
    }
    const Dataset ds = load_csv(cfg.data);
    if (ds.num_features() != model.num_features) {
        throw ContractError("model expects d=" + std::to_string(model.num_features) + " but data has d=" +
                            std::to_string(ds.num_features()));
    }
    if (ds.num_classes() != model.num_classes) {
        throw ContractError("model expects K=" + std::to_string(model.num_classes) + " but data has K=" +
                            std::to_string(ds.num_classes()));
    }
    const auto report = evaluate_predictions(ds.labels(), model.predict(ds), ds.num_classes());
    const std::string text = json(report).dump(2) + "\n";
    if (cfg.out.empty()) {
        out << text;
    } else {
        write_text(cfg.out, text);
    }
    return kOk;
}

// Keys each subcommand accepts as flags (the config file may carry others).
const std::map<std::string, std::vector<std::string>>& command_keys() {
    static const std::vector<std::string> synth{"n_samples", "n_features", "n_informative", "n_classes",
                                                "clusters_per_class", "class_sep", "weights", "seed"};
    static const std::vector<std::string> ga{"population_size", "generations", "cost_low", "cost_high",
                                             "fixed_minority_cost", "mutation_scale", "ga_seed", "elitism",
                                             "val_fraction", "split_seed", "ga_trace"};
    auto join = [](std::vector<std::string> a, const std::vector<std::string>& b) {
        a.insert(a.end(), b.begin(), b.end());
        return a;
    };
    static const std::map<std::string, std::vector<std::string>> table{
        {"simulate", join(synth, {"out", "test_out", "test_fraction", "split_seed"})},
        {"train", join(ga, {"data", "test", "variant", "rounds", "costs", "tune", "model", "trace", "recall_trace"})},
        {"tune", join(ga, {"data", "rounds", "out"})},
        {"cv-sweep", join(ga, {"data", "variant", "costs", "k_folds", "fold_seed", "tree_counts", "out"})},
        {"evaluate", {"model", "data", "out"}},
    };
    return table;
}

}  // namespace

json preset(const std::string& name) {
    if (name == "desk") {
        return json{{"n_samples", 10000}, {"n_features", 10}, {"n_informative", 3}, {"rounds", 300}};
    }
    if (name == "paper") {
        return json{{"n_samples", 100000}, {"n_features", 50}, {"n_informative", 50}, {"rounds", 1000}};
    }
    throw ConfigError("unknown preset '" + name + "' (expected desk or paper)");
}

ExperimentConfig config_from_json(const json& input) {
    if (!input.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [key, value] : input.items()) {
        if (!find_key(key)) throw ConfigError("unknown config key '" + key + "'");
    }
    json doc = preset(input.contains("preset") ? get<std::string>(input, "preset") : "desk");
    doc.update(input);

    ExperimentConfig c;
    json synth = json::object();
    for (const char* k : {"n_samples", "n_features", "n_informative", "n_classes", "clusters_per_class", "class_sep",
                          "weights", "seed"}) {
        if (doc.contains(k)) synth[k] = doc[k];
    }
    json ga = json::object();
    for (const char* k : {"population_size", "generations", "cost_low", "cost_high", "fixed_minority_cost",
                          "mutation_scale", "elitism"}) {
        if (doc.contains(k)) ga[k] = doc[k];
    }
    if (doc.contains("ga_seed")) ga["seed"] = doc["ga_seed"];
    try {
        c.synth = synth.get<SynthConfig>();
        c.ga = ga.get<GAConfig>();
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config value: ") + e.what());
    }
    // A class count given without weights gets uniform proportions.
    if (doc.contains("n_classes") && !doc.contains("weights")) {
        c.synth.weights.assign(static_cast<std::size_t>(c.synth.n_classes), 1.0 / c.synth.n_classes);
    }

    if (doc.contains("variant")) c.variant = parse_variant(get<std::string>(doc, "variant"));
    if (doc.contains("rounds")) c.rounds = get<int>(doc, "rounds");
    if (doc.contains("costs") && !doc["costs"].is_null()) c.costs = CostVector(get<std::vector<double>>(doc, "costs"));
    if (doc.contains("tune")) c.tune = get<bool>(doc, "tune");
    if (doc.contains("val_fraction")) c.val_fraction = get<double>(doc, "val_fraction");
    if (doc.contains("split_seed")) c.split_seed = get<std::uint64_t>(doc, "split_seed");
    if (doc.contains("test_fraction")) c.test_fraction = get<double>(doc, "test_fraction");
    if (doc.contains("k_folds")) c.k_folds = get<int>(doc, "k_folds");
    if (doc.contains("fold_seed")) c.fold_seed = get<std::uint64_t>(doc, "fold_seed");
    if (doc.contains("tree_counts")) c.tree_counts = get<std::vector<int>>(doc, "tree_counts");
    for (auto [key, field] : {std::pair{"data", &c.data}, {"test", &c.test}, {"out", &c.out},
                              {"test_out", &c.test_out}, {"model", &c.model}, {"trace", &c.trace},
                              {"recall_trace", &c.recall_trace}, {"ga_trace", &c.ga_trace}}) {
        if (doc.contains(key)) *field = get<std::string>(doc, key);
    }

    if (c.rounds < 1) throw ConfigError("rounds must be at least 1");
    if (!(c.val_fraction > 0.0 && c.val_fraction < 1.0)) throw ConfigError("val_fraction must lie in (0, 1)");
    if (!(c.test_fraction > 0.0 && c.test_fraction < 1.0)) throw ConfigError("test_fraction must lie in (0, 1)");
    if (c.k_folds < 2) throw ConfigError("k_folds must be at least 2");
    if (c.tree_counts.empty()) throw ConfigError("tree_counts must not be empty");
    for (int t : c.tree_counts) {
        if (t < 1) throw ConfigError("tree_counts entries must be positive");
    }
    c.synth.validate();
    c.ga.validate();
    return c;
}

json config_to_json(const ExperimentConfig& c) {
    json doc = c.synth;
    const json ga = c.ga;
    for (const auto& [k, v] : ga.items()) doc[k == "seed" ? "ga_seed" : k] = v;
    doc["variant"] = to_string(c.variant);
    doc["rounds"] = c.rounds;
    doc["costs"] = c.costs ? json(c.costs->values()) : json(nullptr);
    doc["tune"] = c.tune;
    doc["val_fraction"] = c.val_fraction;
    doc["split_seed"] = c.split_seed;
    doc["test_fraction"] = c.test_fraction;
    doc["k_folds"] = c.k_folds;
    doc["fold_seed"] = c.fold_seed;
    doc["tree_counts"] = c.tree_counts;
    for (auto [key, field] : {std::pair{"data", &c.data}, {"test", &c.test}, {"out", &c.out},
                              {"test_out", &c.test_out}, {"model", &c.model}, {"trace", &c.trace},
                              {"recall_trace", &c.recall_trace}, {"ga_trace", &c.ga_trace}}) {
        doc[key] = *field;
    }
    return doc;
}

std::vector<SweepRow> cv_sweep(const Dataset& ds, const ExperimentConfig& cfg) {
    check_variant_classes(cfg.variant, ds.num_classes());
    const bool retune = cfg.variant == Variant::SAMMEC2 && !cfg.costs;
    if (is_cost_sensitive(cfg.variant) && !retune && !cfg.costs) {
        throw ConfigError(std::string(to_string(cfg.variant)) + " needs --costs");
    }
    if (cfg.costs && cfg.costs->size() != static_cast<std::size_t>(ds.num_classes())) {
        throw ContractError("costs length does not match K");
    }

    const FoldAssignment folds = stratified_kfold(ds, cfg.k_folds, cfg.fold_seed);
    std::vector<Dataset> train_folds;
    std::vector<Dataset> test_folds;
    for (int f = 0; f < folds.k_folds; ++f) {
        auto [tr, te] = folds.indices(f);
        train_folds.push_back(ds.subset(tr));
        test_folds.push_back(ds.subset(te));
    }

    auto score = [&](const EnsembleModel& model, std::size_t f, SweepRow& row) {
        const auto report =
            evaluate_predictions(test_folds[f].labels(), model.predict(test_folds[f]), ds.num_classes());
        row.cv_mavg += report.mavg / static_cast<double>(folds.k_folds);
        row.cv_accuracy += report.accuracy / static_cast<double>(folds.k_folds);
    };

    std::vector<SweepRow> rows;
    for (int t : cfg.tree_counts) {
        SweepRow row;
        row.n_trees = t;
        if (retune) row.costs = tune_on(ds, cfg, t).best;
        else if (is_cost_sensitive(cfg.variant)) row.costs = cfg.costs;
        rows.push_back(std::move(row));
    }

    if (retune) {
        for (auto& row : rows) {
            for (std::size_t f = 0; f < train_folds.size(); ++f) {
                FitOptions opts;
                opts.variant = cfg.variant;
                opts.rounds = row.n_trees;
                opts.costs = row.costs;
                score(fit(train_folds[f], opts).model, f, row);
            }
        }
        return rows;
    }

    // Costs are shared by every count, so one fit at the largest count per
    // fold serves all of them: a T-round fit is the prefix of any longer fit.
    const int longest = *std::max_element(cfg.tree_counts.begin(), cfg.tree_counts.end());
    for (std::size_t f = 0; f < train_folds.size(); ++f) {
        FitOptions opts;
        opts.variant = cfg.variant;
        opts.rounds = longest;
        opts.costs = cfg.costs;
        const EnsembleModel full = fit(train_folds[f], opts).model;
        for (auto& row : rows) {
            EnsembleModel prefix = full;
            prefix.rounds.resize(std::min(prefix.rounds.size(), static_cast<std::size_t>(row.n_trees)));
            score(prefix, f, row);
        }
    }
    return rows;
}

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Cost-sensitive multi-class boosting experiments"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "show help for every subcommand");

    // Option storage must outlive parsing; deque keeps addresses stable.
    std::deque<std::string> values;
    std::vector<std::tuple<CLI::App*, const Key*, CLI::Option*>> given;
    std::map<CLI::App*, std::string> config_paths;
    std::map<std::string, CLI::App*> subs;

    const std::map<std::string, std::string> blurbs{
        {"simulate", "generate a synthetic dataset CSV"},
        {"train", "fit a boosted ensemble; write model JSON and traces"},
        {"tune", "search SAMME.C2 costs with the genetic algorithm"},
        {"cv-sweep", "cross-validated MAvG and accuracy per tree count"},
        {"evaluate", "score a saved model on a dataset"},
    };
    for (const auto& [name, names] : command_keys()) {
        CLI::App* sub = app.add_subcommand(name, blurbs.at(name));
        subs[name] = sub;
        sub->add_option("--config", config_paths[sub], "JSON config; flags override its values");
        auto* p = sub->add_option("--preset", values.emplace_back(), "named defaults: desk or paper");
        given.emplace_back(sub, find_key("preset"), p);
        for (const auto& k : names) {
            const Key* key = find_key(k);
            CLI::Option* opt = nullptr;
            if (key->kind == Kind::Bool) {
                opt = sub->add_flag("--" + k + "{true}", values.emplace_back(), key->help);
            } else {
                opt = sub->add_option("--" + k, values.emplace_back(), key->help)->type_name(type_label(key->kind));
            }
            given.emplace_back(sub, key, opt);
        }
    }

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kOk : kContractError;
    }

    CLI::App* sub = app.get_subcommands().front();
    try {
        json doc = json::object();
        if (!config_paths[sub].empty()) doc = read_json_file(config_paths[sub]);
        if (!doc.is_object()) throw ConfigError("config must be a JSON object");
        for (const auto& [owner, key, opt] : given) {
            if (owner != sub || opt->count() == 0) continue;
            // Bool flags store the text after '{' on bare use.
            doc[key->name] = flag_value(*key, opt->as<std::string>());
        }
        const ExperimentConfig cfg = config_from_json(doc);
        const std::string name = sub->get_name();
        if (name == "simulate") return cmd_simulate(cfg, out);
        if (name == "train") return cmd_train(cfg, out);
        if (name == "tune") return cmd_tune(cfg, out);
        if (name == "cv-sweep") return cmd_cv_sweep(cfg, out);
        return cmd_evaluate(cfg, out);
    } catch (const LoadError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const DataError& e) {
        err << "error: " << e.what() << "\n";
        return kDataError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kContractError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kFailure;
    }
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace costboost::cli
