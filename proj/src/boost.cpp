#include "costboost/boost.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <string>

#include "costboost/error.hpp"
#include "costboost/metrics.hpp"

namespace costboost {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::AdaBoostM1: return "AdaBoostM1";
        case Variant::AdaC2: return "AdaC2";
        case Variant::SAMME: return "SAMME";
        case Variant::SAMMEC2: return "SAMMEC2";
    }
    return "?";
}

Variant parse_variant(std::string_view s) {
    std::string key;
    for (char c : s) {
        if (c != '.' && c != '_' && c != '-') key += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    if (key == "ADABOOSTM1") return Variant::AdaBoostM1;
    if (key == "ADAC2") return Variant::AdaC2;
    if (key == "SAMME") return Variant::SAMME;
    if (key == "SAMMEC2") return Variant::SAMMEC2;
    throw ContractError("unknown variant '" + std::string(s) +
                        "' (expected AdaBoostM1, AdaC2, SAMME or SAMMEC2)");
}

bool is_cost_sensitive(Variant v) { return v == Variant::AdaC2 || v == Variant::SAMMEC2; }

bool requires_binary(Variant v) { return v == Variant::AdaBoostM1 || v == Variant::AdaC2; }

void check_variant_classes(Variant v, int num_classes) {
    if (num_classes < 2) throw ContractError("need at least two classes");
    if (requires_binary(v) && num_classes != 2) {
        throw ContractError(std::string(to_string(v)) + " is binary-only but the data has " +
                            std::to_string(num_classes) + " classes");
    }
}

CostVector::CostVector(std::vector<double> values) : values_(std::move(values)) {
    for (std::size_t k = 0; k < values_.size(); ++k) {
        const double c = values_[k];
        if (!(c > 0.0 && c <= 1.0)) {
            throw ContractError("cost of class " + std::to_string(k + 1) + " must lie in (0, 1], got " +
                                std::to_string(c));
        }
    }
}

CostVector CostVector::ones(int num_classes) {
    return CostVector(std::vector<double>(static_cast<std::size_t>(num_classes), 1.0));
}

namespace {

void check_lengths(std::size_t n_weights, std::size_t n_preds, std::size_t n_labels) {
    if (n_weights != n_preds || n_preds != n_labels) {
        throw ContractError("weights, predictions and labels differ in length (" +
                            std::to_string(n_weights) + ", " + std::to_string(n_preds) + ", " +
                            std::to_string(n_labels) + ")");
    }
}

double cost_of(const CostVector& costs, int label) {
    if (label < 1 || static_cast<std::size_t>(label) > costs.size()) {
        throw ContractError("label " + std::to_string(label) + " has no cost entry");
    }
    return costs[label];
}

}  // namespace

double weighted_error(std::span<const double> weights, std::span<const int> preds,
                      std::span<const int> labels, const CostVector& costs, Variant variant) {
    check_lengths(weights.size(), preds.size(), labels.size());
    const bool use_cost = variant == Variant::AdaC2;
    double wrong = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double w = use_cost ? cost_of(costs, labels[i]) * weights[i] : weights[i];
        total += w;
        if (preds[i] != labels[i]) wrong += w;
    }
    if (!(total > 0.0)) throw ContractError("weighted error over zero total weight");
    return wrong / total;
}

double classifier_weight(double epsilon, int num_classes, Variant variant) {
    const double e = std::clamp(epsilon, kMinEpsilon, 1.0 - kMinEpsilon);
    const double log_odds = std::log((1.0 - e) / e);
    switch (variant) {
        case Variant::SAMME:
        case Variant::SAMMEC2: return log_odds + std::log(static_cast<double>(num_classes - 1));
        case Variant::AdaBoostM1: return log_odds;
        case Variant::AdaC2: return 0.5 * log_odds;
    }
    return log_odds;
}

std::vector<double> update_weights(std::span<const double> weights, double alpha,
                                   std::span<const int> preds, std::span<const int> labels,
                                   const CostVector& costs, Variant variant) {
    check_lengths(weights.size(), preds.size(), labels.size());
    if (!std::isfinite(alpha)) throw ContractError("classifier weight must be finite");
    const bool use_cost = is_cost_sensitive(variant);
    const double shrink = std::exp(-alpha);

    std::vector<double> next(weights.size());
    double z = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        const double c = use_cost ? cost_of(costs, labels[i]) : 1.0;
        next[i] = c * weights[i] * (preds[i] == labels[i] ? shrink : 1.0);
        z += next[i];
    }
    if (!(z >= 1e-300)) throw DegeneracyError("weight normalizer underflowed");
    for (double& w : next) {
        w /= z;
        if (!(w > 0.0)) throw DegeneracyError("a sample weight collapsed to zero");
    }
    return next;
}

// ---------------------------------------------------------------------------
// Ensemble

int EnsembleModel::predict(std::span<const double> x) const {
    if (rounds.empty()) throw ContractError("cannot predict with an empty ensemble");
    if (x.size() != num_features) {
        throw ContractError("sample has " + std::to_string(x.size()) + " features, model expects " +
                            std::to_string(num_features));
    }
    std::vector<double> votes(static_cast<std::size_t>(num_classes), 0.0);
    for (const auto& r : rounds) votes[static_cast<std::size_t>(r.stump.predict(x) - 1)] += r.alpha;
    std::size_t best = 0;
    for (std::size_t k = 1; k < votes.size(); ++k) {
        if (votes[k] > votes[best]) best = k;
    }
    return static_cast<int>(best) + 1;
}

std::vector<int> EnsembleModel::predict(const Dataset& ds) const {
    if (!ds.empty() && rounds.empty()) throw ContractError("cannot predict with an empty ensemble");
    std::vector<int> out;
    out.reserve(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) out.push_back(predict(ds.row(i)));
    return out;
}

void to_json(nlohmann::json& j, const EnsembleModel& m) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : m.rounds) rounds.push_back({{"alpha", r.alpha}, {"stump", r.stump}});
    j = nlohmann::json{{"variant", std::string(to_string(m.variant))},
                       {"K", m.num_classes},
                       {"d", m.num_features},
                       {"costs", m.costs.values()},
                       {"rounds", std::move(rounds)}};
}

void from_json(const nlohmann::json& j, EnsembleModel& m) {
    m.variant = parse_variant(j.at("variant").get<std::string>());
    j.at("K").get_to(m.num_classes);
    j.at("d").get_to(m.num_features);
    m.costs = CostVector(j.at("costs").get<std::vector<double>>());
    if (m.num_classes < 2 || m.num_features < 1 || m.costs.size() != static_cast<std::size_t>(m.num_classes)) {
        throw ContractError("model header is inconsistent (K, d, costs)");
    }
    m.rounds.clear();
    for (const auto& r : j.at("rounds")) {
        BoostRound round{r.at("alpha").get<double>(), r.at("stump").get<Stump>()};
        if (!(round.alpha > 0.0)) throw ContractError("model round has non-positive alpha");
        const auto& s = round.stump;
        if (s.feature_index >= m.num_features || s.left_class < 1 || s.left_class > m.num_classes ||
            s.right_class < 1 || s.right_class > m.num_classes) {
            throw ContractError("model stump out of range for K and d");
        }
        m.rounds.push_back(round);
    }
}

std::string_view to_string(Termination t) {
    switch (t) {
        case Termination::CompletedT: return "completed_T";
        case Termination::PerfectFit: return "perfect_fit";
        case Termination::DegenerateError: return "degenerate_error";
    }
    return "?";
}

namespace {

std::string format_real(double v) {
    if (std::isnan(v)) return {};
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& v) { return v ? format_real(*v) : std::string(); }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    out << text;
    if (!out) throw IoError("failed writing " + path.string());
}

// Tracks the running vote of the ensemble on one dataset.
class VoteTally {
public:
    VoteTally(const Dataset& ds, int k)
        : ds_(&ds), k_(static_cast<std::size_t>(k)), votes_(ds.size() * k_, 0.0), preds_(ds.size(), 1) {}

    void add(const BoostRound& r, std::span<const int> stump_preds) {
        for (std::size_t i = 0; i < ds_->size(); ++i) {
            double* v = &votes_[i * k_];
            v[static_cast<std::size_t>(stump_preds[i] - 1)] += r.alpha;
            std::size_t best = 0;
            for (std::size_t c = 1; c < k_; ++c) {
                if (v[c] > v[best]) best = c;
            }
            preds_[i] = static_cast<int>(best) + 1;
        }
    }

    const std::vector<int>& predictions() const { return preds_; }

private:
    const Dataset* ds_;
    std::size_t k_;
    std::vector<double> votes_;
    std::vector<int> preds_;
};

std::vector<int> stump_predictions(const Stump& s, const Dataset& ds) {
    std::vector<int> out(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i) out[i] = s.predict(ds.row(i));
    return out;
}

double error_rate(std::span<const int> preds, std::span<const int> labels) {
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < preds.size(); ++i) wrong += preds[i] != labels[i];
    return static_cast<double>(wrong) / static_cast<double>(preds.size());
}

}  // namespace

void write_trace_csv(const TrainTrace& trace, const std::filesystem::path& path) {
    std::string text = "iter,epsilon,alpha,train_error,test_error,test_mavg,accepted\n";
    for (const auto& r : trace.records) {
        text += std::to_string(r.iter) + ',' + format_real(r.epsilon) + ',' + format_real(r.alpha) + ',' +
                format_real(r.train_error) + ',' + format_optional(r.test_error) + ',' +
                format_optional(r.test_mavg) + ',' + (r.accepted ? "1" : "0") + '\n';
    }
    write_text(path, text);
}

void write_recall_csv(const TrainTrace& trace, int num_classes, const std::filesystem::path& path) {
    std::string text = "iter";
    for (int k = 1; k <= num_classes; ++k) text += ",recall_" + std::to_string(k);
    text += '\n';
    for (const auto& r : trace.records) {
        if (r.test_recalls.empty()) continue;
        text += std::to_string(r.iter);
        for (double v : r.test_recalls) text += ',' + format_real(v);
        text += '\n';
    }
    write_text(path, text);
}

FitResult fit(const Dataset& train, const FitOptions& options) {
    if (options.rounds < 1) throw ContractError("T must be >= 1");
    if (train.empty()) throw ContractError("cannot train on an empty dataset");
    const int k = train.num_classes();
    check_variant_classes(options.variant, k);

    CostVector costs = CostVector::ones(k);
    if (options.costs) {
        if (options.costs->size() != static_cast<std::size_t>(k)) {
            throw ContractError("cost vector has " + std::to_string(options.costs->size()) +
                                " entries but the data has " + std::to_string(k) + " classes");
        }
        if (is_cost_sensitive(options.variant)) costs = *options.costs;
    } else if (is_cost_sensitive(options.variant)) {
        throw ContractError(std::string(to_string(options.variant)) + " requires a cost vector");
    }

    const Dataset* eval = options.eval;
    if (eval != nullptr && (eval->num_features() != train.num_features() || eval->num_classes() != k)) {
        throw ContractError("evaluation set shape differs from the training set");
    }

    FitResult result;
    EnsembleModel& model = result.model;
    model.variant = options.variant;
    model.num_classes = k;
    model.num_features = train.num_features();
    model.costs = costs;
    TrainTrace& trace = result.trace;

    const std::size_t n = train.size();
    std::vector<double> dist(n, 1.0 / static_cast<double>(n));
    const StumpLearner learner(train);
    VoteTally train_votes(train, k);
    std::optional<VoteTally> eval_votes;
    if (eval != nullptr) eval_votes.emplace(*eval, k);
    if (options.keep_weight_history) trace.weight_history.push_back(dist);

    for (int t = 1; t <= options.rounds; ++t) {
        const StumpFit weak = learner.fit(dist);
        const auto preds = stump_predictions(weak.stump, train);
        const double eps = weighted_error(dist, preds, train.labels(), costs, options.variant);
        const double alpha = classifier_weight(eps, k, options.variant);

        IterationRecord rec;
        rec.iter = t;
        rec.epsilon = eps;
        rec.alpha = alpha;
        if (!(alpha > 0.0)) {
            rec.accepted = false;
            rec.train_error = model.rounds.empty() ? std::numeric_limits<double>::quiet_NaN()
                                                   : error_rate(train_votes.predictions(), train.labels());
            trace.records.push_back(std::move(rec));
            trace.termination = Termination::DegenerateError;
            break;
        }

        const BoostRound round{alpha, weak.stump};
        model.rounds.push_back(round);
        rec.accepted = true;
        train_votes.add(round, preds);
        rec.train_error = error_rate(train_votes.predictions(), train.labels());
        if (eval_votes) {
            eval_votes->add(round, stump_predictions(weak.stump, *eval));
            const auto report = evaluate_predictions(eval->labels(), eval_votes->predictions(), k);
            rec.test_error = report.test_error;
            rec.test_mavg = report.mavg;
            rec.test_recalls = report.recalls;
        }
        trace.records.push_back(std::move(rec));

        if (eps <= kMinEpsilon) {
            trace.termination = Termination::PerfectFit;
            break;
        }
        try {
            dist = update_weights(dist, alpha, preds, train.labels(), costs, options.variant);
        } catch (const DegeneracyError&) {
            trace.termination = Termination::DegenerateError;
            break;
        }
        if (options.keep_weight_history) trace.weight_history.push_back(dist);
    }
    return result;
}

}  // namespace costboost
