#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "costboost/data.hpp"
#include "costboost/stump.hpp"

namespace costboost {

enum class Variant { AdaBoostM1, AdaC2, SAMME, SAMMEC2 };

std::string_view to_string(Variant v);
/// Accepts the canonical tags (AdaBoostM1, AdaC2, SAMME, SAMMEC2) and the
/// dotted spellings (AdaBoost.M1, Ada.C2, SAMME.C2), case-insensitively.
Variant parse_variant(std::string_view s);

/// Ada.C2 and SAMME.C2 apply per-class costs in the weight update.
bool is_cost_sensitive(Variant v);
/// AdaBoost.M1 and Ada.C2 are binary-only.
bool requires_binary(Variant v);
/// Throws ContractError when `v` cannot handle `num_classes` classes.
void check_variant_classes(Variant v, int num_classes);

/// Per-class costs C(k) in (0, 1]; entry k-1 belongs to class k.
class CostVector {
public:
    CostVector() = default;
    explicit CostVector(std::vector<double> values);

    static CostVector ones(int num_classes);

    std::size_t size() const { return values_.size(); }
    double operator[](int cls) const { return values_[static_cast<std::size_t>(cls - 1)]; }
    const std::vector<double>& values() const { return values_; }

    bool operator==(const CostVector&) const = default;

private:
    std::vector<double> values_;
};

/// Smallest error admitted into the classifier-weight formulas.
inline constexpr double kMinEpsilon = 1e-10;

/// Weighted misclassification rate of `preds`. Ada.C2 weights each sample by
/// its class cost as well; the other variants ignore `costs`.
double weighted_error(std::span<const double> weights, std::span<const int> preds,
                      std::span<const int> labels, const CostVector& costs, Variant variant);

/// Classifier weight alpha for error `epsilon`, clamped into
/// [kMinEpsilon, 1 - kMinEpsilon] first.
///   SAMME, SAMME.C2: log((1-e)/e) + log(K-1)
///   AdaBoost.M1:     log((1-e)/e)
///   Ada.C2:          0.5 * log((1-e)/e)
double classifier_weight(double epsilon, int num_classes, Variant variant);

/// D'(i) proportional to C(y_i) * D(i) * exp(-alpha * [y_i == h(x_i)]),
/// with C = 1 for the cost-free variants. Throws DegeneracyError if the
/// normalizer underflows or an entry collapses to zero.
std::vector<double> update_weights(std::span<const double> weights, double alpha,
                                   std::span<const int> preds, std::span<const int> labels,
                                   const CostVector& costs, Variant variant);

struct BoostRound {
    double alpha = 0.0;
    Stump stump;
};

/// Weighted vote over stumps; immutable after training.
struct EnsembleModel {
    Variant variant = Variant::SAMME;
    int num_classes = 2;
    std::size_t num_features = 1;
    CostVector costs;
    std::vector<BoostRound> rounds;

    /// argmax_k sum_t alpha_t [h_t(x) = k]; ties go to the lowest class.
    int predict(std::span<const double> x) const;
    std::vector<int> predict(const Dataset& ds) const;
};

void to_json(nlohmann::json& j, const EnsembleModel& m);
void from_json(const nlohmann::json& j, EnsembleModel& m);

enum class Termination { CompletedT, PerfectFit, DegenerateError };
std::string_view to_string(Termination t);

struct IterationRecord {
    int iter = 0;
    double epsilon = 0.0;
    double alpha = 0.0;
    /// Training error of the ensemble after this iteration (NaN while empty).
    double train_error = 0.0;
    std::optional<double> test_error;
    std::optional<double> test_mavg;
    std::vector<double> test_recalls;
    bool accepted = false;
};

struct TrainTrace {
    std::vector<IterationRecord> records;
    Termination termination = Termination::CompletedT;
    /// When requested: entry t-1 is D_t, the distribution the t-th stump was
    /// fit on. Entries run from D_1 to the distribution after the last update.
    std::vector<std::vector<double>> weight_history;
};

/// Columns: iter,epsilon,alpha,train_error,test_error,test_mavg,accepted.
void write_trace_csv(const TrainTrace& trace, const std::filesystem::path& path);
/// Columns: iter,recall_1..recall_K (rows only for iterations with test metrics).
void write_recall_csv(const TrainTrace& trace, int num_classes, const std::filesystem::path& path);

struct FitOptions {
    Variant variant = Variant::SAMMEC2;
    int rounds = 100;
    /// Required length K; ignored by the cost-free variants.
    std::optional<CostVector> costs;
    /// When set, every iteration records test error, recalls, and MAvG on it.
    const Dataset* eval = nullptr;
    bool keep_weight_history = false;
};

struct FitResult {
    EnsembleModel model;
    TrainTrace trace;
};

FitResult fit(const Dataset& train, const FitOptions& options);

}  // namespace costboost
