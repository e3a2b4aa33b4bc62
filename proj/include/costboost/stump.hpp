#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include <json.hpp>

#include "costboost/data.hpp"

namespace costboost {

/// Depth-one decision rule: `left_class` when x[feature_index] <= threshold,
/// `right_class` otherwise.
struct Stump {
    std::size_t feature_index = 0;
    double threshold = 0.0;
    int left_class = 1;
    int right_class = 1;

    int predict(std::span<const double> x) const;

    bool operator==(const Stump&) const = default;
};

void to_json(nlohmann::json& j, const Stump& s);
void from_json(const nlohmann::json& j, Stump& s);

struct StumpFit {
    Stump stump;
    /// Sum of weights of misclassified samples, accumulated in row order.
    double weighted_error = 0.0;
};

/// Reusable stump learner over a fixed dataset.
///
/// Each feature column is sorted once on construction; every `fit` call is
/// then a single O(N*K) sweep per feature. Candidate thresholds per feature
/// are one value below the minimum plus the midpoints between consecutive
/// distinct values. Each side predicts its weighted-majority class. Ties are
/// broken by lowest feature index, then lowest threshold, then lowest class.
class StumpLearner {
public:
    explicit StumpLearner(const Dataset& ds);

    StumpFit fit(std::span<const double> weights) const;

    const Dataset& dataset() const { return *ds_; }

private:
    struct Column {
        std::vector<std::uint32_t> order;   // rows sorted by this feature, stable on ties
        std::vector<std::uint16_t> label;   // 0-based class of order[p]
        std::vector<double> cut;            // threshold after position p; NaN if no value change
        double below_min = 0.0;
    };

    struct Best {
        Stump stump;
        double error = std::numeric_limits<double>::infinity();
    };

    template <std::size_t Fixed>
    static void scan_column(const Column& col, std::size_t feature, std::span<const double> weights,
                            const double* tot, double mass, double* left, Best& best, std::size_t k = Fixed);

    const Dataset* ds_;
    std::vector<Column> columns_;
};

/// One-shot convenience wrapper around StumpLearner.
StumpFit fit_stump(const Dataset& ds, std::span<const double> weights);

/// Throws ContractError unless `weights` has `n` strictly positive entries
/// summing to 1 within 1e-9.
void check_distribution(std::span<const double> weights, std::size_t n);

}  // namespace costboost
