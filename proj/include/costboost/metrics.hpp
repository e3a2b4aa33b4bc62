#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <json.hpp>

namespace costboost {

/// K x K count matrix; entry (true k, predicted j), both 1-based.
class ConfusionMatrix {
public:
    explicit ConfusionMatrix(int num_classes);

    int num_classes() const { return k_; }
    std::size_t operator()(int true_class, int predicted_class) const {
        return counts_[index(true_class, predicted_class)];
    }
    void add(int true_class, int predicted_class);

    std::size_t total() const;
    std::size_t row_total(int true_class) const;
    std::size_t correct() const;

private:
    std::size_t index(int t, int p) const {
        return static_cast<std::size_t>(t - 1) * static_cast<std::size_t>(k_) + static_cast<std::size_t>(p - 1);
    }

    int k_;
    std::vector<std::size_t> counts_;
};

ConfusionMatrix confusion_matrix(std::span<const int> labels, std::span<const int> preds, int num_classes);

/// Per-class recall; std::nullopt marks a class with no samples.
std::vector<std::optional<double>> recall_per_class(const ConfusionMatrix& cm);

/// Geometric mean of recalls. Exactly 0 if any recall is 0.
double mavg(std::span<const double> recalls);

/// Throws ContractError if any recall is undefined.
double mavg(std::span<const std::optional<double>> recalls);

double accuracy(const ConfusionMatrix& cm);
double test_error(const ConfusionMatrix& cm);

struct MetricReport {
    double accuracy = 0.0;
    double test_error = 0.0;
    std::vector<double> recalls;
    double mavg = 0.0;
    std::vector<std::vector<std::size_t>> confusion;
};

/// Full report; throws ContractError when a class has no samples.
MetricReport evaluate_predictions(std::span<const int> labels, std::span<const int> preds, int num_classes);

void to_json(nlohmann::json& j, const MetricReport& r);
void from_json(const nlohmann::json& j, MetricReport& r);

}  // namespace costboost
