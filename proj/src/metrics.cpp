#include "costboost/metrics.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "costboost/error.hpp"

namespace costboost {

ConfusionMatrix::ConfusionMatrix(int num_classes)
    : k_(num_classes),
      counts_(num_classes > 0 ? static_cast<std::size_t>(num_classes) * static_cast<std::size_t>(num_classes) : 0, 0) {
    if (num_classes < 1) throw ContractError("confusion matrix needs at least one class");
}

void ConfusionMatrix::add(int true_class, int predicted_class) {
    if (true_class < 1 || true_class > k_ || predicted_class < 1 || predicted_class > k_) {
        throw ContractError("class pair (" + std::to_string(true_class) + ", " +
                            std::to_string(predicted_class) + ") outside 1.." + std::to_string(k_));
    }
    ++counts_[index(true_class, predicted_class)];
}

std::size_t ConfusionMatrix::total() const {
    return std::accumulate(counts_.begin(), counts_.end(), std::size_t{0});
}

std::size_t ConfusionMatrix::row_total(int true_class) const {
    std::size_t s = 0;
    for (int j = 1; j <= k_; ++j) s += (*this)(true_class, j);
    return s;
}

std::size_t ConfusionMatrix::correct() const {
    std::size_t s = 0;
    for (int k = 1; k <= k_; ++k) s += (*this)(k, k);
    return s;
}

ConfusionMatrix confusion_matrix(std::span<const int> labels, std::span<const int> preds, int num_classes) {
    if (labels.size() != preds.size()) {
        throw ContractError("labels and predictions differ in length");
    }
    ConfusionMatrix cm(num_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) cm.add(labels[i], preds[i]);
    return cm;
}

std::vector<std::optional<double>> recall_per_class(const ConfusionMatrix& cm) {
    std::vector<std::optional<double>> r(static_cast<std::size_t>(cm.num_classes()));
    for (int k = 1; k <= cm.num_classes(); ++k) {
        const auto n_k = cm.row_total(k);
        if (n_k > 0) r[static_cast<std::size_t>(k - 1)] = static_cast<double>(cm(k, k)) / static_cast<double>(n_k);
    }
    return r;
}

double mavg(std::span<const double> recalls) {
    if (recalls.empty()) throw ContractError("mavg of an empty recall vector");
    double log_sum = 0.0;
    for (double r : recalls) {
        if (!(r >= 0.0 && r <= 1.0)) throw ContractError("recall outside [0, 1]");
        if (r == 0.0) return 0.0;
        log_sum += std::log(r);
    }
    return std::exp(log_sum / static_cast<double>(recalls.size()));
}

double mavg(std::span<const std::optional<double>> recalls) {
    std::vector<double> defined;
    defined.reserve(recalls.size());
    for (std::size_t k = 0; k < recalls.size(); ++k) {
        if (!recalls[k]) {
            throw ContractError("recall of class " + std::to_string(k + 1) +
                                " is undefined (no samples); MAvG would be meaningless");
        }
        defined.push_back(*recalls[k]);
    }
    return mavg(std::span<const double>(defined));
}

double accuracy(const ConfusionMatrix& cm) {
    const auto n = cm.total();
    if (n == 0) throw ContractError("accuracy of an empty confusion matrix");
    return static_cast<double>(cm.correct()) / static_cast<double>(n);
}

double test_error(const ConfusionMatrix& cm) { return 1.0 - accuracy(cm); }

MetricReport evaluate_predictions(std::span<const int> labels, std::span<const int> preds, int num_classes) {
    const auto cm = confusion_matrix(labels, preds, num_classes);
    const auto recalls = recall_per_class(cm);
    MetricReport r;
    r.mavg = mavg(std::span<const std::optional<double>>(recalls));
    r.accuracy = accuracy(cm);
    r.test_error = test_error(cm);
    for (const auto& v : recalls) r.recalls.push_back(*v);
    r.confusion.assign(static_cast<std::size_t>(num_classes), std::vector<std::size_t>(static_cast<std::size_t>(num_classes)));
    for (int t = 1; t <= num_classes; ++t) {
        for (int p = 1; p <= num_classes; ++p) {
            r.confusion[static_cast<std::size_t>(t - 1)][static_cast<std::size_t>(p - 1)] = cm(t, p);
        }
    }
    return r;
}

void to_json(nlohmann::json& j, const MetricReport& r) {
    j = nlohmann::json{{"accuracy", r.accuracy},
                       {"test_error", r.test_error},
                       {"recalls", r.recalls},
                       {"mavg", r.mavg},
                       {"confusion", r.confusion}};
}

void from_json(const nlohmann::json& j, MetricReport& r) {
    j.at("accuracy").get_to(r.accuracy);
    j.at("test_error").get_to(r.test_error);
    j.at("recalls").get_to(r.recalls);
    j.at("mavg").get_to(r.mavg);
    if (j.contains("confusion")) j.at("confusion").get_to(r.confusion);
}

}  // namespace costboost
