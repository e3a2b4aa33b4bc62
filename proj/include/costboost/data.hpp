#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace costboost {

/// Dense row-major feature matrix with 1-based class labels.
///
/// Instances are validated on construction and immutable afterwards: every
/// label lies in {1..K}, K >= 2, d >= 1, and `class_counts()` agrees with the
/// label vector. A dataset may hold zero rows (e.g. an empty evaluation set);
/// operations that need samples check for that themselves.
class Dataset {
public:
    Dataset() = default;

    Dataset(std::vector<double> features, std::size_t num_features, std::vector<int> labels,
            int num_classes, std::vector<std::string> label_names = {});

    std::size_t size() const { return labels_.size(); }
    bool empty() const { return labels_.empty(); }
    std::size_t num_features() const { return num_features_; }
    int num_classes() const { return num_classes_; }

    std::span<const double> row(std::size_t i) const {
        return {features_.data() + i * num_features_, num_features_};
    }
    double at(std::size_t i, std::size_t j) const { return features_[i * num_features_ + j]; }
    int label(std::size_t i) const { return labels_[i]; }

    std::span<const double> features() const { return features_; }
    std::span<const int> labels() const { return labels_; }
    const std::vector<std::size_t>& class_counts() const { return class_counts_; }

    /// Original label tokens when the labels were remapped on load; entry k-1
    /// names class k. Empty when labels were already 1..K.
    const std::vector<std::string>& label_names() const { return label_names_; }

    /// Rows at `indices`, in the given order. K and the label mapping carry over.
    Dataset subset(std::span<const std::size_t> indices) const;

private:
    std::vector<double> features_;
    std::size_t num_features_ = 0;
    std::vector<int> labels_;
    int num_classes_ = 0;
    std::vector<std::size_t> class_counts_;
    std::vector<std::string> label_names_;
};

struct SynthConfig {
    std::size_t n_samples = 10000;
    std::size_t n_features = 10;
    std::size_t n_informative = 3;
    int n_classes = 3;
    std::size_t clusters_per_class = 2;
    double class_sep = 1.0;
    std::vector<double> weights{0.90, 0.09, 0.01};
    std::uint64_t seed = 16;

    /// Throws ConfigError naming the first violated constraint.
    void validate() const;
};

void to_json(nlohmann::json& j, const SynthConfig& c);
void from_json(const nlohmann::json& j, SynthConfig& c);

/// Per-class sample counts produced by `generate_synthetic` for `config`.
std::vector<std::size_t> synthetic_class_counts(const SynthConfig& config);

/// Cluster centers, one row per (class, cluster) pair in class-major order.
/// Each center is a distinct vertex of {-class_sep, +class_sep}^n_informative.
std::vector<std::vector<double>> synthetic_centers(const SynthConfig& config);

Dataset generate_synthetic(const SynthConfig& config);

Dataset load_csv(const std::filesystem::path& path, const std::string& label_column = "label");

/// Writes `f0,...,f{d-1},label` followed by one row per sample. Reals use the
/// shortest round-trip representation so a reload reproduces the values.
void save_csv(const Dataset& ds, const std::filesystem::path& path);

/// Stratified split: per class, floor(train_fraction * n_k) (at least one)
/// samples go to the first dataset, the rest to the second.
std::pair<Dataset, Dataset> train_test_split(const Dataset& ds, double train_fraction,
                                             std::uint64_t seed);

struct FoldAssignment {
    std::vector<int> fold_of_sample;
    int k_folds = 0;

    /// (train, test) index lists for fold `fold`.
    std::pair<std::vector<std::size_t>, std::vector<std::size_t>> indices(int fold) const;
};

FoldAssignment stratified_kfold(const Dataset& ds, int k_folds, std::uint64_t seed);

}  // namespace costboost
