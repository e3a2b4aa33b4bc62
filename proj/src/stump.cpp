#include "costboost/stump.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "costboost/error.hpp"

namespace costboost {

namespace {

// Scan sums differ from exact sums by rounding; differences below this are
// treated as ties so the documented tie-break order decides.
constexpr double kTieTolerance = 1e-12;

double below_minimum(double lowest) {
    double t = lowest - 1.0;
    if (!(t < lowest)) t = std::nextafter(lowest, -std::numeric_limits<double>::infinity());
    return t;
}

}  // namespace

int Stump::predict(std::span<const double> x) const {
    if (feature_index >= x.size()) {
        throw ContractError("stump uses feature " + std::to_string(feature_index) +
                            " but sample has " + std::to_string(x.size()) + " features");
    }
    return x[feature_index] <= threshold ? left_class : right_class;
}

void to_json(nlohmann::json& j, const Stump& s) {
    j = nlohmann::json{{"feature_index", s.feature_index},
                       {"threshold", s.threshold},
                       {"left_class", s.left_class},
                       {"right_class", s.right_class}};
}

void from_json(const nlohmann::json& j, Stump& s) {
    j.at("feature_index").get_to(s.feature_index);
    j.at("threshold").get_to(s.threshold);
    j.at("left_class").get_to(s.left_class);
    j.at("right_class").get_to(s.right_class);
}

void check_distribution(std::span<const double> weights, std::size_t n) {
    if (weights.size() != n) {
        throw ContractError("weight vector has " + std::to_string(weights.size()) +
                            " entries, expected " + std::to_string(n));
    }
    double total = 0.0;
    for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) {
            throw ContractError("weights must be strictly positive and finite");
        }
        total += w;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        throw ContractError("weights must sum to 1 (got " + std::to_string(total) + ")");
    }
}

StumpLearner::StumpLearner(const Dataset& ds) : ds_(&ds), columns_(ds.num_features()) {
    const std::size_t n = ds.size();
    if (n > std::numeric_limits<std::uint32_t>::max()) throw ContractError("dataset too large for stump learner");
    if (ds.num_classes() > std::numeric_limits<std::uint16_t>::max()) throw ContractError("too many classes");
    for (std::size_t j = 0; j < ds.num_features(); ++j) {
        Column& col = columns_[j];
        col.order.resize(n);
        std::iota(col.order.begin(), col.order.end(), 0u);
        std::stable_sort(col.order.begin(), col.order.end(),
                         [&](std::uint32_t a, std::uint32_t b) { return ds.at(a, j) < ds.at(b, j); });
        col.label.resize(n);
        for (std::size_t p = 0; p < n; ++p) col.label[p] = static_cast<std::uint16_t>(ds.label(col.order[p]) - 1);
        col.cut.assign(n > 0 ? n - 1 : 0, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t p = 0; p + 1 < n; ++p) {
            const double lo = ds.at(col.order[p], j);
            const double hi = ds.at(col.order[p + 1], j);
            if (!(lo < hi)) continue;
            double mid = std::midpoint(lo, hi);
            if (!(mid < hi)) mid = lo;
            col.cut[p] = mid;
        }
        if (n > 0) col.below_min = below_minimum(ds.at(col.order.front(), j));
    }
}

// Sweeps one presorted column. `Fixed` > 0 pins the class count at compile
// time so the per-boundary argmax unrolls; 0 means "use k".
template <std::size_t Fixed>
void StumpLearner::scan_column(const Column& col, std::size_t feature, std::span<const double> weights,
                               const double* tot, double mass, double* left, Best& best, std::size_t k) {
    if constexpr (Fixed > 0) k = Fixed;
    std::fill(left, left + k, 0.0);

    auto consider = [&](double threshold) {
        // Cheap bound first: only improving candidates pay for the tie-aware argmax.
        double lmax = left[0];
        double rmax = tot[0] - left[0];
        for (std::size_t c = 1; c < k; ++c) {
            lmax = std::max(lmax, left[c]);
            rmax = std::max(rmax, tot[c] - left[c]);
        }
        if (!(mass - lmax - rmax < best.error - kTieTolerance)) return;

        std::size_t lc = 0;
        std::size_t rc = 0;
        for (std::size_t c = 1; c < k; ++c) {
            if (left[c] > left[lc] + kTieTolerance) lc = c;
            if (tot[c] - left[c] > tot[rc] - left[rc] + kTieTolerance) rc = c;
        }
        best.error = mass - left[lc] - (tot[rc] - left[rc]);
        best.stump = Stump{feature, threshold, static_cast<int>(lc) + 1, static_cast<int>(rc) + 1};
    };

    consider(col.below_min);
    const std::size_t n = col.order.size();
    const std::uint32_t* order = col.order.data();
    const std::uint16_t* label = col.label.data();
    const double* cut = col.cut.data();
    for (std::size_t p = 0; p + 1 < n; ++p) {
        left[label[p]] += weights[order[p]];
        if (!std::isnan(cut[p])) consider(cut[p]);
    }
}

StumpFit StumpLearner::fit(std::span<const double> weights) const {
    const Dataset& ds = *ds_;
    const std::size_t n = ds.size();
    if (n == 0) throw ContractError("cannot fit a stump on an empty dataset");
    check_distribution(weights, n);

    const auto k = static_cast<std::size_t>(ds.num_classes());
    std::vector<double> total(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) total[static_cast<std::size_t>(ds.label(i) - 1)] += weights[i];
    const double mass = std::accumulate(total.begin(), total.end(), 0.0);

    Best best;
    std::vector<double> left(k);
    for (std::size_t j = 0; j < columns_.size(); ++j) {
        switch (k) {
            case 2: scan_column<2>(columns_[j], j, weights, total.data(), mass, left.data(), best); break;
            case 3: scan_column<3>(columns_[j], j, weights, total.data(), mass, left.data(), best); break;
            case 4: scan_column<4>(columns_[j], j, weights, total.data(), mass, left.data(), best); break;
            default: scan_column<0>(columns_[j], j, weights, total.data(), mass, left.data(), best, k); break;
        }
    }

    StumpFit out{best.stump, 0.0};
    for (std::size_t i = 0; i < n; ++i) {
        if (best.stump.predict(ds.row(i)) != ds.label(i)) out.weighted_error += weights[i];
    }
    return out;
}

StumpFit fit_stump(const Dataset& ds, std::span<const double> weights) {
    return StumpLearner(ds).fit(weights);
}

}  // namespace costboost
