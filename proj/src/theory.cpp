#include "costboost/theory.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "costboost/error.hpp"

namespace costboost::theory {

RecodedLabel::RecodedLabel(int cls, int num_classes) : cls_(cls) {
    if (num_classes < 2) throw ContractError("recoding needs K >= 2");
    if (cls < 1 || cls > num_classes) {
        throw ContractError("class " + std::to_string(cls) + " outside 1.." + std::to_string(num_classes));
    }
    u_.assign(static_cast<std::size_t>(num_classes), -1.0 / static_cast<double>(num_classes - 1));
    u_[static_cast<std::size_t>(cls - 1)] = 1.0;
}

RecodedLabel recode_label(int cls, int num_classes) { return RecodedLabel(cls, num_classes); }

double label_score_product(const RecodedLabel& u, const RecodedLabel& g) {
    if (u.num_classes() != g.num_classes()) throw ContractError("recoded labels differ in K");
    double s = 0.0;
    for (std::size_t k = 0; k < u.values().size(); ++k) s += u.values()[k] * g.values()[k];
    return s;
}

double cs_exp_loss(std::span<const int> labels, std::span<const ScoreVector> scores, const CostVector& costs) {
    if (labels.size() != scores.size()) throw ContractError("labels and scores differ in length");
    const int k = static_cast<int>(costs.size());
    double loss = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (scores[i].size() != costs.size()) throw ContractError("score vector length differs from K");
        const RecodedLabel u(labels[i], k);
        double dot = 0.0;
        for (std::size_t c = 0; c < scores[i].size(); ++c) dot += u.values()[c] * scores[i][c];
        loss += costs[labels[i]] * std::exp(-dot / static_cast<double>(k));
    }
    return loss;
}

ScoreVector bayes_f_star(std::span<const double> probs) {
    const std::size_t k = probs.size();
    if (k < 2) throw ContractError("need at least two class probabilities");
    double total = 0.0;
    for (double p : probs) {
        if (!(p > 0.0)) throw DomainError("class probabilities must be strictly positive (log undefined)");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw ContractError("class probabilities must sum to 1");

    std::vector<double> logs(k);
    std::transform(probs.begin(), probs.end(), logs.begin(), [](double p) { return std::log(p); });
    const double mean_log = std::accumulate(logs.begin(), logs.end(), 0.0) / static_cast<double>(k);
    ScoreVector f(k);
    for (std::size_t c = 0; c < k; ++c) f[c] = static_cast<double>(k - 1) * (logs[c] - mean_log);
    return f;
}

std::vector<double> implied_probs(std::span<const double> f) {
    const std::size_t k = f.size();
    if (k < 2) throw ContractError("need at least two scores");
    const double scale = 1.0 / static_cast<double>(k - 1);
    const double top = *std::max_element(f.begin(), f.end());
    std::vector<double> p(k);
    double z = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
        p[c] = std::exp((f[c] - top) * scale);
        z += p[c];
    }
    for (double& v : p) v /= z;
    return p;
}

double beta_from_alpha(double alpha, int num_classes) {
    const double km1 = static_cast<double>(num_classes - 1);
    return km1 * km1 / static_cast<double>(num_classes) * alpha;
}

double stagewise_beta(std::span<const double> weights, std::span<const double> code_products, int num_classes) {
    if (weights.size() != code_products.size()) throw ContractError("weights and products differ in length");
    const double inv_k = 1.0 / static_cast<double>(num_classes);

    // First and second derivative of the convex objective.
    auto derivs = [&](double beta) {
        double d1 = 0.0;
        double d2 = 0.0;
        for (std::size_t i = 0; i < weights.size(); ++i) {
            const double s = code_products[i] * inv_k;
            const double e = weights[i] * std::exp(-beta * s);
            d1 -= s * e;
            d2 += s * s * e;
        }
        return std::pair{d1, d2};
    };

    bool any_negative = false;
    for (std::size_t i = 0; i < weights.size(); ++i) any_negative = any_negative || (code_products[i] < 0.0 && weights[i] > 0.0);
    if (!any_negative) return std::numeric_limits<double>::quiet_NaN();
    if (derivs(0.0).first >= 0.0) return std::numeric_limits<double>::quiet_NaN();

    double lo = 0.0;
    double hi = 1.0;
    while (derivs(hi).first < 0.0) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e6) return std::numeric_limits<double>::quiet_NaN();
    }

    // Newton steps, falling back to bisection whenever a step leaves the bracket.
    double beta = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const auto [d1, d2] = derivs(beta);
        if (d1 < 0.0) lo = beta;
        else hi = beta;
        double next = beta - d1 / d2;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - beta) <= 1e-15 * std::max(1.0, std::abs(beta))) return next;
        beta = next;
    }
    return beta;
}

std::vector<ScoreVector> stagewise_scores(const EnsembleModel& model, const Dataset& ds, std::size_t t) {
    if (t > model.rounds.size()) throw ContractError("stagewise step beyond the number of rounds");
    const int k = model.num_classes;
    std::vector<ScoreVector> f(ds.size(), ScoreVector(static_cast<std::size_t>(k), 0.0));
    for (std::size_t s = 0; s < t; ++s) {
        const auto& r = model.rounds[s];
        const double beta = beta_from_alpha(r.alpha, k);
        for (std::size_t i = 0; i < ds.size(); ++i) {
            const RecodedLabel g(r.stump.predict(ds.row(i)), k);
            for (std::size_t c = 0; c < f[i].size(); ++c) f[i][c] += beta * g.values()[c];
        }
    }
    return f;
}

namespace {

std::vector<double> running_loss_impl(const EnsembleModel& model, const Dataset& train, bool accumulate) {
    if (train.num_classes() != model.num_classes) throw ContractError("dataset K differs from model K");
    const int k = model.num_classes;
    const auto n = train.size();
    std::vector<ScoreVector> f(n, ScoreVector(static_cast<std::size_t>(k), 0.0));
    std::vector<double> losses;
    losses.reserve(model.rounds.size() + 1);
    for (std::size_t t = 0; t <= model.rounds.size(); ++t) {
        if (t > 0) {
            const auto& r = model.rounds[t - 1];
            const double beta = beta_from_alpha(r.alpha, k);
            for (std::size_t i = 0; i < n; ++i) {
                const RecodedLabel g(r.stump.predict(train.row(i)), k);
                for (std::size_t c = 0; c < f[i].size(); ++c) f[i][c] += beta * g.values()[c];
            }
        }
        std::vector<double> c(model.costs.values());
        if (accumulate) {
            for (double& v : c) v = std::pow(v, static_cast<double>(t));
        }
        losses.push_back(cs_exp_loss(train.labels(), f, CostVector(std::move(c))));
    }
    return losses;
}

}  // namespace

std::vector<double> running_loss(const EnsembleModel& model, const Dataset& train) {
    return running_loss_impl(model, train, true);
}

std::vector<double> running_loss_fixed_cost(const EnsembleModel& model, const Dataset& train) {
    return running_loss_impl(model, train, false);
}

ConsistencyReport stagewise_consistency_check(const Dataset& train, const EnsembleModel& model,
                                              const TrainTrace& trace, double tolerance) {
    if (model.variant != Variant::SAMME && model.variant != Variant::SAMMEC2) {
        throw ContractError("stagewise check applies to SAMME and SAMME.C2 fits");
    }
    if (trace.weight_history.empty() || trace.weight_history.size() < model.rounds.size()) {
        throw ContractError("stagewise check needs the per-round weight history of the fit");
    }
    const int k = model.num_classes;
    const auto n = train.size();
    const double km1 = static_cast<double>(k - 1);
    const double exponent_scale = km1 * km1 / (static_cast<double>(k) * static_cast<double>(k));
    const bool use_cost = is_cost_sensitive(model.variant);

    ConsistencyReport report;
    std::vector<double> products(n);
    std::vector<double> expected(n);
    for (std::size_t t = 0; t < model.rounds.size(); ++t) {
        const auto& round = model.rounds[t];
        const auto& d_t = trace.weight_history[t];
        if (d_t.size() != n) throw ContractError("weight history entry has the wrong length");

        for (std::size_t i = 0; i < n; ++i) {
            const RecodedLabel u(train.label(i), k);
            const RecodedLabel g(round.stump.predict(train.row(i)), k);
            products[i] = label_score_product(u, g);
        }

        // alpha recovered from the loss-minimizing beta.
        const double beta = stagewise_beta(d_t, products, k);
        if (std::isfinite(beta)) {
            const double alpha_from_beta = beta * static_cast<double>(k) / (km1 * km1);
            report.max_alpha_deviation = std::max(report.max_alpha_deviation, std::abs(alpha_from_beta - round.alpha));
        }

        if (t + 1 >= trace.weight_history.size()) break;  // training stopped before updating
        const auto& d_next = trace.weight_history[t + 1];
        double z = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = use_cost ? model.costs[train.label(i)] : 1.0;
            expected[i] = d_t[i] * c * std::exp(-exponent_scale * round.alpha * products[i]);
            z += expected[i];
        }
        for (std::size_t i = 0; i < n; ++i) {
            report.max_weight_deviation = std::max(report.max_weight_deviation, std::abs(expected[i] / z - d_next[i]));
        }
        ++report.rounds_checked;
    }
    report.passed = report.max_deviation() < tolerance;
    return report;
}

}  // namespace costboost::theory
