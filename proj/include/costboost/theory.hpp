#pragma once

#include <span>
#include <vector>

#include "costboost/boost.hpp"
#include "costboost/data.hpp"

// Closed forms behind the cost-sensitive multi-class exponential loss. The
// functions double as oracles: they recompute quantities the boosting engine
// produces by a different algebraic route.
namespace costboost::theory {

/// Symmetric K-vector coding of a class: 1 at the class, -1/(K-1) elsewhere.
class RecodedLabel {
public:
    RecodedLabel(int cls, int num_classes);

    int cls() const { return cls_; }
    int num_classes() const { return static_cast<int>(u_.size()); }
    std::span<const double> values() const { return u_; }
    double operator[](int k) const { return u_[static_cast<std::size_t>(k - 1)]; }

private:
    int cls_;
    std::vector<double> u_;
};

RecodedLabel recode_label(int cls, int num_classes);

/// u'g; K/(K-1) for equal codes, -K/(K-1)^2 otherwise.
double label_score_product(const RecodedLabel& u, const RecodedLabel& g);

/// Per-sample K-vector of classifier scores f_k(x).
using ScoreVector = std::vector<double>;

/// sum_i C(y_i) * exp(-(1/K) * u_i' f(x_i)).
double cs_exp_loss(std::span<const int> labels, std::span<const ScoreVector> scores, const CostVector& costs);

/// Population minimizer of the expected loss under class probabilities `probs`:
/// f*_k = (K-1) * (log p_k - mean_j log p_j). Requires strictly positive probs
/// summing to 1 within 1e-9; a non-positive entry raises DomainError.
ScoreVector bayes_f_star(std::span<const double> probs);

/// Class probabilities implied by scores: softmax of f / (K-1).
std::vector<double> implied_probs(std::span<const double> f);

/// Stagewise coefficient beta = (K-1)^2 / K * alpha.
double beta_from_alpha(double alpha, int num_classes);

/// Minimizes sum_i D(i) * exp(-(beta/K) * u_i' g_i) over beta numerically,
/// where `code_products` holds u_i' g_i for every sample. Returns NaN when the
/// objective has no finite minimizer (no misclassified mass, or no gain).
double stagewise_beta(std::span<const double> weights, std::span<const double> code_products, int num_classes);

/// Additive scores f^(t)(x_i) = sum_{s <= t} beta_s g_s(x_i) for every row.
std::vector<ScoreVector> stagewise_scores(const EnsembleModel& model, const Dataset& ds, std::size_t t);

/// cs_exp_loss of f^(t) for t = 0..rounds, using per-class costs C^t.
///
/// C^t is the cost accumulated over t rounds; it is the quantity carried
/// inside the unnormalized distribution D_{t+1} = C^t exp(-u' f^(t) / K).
std::vector<double> running_loss(const EnsembleModel& model, const Dataset& train);

/// Same as `running_loss` but with the constant cost vector of the model.
std::vector<double> running_loss_fixed_cost(const EnsembleModel& model, const Dataset& train);

struct ConsistencyReport {
    bool passed = false;
    std::size_t rounds_checked = 0;
    double max_weight_deviation = 0.0;  ///< engine D_{t+1} vs normalized closed form
    double max_alpha_deviation = 0.0;   ///< engine alpha vs numerically optimal beta mapped back
    double max_deviation() const { return std::max(max_weight_deviation, max_alpha_deviation); }
};

/// Recomputes every accepted round of a SAMME / SAMME.C2 fit: the next
/// distribution from C(y) D_t(i) exp(-(K-1)^2/K^2 alpha u'g), normalized, and
/// alpha from the loss-minimizing beta. Needs a trace recorded with
/// `keep_weight_history` (ContractError otherwise).
ConsistencyReport stagewise_consistency_check(const Dataset& train, const EnsembleModel& model,
                                              const TrainTrace& trace, double tolerance = 1e-9);

}  // namespace costboost::theory
