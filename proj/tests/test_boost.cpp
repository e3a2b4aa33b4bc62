#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "costboost/boost.hpp"
#include "costboost/error.hpp"
#include "test_util.hpp"

using namespace costboost;

namespace {

const std::vector<double> kHalf{0.5, 0.5};

EnsembleModel voters(int k, std::vector<std::pair<double, int>> votes) {
    EnsembleModel m;
    m.variant = Variant::SAMME;
    m.num_classes = k;
    m.num_features = 1;
    m.costs = CostVector::ones(k);
    // Threshold far above any input, so every stump votes its left class.
    for (auto [alpha, cls] : votes) m.rounds.push_back({alpha, Stump{0, 1e9, cls, cls}});
    return m;
}

FitResult run(const Dataset& ds, Variant v, int t, std::optional<CostVector> costs = std::nullopt,
              bool history = false) {
    FitOptions o;
    o.variant = v;
    o.rounds = t;
    o.costs = std::move(costs);
    o.keep_weight_history = history;
    return fit(ds, o);
}

}  // namespace

TEST(Variant, ParsesCanonicalAndDotted) {
    EXPECT_EQ(parse_variant("SAMME.C2"), Variant::SAMMEC2);
    EXPECT_EQ(parse_variant("sammec2"), Variant::SAMMEC2);
    EXPECT_EQ(parse_variant("Ada.C2"), Variant::AdaC2);
    EXPECT_EQ(parse_variant("AdaBoost.M1"), Variant::AdaBoostM1);
    EXPECT_EQ(parse_variant("SAMME"), Variant::SAMME);
    EXPECT_THROW(parse_variant("SAMME.R"), ContractError);
    for (auto v : {Variant::AdaBoostM1, Variant::AdaC2, Variant::SAMME, Variant::SAMMEC2}) {
        EXPECT_EQ(parse_variant(to_string(v)), v);
    }
}

TEST(Variant, ClassRestrictions) {
    EXPECT_THROW(check_variant_classes(Variant::AdaC2, 3), ContractError);
    EXPECT_THROW(check_variant_classes(Variant::AdaBoostM1, 3), ContractError);
    EXPECT_NO_THROW(check_variant_classes(Variant::SAMMEC2, 5));
    EXPECT_NO_THROW(check_variant_classes(Variant::AdaC2, 2));
}

TEST(Costs, RangeChecked) {
    EXPECT_THROW(CostVector({1.0, 0.0}), ContractError);
    EXPECT_THROW(CostVector({1.5, 0.5}), ContractError);
    CostVector c({0.25, 1.0});
    EXPECT_EQ(c[1], 0.25);
    EXPECT_EQ(c[2], 1.0);
}

TEST(WeightedError, WorkedCases) {
    const std::vector<int> y{1, 2, 3, 1};
    const std::vector<double> w(4, 0.25);
    EXPECT_EQ(weighted_error(w, y, y, CostVector::ones(3), Variant::SAMME), 0.0);
    const std::vector<int> half{1, 2, 1, 2};
    EXPECT_EQ(weighted_error(w, half, y, CostVector::ones(3), Variant::SAMME), 0.5);

    const std::vector<int> labels{1, 2};
    const std::vector<int> preds{2, 2};
    const CostVector c({1.0, 0.5});
    EXPECT_NEAR(weighted_error(kHalf, preds, labels, c, Variant::AdaC2), 2.0 / 3.0, 1e-15);
    // Cost-free variants ignore the costs.
    EXPECT_EQ(weighted_error(kHalf, preds, labels, c, Variant::SAMMEC2), 0.5);
    EXPECT_THROW(weighted_error(w, preds, labels, c, Variant::SAMME), ContractError);
}

TEST(ClassifierWeight, WorkedCases) {
    EXPECT_NEAR(classifier_weight(2.0 / 3.0, 3, Variant::SAMME), 0.0, 1e-15);
    EXPECT_NEAR(classifier_weight(0.5, 3, Variant::SAMME), std::log(2.0), 1e-15);
    EXPECT_EQ(classifier_weight(0.5, 2, Variant::AdaC2), 0.0);
    EXPECT_NEAR(classifier_weight(0.2, 2, Variant::AdaBoostM1), std::log(4.0), 1e-15);
    EXPECT_NEAR(classifier_weight(0.2, 2, Variant::AdaC2), 0.5 * std::log(4.0), 1e-15);
    EXPECT_NEAR(classifier_weight(0.2, 4, Variant::SAMMEC2), std::log(4.0) + std::log(3.0), 1e-15);
    const double capped = classifier_weight(0.0, 3, Variant::SAMME);
    EXPECT_TRUE(std::isfinite(capped));
    EXPECT_NEAR(capped, std::log((1 - kMinEpsilon) / kMinEpsilon) + std::log(2.0), 1e-9);
    EXPECT_TRUE(std::isfinite(classifier_weight(1.0, 3, Variant::SAMME)));
}

TEST(ClassifierWeight, PositiveExactlyBelowRandomGuessing) {
    for (int k = 2; k <= 10; ++k) {
        const double boundary = (k - 1.0) / k;
        for (int i = 1; i < 200; ++i) {
            const double eps = i / 200.0;
            const double a = classifier_weight(eps, k, Variant::SAMME);
            if (std::abs(eps - boundary) < 1e-12) continue;
            EXPECT_EQ(a > 0.0, eps < boundary) << "k=" << k << " eps=" << eps;
        }
    }
}

TEST(UpdateWeights, WorkedCases) {
    const std::vector<int> y{1, 2};
    const auto same = update_weights(kHalf, 0.0, y, y, CostVector::ones(2), Variant::SAMME);
    EXPECT_EQ(same, kHalf);

    const std::vector<int> preds{1, 1};
    const auto tilted = update_weights(kHalf, std::log(2.0), preds, y, CostVector::ones(2), Variant::SAMME);
    EXPECT_NEAR(tilted[0], 1.0 / 3.0, 1e-15);
    EXPECT_NEAR(tilted[1], 2.0 / 3.0, 1e-15);

    const auto costed = update_weights(kHalf, 0.0, y, y, CostVector({1.0, 0.5}), Variant::SAMMEC2);
    EXPECT_NEAR(costed[0], 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(costed[1], 1.0 / 3.0, 1e-15);
    // Cost-free variants ignore the costs.
    EXPECT_EQ(update_weights(kHalf, 0.0, y, y, CostVector({1.0, 0.5}), Variant::SAMME), kHalf);
}

TEST(UpdateWeights, UnderflowIsDegenerate) {
    const std::vector<int> y{1, 2};
    EXPECT_THROW(update_weights(kHalf, 1e4, y, y, CostVector::ones(2), Variant::SAMME), DegeneracyError);
    EXPECT_THROW(update_weights(kHalf, std::nan(""), y, y, CostVector::ones(2), Variant::SAMME), ContractError);
}

TEST(UpdateWeights, MonotoneEmphasis) {
    const std::vector<double> d{0.1, 0.2, 0.3, 0.4};
    const std::vector<int> y{1, 1, 2, 2};
    const std::vector<int> h{2, 1, 1, 2};  // samples 0 and 2 wrong
    const CostVector c({0.9, 0.6});
    for (double alpha : {0.0, 0.3, 2.0}) {
        const auto next = update_weights(d, alpha, h, y, c, Variant::SAMMEC2);
        EXPECT_NEAR(std::accumulate(next.begin(), next.end(), 0.0), 1.0, 1e-12);
        const double before = d[0] / d[1];
        const double after = next[0] / next[1];
        if (alpha == 0.0) {
            EXPECT_NEAR(after, before, 1e-12);
        } else {
            EXPECT_GT(after, before);
        }
        const double before2 = d[2] / d[3];
        EXPECT_GE(next[2] / next[3], before2 - 1e-12);
    }
}

TEST(Predict, VoteTally) {
    const std::vector<double> x{0.0};
    EXPECT_EQ(voters(3, {{1.0, 2}}).predict(x), 2);
    EXPECT_EQ(voters(3, {{1.0, 1}, {1.0, 2}}).predict(x), 1);
    EXPECT_EQ(voters(3, {{1.0, 2}, {1.0, 1}}).predict(x), 1);
    EXPECT_EQ(voters(3, {{0.5, 1}, {1.0, 3}, {0.6, 1}}).predict(x), 1);
    EXPECT_EQ(voters(3, {{0.5, 1}, {1.2, 3}, {0.6, 1}}).predict(x), 3);
    EXPECT_THROW(voters(3, {}).predict(x), ContractError);
    EXPECT_THROW(voters(3, {{1.0, 2}}).predict(std::vector<double>{0.0, 1.0}), ContractError);
}

TEST(Predict, Batch) {
    const EnsembleModel m = voters(2, {{1.0, 2}});
    Dataset empty({}, 1, {}, 2);
    EXPECT_TRUE(m.predict(empty).empty());
    Dataset one({4.0}, 1, {1}, 2);
    EXPECT_EQ(m.predict(one), std::vector<int>{2});

    Dataset ds = testutil::small_synthetic(200, 1.0, 3);
    const FitResult r = run(ds, Variant::SAMME, 15);
    const auto batch = r.model.predict(ds);
    for (std::size_t i = 0; i < ds.size(); ++i) EXPECT_EQ(batch[i], r.model.predict(ds.row(i)));
}

TEST(Fit, SeparableStopsOnPerfectFit) {
    Dataset ds({1, 2, 3, 4}, 1, {1, 1, 2, 2}, 2);
    const FitResult r = run(ds, Variant::SAMME, 10);
    EXPECT_EQ(r.trace.termination, Termination::PerfectFit);
    ASSERT_EQ(r.model.rounds.size(), 1u);
    EXPECT_EQ(r.trace.records.back().train_error, 0.0);
    EXPECT_EQ(r.model.predict(ds), (std::vector<int>{1, 1, 2, 2}));
}

TEST(Fit, Preconditions) {
    Dataset ds({1, 2, 3, 4}, 1, {1, 1, 2, 2}, 2);
    EXPECT_THROW(run(ds, Variant::SAMME, 0), ContractError);
    EXPECT_THROW(run(Dataset({}, 1, {}, 2), Variant::SAMME, 5), ContractError);
    EXPECT_THROW(run(ds, Variant::SAMMEC2, 5), ContractError);
    EXPECT_THROW(run(ds, Variant::SAMMEC2, 5, CostVector({1.0, 1.0, 1.0})), ContractError);
    EXPECT_THROW(run(testutil::small_synthetic(60, 1.0, 1), Variant::AdaC2, 5, CostVector({1, 1, 1})),
                 ContractError);
}

TEST(Fit, RandomGuessingRoundIsRejected) {
    // XOR: every stump misclassifies half the uniform mass.
    Dataset ds({0, 0, 1, 1, 0, 1, 1, 0}, 2, {1, 1, 2, 2}, 2);
    const FitResult r = run(ds, Variant::AdaBoostM1, 10);
    EXPECT_EQ(r.trace.termination, Termination::DegenerateError);
    EXPECT_TRUE(r.model.rounds.empty());
    ASSERT_EQ(r.trace.records.size(), 1u);
    EXPECT_FALSE(r.trace.records[0].accepted);
    EXPECT_EQ(r.trace.records[0].epsilon, 0.5);
    EXPECT_TRUE(std::isnan(r.trace.records[0].train_error));
}

TEST(Fit, TraceAndWeightInvariants) {
    Dataset ds = testutil::small_synthetic(300, 1.0, 8);
    const FitResult r = run(ds, Variant::SAMMEC2, 40, CostVector({0.96, 0.98, 0.999}), true);
    const auto& recs = r.trace.records;
    std::size_t accepted = 0;
    for (std::size_t t = 0; t < recs.size(); ++t) {
        EXPECT_EQ(recs[t].iter, static_cast<int>(t) + 1);
        accepted += recs[t].accepted;
        if (recs[t].accepted) {
            EXPECT_GT(recs[t].alpha, 0.0);
        }
    }
    EXPECT_EQ(accepted, r.model.rounds.size());
    EXPECT_EQ(r.trace.weight_history.size(), r.model.rounds.size() + 1);
    for (const auto& d : r.trace.weight_history) {
        EXPECT_NEAR(std::accumulate(d.begin(), d.end(), 0.0), 1.0, 1e-9);
        for (double w : d) EXPECT_GT(w, 0.0);
    }
    EXPECT_EQ(r.trace.termination, Termination::CompletedT);
}

TEST(Fit, UnitCostsReproduceSamme) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
        Dataset ds = testutil::small_synthetic(250, 1.0, seed);
        const FitResult a = run(ds, Variant::SAMME, 30);
        const FitResult b = run(ds, Variant::SAMMEC2, 30, CostVector::ones(3));
        ASSERT_EQ(a.trace.records.size(), b.trace.records.size());
        for (std::size_t t = 0; t < a.trace.records.size(); ++t) {
            EXPECT_NEAR(a.trace.records[t].epsilon, b.trace.records[t].epsilon, 1e-12);
            EXPECT_NEAR(a.trace.records[t].alpha, b.trace.records[t].alpha, 1e-12);
        }
        for (std::size_t t = 0; t < a.model.rounds.size(); ++t) {
            EXPECT_EQ(a.model.rounds[t].stump, b.model.rounds[t].stump);
        }
    }
}

TEST(Fit, BinarySammeMatchesAdaBoostM1) {
    Dataset ds = testutil::small_synthetic(200, 0.7, 4, 2);
    const FitResult a = run(ds, Variant::SAMME, 25, std::nullopt, true);
    const FitResult b = run(ds, Variant::AdaBoostM1, 25, std::nullopt, true);
    ASSERT_EQ(a.model.rounds.size(), b.model.rounds.size());
    for (std::size_t t = 0; t < a.model.rounds.size(); ++t) {
        EXPECT_EQ(a.model.rounds[t].stump, b.model.rounds[t].stump);
        EXPECT_EQ(a.model.rounds[t].alpha, b.model.rounds[t].alpha);
    }
    EXPECT_EQ(a.trace.weight_history, b.trace.weight_history);
}

TEST(Fit, AdaC2OnBinaryData) {
    Dataset ds = testutil::small_synthetic(200, 0.7, 4, 2);
    const FitResult r = run(ds, Variant::AdaC2, 20, CostVector({0.5, 1.0}));
    EXPECT_FALSE(r.model.rounds.empty());
    EXPECT_NEAR(r.model.rounds[0].alpha, 0.5 * std::log((1 - r.trace.records[0].epsilon) / r.trace.records[0].epsilon),
                1e-12);
}

TEST(Fit, EvalMetricsRecorded) {
    Dataset ds = testutil::small_synthetic(400, 1.5, 6);
    auto [train, test] = train_test_split(ds, 0.75, 1);
    FitOptions o;
    o.variant = Variant::SAMME;
    o.rounds = 10;
    o.eval = &test;
    const FitResult r = fit(train, o);
    for (const auto& rec : r.trace.records) {
        ASSERT_TRUE(rec.test_error.has_value());
        ASSERT_EQ(rec.test_recalls.size(), 3u);
        EXPECT_GE(*rec.test_mavg, 0.0);
    }
    std::size_t wrong = 0;
    const auto preds = r.model.predict(test);
    for (std::size_t i = 0; i < test.size(); ++i) wrong += preds[i] != test.label(i);
    EXPECT_NEAR(*r.trace.records.back().test_error, static_cast<double>(wrong) / test.size(), 1e-15);
}

TEST(Model, JsonRoundTrip) {
    Dataset ds = testutil::small_synthetic(150, 1.0, 2);
    const FitResult r = run(ds, Variant::SAMMEC2, 8, CostVector({0.95, 0.97, 0.999}));
    const nlohmann::json j = r.model;
    EXPECT_EQ(j.at("variant"), "SAMMEC2");
    EXPECT_EQ(j.at("K"), 3);
    EXPECT_EQ(j.at("d"), 4);
    const EnsembleModel back = j.get<EnsembleModel>();
    EXPECT_EQ(back.costs, r.model.costs);
    EXPECT_EQ(back.predict(ds), r.model.predict(ds));

    nlohmann::json bad = j;
    bad["rounds"][0]["alpha"] = 0.0;
    EXPECT_THROW(bad.get<EnsembleModel>(), ContractError);
    bad = j;
    bad["rounds"][0]["stump"]["feature_index"] = 9;
    EXPECT_THROW(bad.get<EnsembleModel>(), ContractError);
}

TEST(Trace, CsvColumns) {
    testutil::TempDir dir("trace");
    Dataset ds({0, 0, 1, 1, 0, 1, 1, 0}, 2, {1, 1, 2, 2}, 2);
    const FitResult r = run(ds, Variant::SAMME, 3);
    write_trace_csv(r.trace, dir / "t.csv");
    EXPECT_EQ(testutil::read_file(dir / "t.csv"),
              "iter,epsilon,alpha,train_error,test_error,test_mavg,accepted\n1,0.5,0,,,,0\n");
    write_recall_csv(r.trace, 2, dir / "r.csv");
    EXPECT_EQ(testutil::read_file(dir / "r.csv"), "iter,recall_1,recall_2\n");
    EXPECT_THROW(write_trace_csv(r.trace, dir / "none" / "t.csv"), IoError);
}
