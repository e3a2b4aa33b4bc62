#include <gtest/gtest.h>

#include <sstream>

#include "commands.hpp"
#include "costboost/error.hpp"
#include "costboost/metrics.hpp"
#include "test_util.hpp"

using namespace costboost;
using costboost::cli::run;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
protected:
    testutil::TempDir dir{"cli"};
    std::string path(const std::string& name) const { return (dir / name).string(); }

    // Small 3-class train/test pair written by the simulate command.
    void simulate(double sep = 1.5) {
        const auto r = call({"simulate", "--n_samples", "1200", "--n_features", "5", "--class_sep",
                             std::to_string(sep), "--weights", "0.7,0.2,0.1", "--out", path("train.csv"),
                             "--test_out", path("test.csv")});
        ASSERT_EQ(r.code, 0) << r.err;
    }
};

}  // namespace

TEST_F(Cli, SimulateReportsRatiosAndIsReproducible) {
    const auto r = call({"simulate", "--class_sep", "2.0", "--out", path("a.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("class 1: 9000 (0.9000)"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("class 2: 900 (0.0900)"), std::string::npos);
    EXPECT_NE(r.out.find("class 3: 100 (0.0100)"), std::string::npos);
    ASSERT_EQ(call({"simulate", "--class_sep", "2.0", "--out", path("b.csv")}).code, 0);
    EXPECT_EQ(testutil::read_file(dir / "a.csv"), testutil::read_file(dir / "b.csv"));
    const Dataset ds = load_csv(dir / "a.csv");
    EXPECT_EQ(ds.num_features(), 10u);
}

TEST_F(Cli, SimulateUnwritablePath) {
    const auto r = call({"simulate", "--n_samples", "50", "--out", path("missing/dir/x.csv")});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("cannot write"), std::string::npos);
}

TEST_F(Cli, ConfigFileAndFlagOverride) {
    testutil::write_file(dir / "cfg.json", R"({"n_samples": 40, "n_features": 3, "class_sep": 0.5, "seed": 4})");
    ASSERT_EQ(call({"simulate", "--config", path("cfg.json"), "--n_features", "5", "--out", path("c.csv")}).code, 0);
    const Dataset ds = load_csv(dir / "c.csv");
    EXPECT_EQ(ds.size(), 40u);
    EXPECT_EQ(ds.num_features(), 5u);

    testutil::write_file(dir / "bad.json", R"({"n_sampels": 40})");
    EXPECT_EQ(call({"simulate", "--config", path("bad.json"), "--out", path("d.csv")}).code, 3);
    EXPECT_EQ(call({"simulate", "--config", path("nope.json"), "--out", path("d.csv")}).code, 2);
    EXPECT_EQ(call({"simulate", "--n_samples", "ten", "--out", path("d.csv")}).code, 3);
    EXPECT_EQ(call({"simulate", "--weights", "0.5,0.6,0.1", "--out", path("d.csv")}).code, 3);
    EXPECT_EQ(call({"simulate", "--no_such_flag", "1"}).code, 3);
    EXPECT_EQ(call({}).code, 3);
}

TEST_F(Cli, PresetsLayerUnderFlags) {
    const auto paper = cli::config_from_json({{"preset", "paper"}});
    EXPECT_EQ(paper.synth.n_samples, 100000u);
    EXPECT_EQ(paper.synth.n_features, 50u);
    EXPECT_EQ(paper.synth.n_informative, 50u);
    EXPECT_EQ(paper.rounds, 1000);
    const auto desk = cli::config_from_json(nlohmann::json::object());
    EXPECT_EQ(desk.synth.n_samples, 10000u);
    EXPECT_EQ(desk.synth.n_features, 10u);
    EXPECT_EQ(desk.rounds, 300);
    EXPECT_EQ(desk.ga.population_size, 10);
    EXPECT_EQ(desk.k_folds, 5);
    const auto over = cli::config_from_json({{"preset", "paper"}, {"rounds", 7}, {"ga_seed", 3}});
    EXPECT_EQ(over.rounds, 7);
    EXPECT_EQ(over.ga.seed, 3u);
    EXPECT_THROW(cli::config_from_json({{"preset", "huge"}}), ConfigError);
    const auto round_trip = cli::config_from_json(cli::config_to_json(over));
    EXPECT_EQ(cli::config_to_json(round_trip), cli::config_to_json(over));
}

TEST_F(Cli, TrainWritesModelAndTraces) {
    simulate();
    const auto r = call({"train", "--data", path("train.csv"), "--test", path("test.csv"), "--variant", "SAMME",
                         "--rounds", "40", "--model", path("m.json"), "--trace", path("t.csv"), "--recall_trace",
                         path("r.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream trace(testutil::read_file(dir / "t.csv"));
    std::string line;
    std::getline(trace, line);
    EXPECT_EQ(line, "iter,epsilon,alpha,train_error,test_error,test_mavg,accepted");
    int rows = 0;
    while (std::getline(trace, line)) ++rows;
    EXPECT_GE(rows, 1);
    EXPECT_LE(rows, 40);
    EXPECT_EQ(testutil::read_file(dir / "r.csv").rfind("iter,recall_1,recall_2,recall_3\n", 0), 0u);
    const auto model = nlohmann::json::parse(testutil::read_file(dir / "m.json")).get<EnsembleModel>();
    EXPECT_EQ(model.variant, Variant::SAMME);
}

TEST_F(Cli, TrainContractErrors) {
    simulate();
    EXPECT_EQ(call({"train", "--data", path("train.csv"), "--variant", "AdaC2", "--costs", "1,1,1", "--model",
                    path("m.json")})
                  .code,
              3);
    const auto missing = call({"train", "--data", path("train.csv"), "--variant", "SAMMEC2", "--model", path("m.json")});
    EXPECT_EQ(missing.code, 3);
    EXPECT_NE(missing.err.find("--tune"), std::string::npos) << missing.err;
    EXPECT_EQ(call({"train", "--data", path("train.csv"), "--variant", "SAMME", "--costs", "1,1,1", "--model",
                    path("m.json")})
                  .code,
              3);
    EXPECT_EQ(call({"train", "--data", path("train.csv"), "--variant", "SAMMEC2", "--costs", "1,1", "--model",
                    path("m.json")})
                  .code,
              3);
    EXPECT_EQ(call({"train", "--data", path("nothing.csv"), "--model", path("m.json")}).code, 2);
    EXPECT_EQ(call({"train", "--data", path("train.csv"), "--variant", "SAMME"}).code, 3);
}

TEST_F(Cli, TrainWithTuning) {
    simulate();
    const auto r = call({"train", "--data", path("train.csv"), "--variant", "SAMME.C2", "--tune", "--rounds", "10",
                         "--population_size", "3", "--generations", "1", "--model", path("m.json"), "--ga_trace",
                         path("g.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto model = nlohmann::json::parse(testutil::read_file(dir / "m.json")).get<EnsembleModel>();
    EXPECT_EQ(model.costs[3], 0.999);
    EXPECT_EQ(model.variant, Variant::SAMMEC2);
}

TEST_F(Cli, TuneTraceRows) {
    simulate();
    const auto r = call({"tune", "--data", path("train.csv"), "--rounds", "8", "--population_size", "10",
                         "--generations", "10", "--out", path("c.json"), "--ga_trace", path("g.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream ga(testutil::read_file(dir / "g.csv"));
    std::string line;
    std::getline(ga, line);
    EXPECT_EQ(line, "generation,member,cost_1,cost_2,cost_3,mavg");
    int rows = 0;
    std::vector<double> best(11, 0.0);
    while (std::getline(ga, line)) {
        ++rows;
        const auto g = std::stoul(line.substr(0, line.find(',')));
        best[g] = std::max(best[g], std::stod(line.substr(line.rfind(',') + 1)));
    }
    EXPECT_EQ(rows, 110);
    for (std::size_t g = 1; g < best.size(); ++g) EXPECT_GE(best[g], best[g - 1]);
    const auto doc = nlohmann::json::parse(testutil::read_file(dir / "c.json"));
    EXPECT_EQ(doc.at("costs").size(), 3u);
    EXPECT_EQ(doc.at("mavg").get<double>(), best.back());

    ASSERT_EQ(call({"tune", "--data", path("train.csv"), "--rounds", "4", "--population_size", "3",
                    "--generations", "0", "--out", path("c0.json"), "--ga_trace", path("g0.csv")})
                  .code,
              0);
    std::istringstream only(testutil::read_file(dir / "g0.csv"));
    rows = -1;
    while (std::getline(only, line)) ++rows;
    EXPECT_EQ(rows, 3);
}

TEST_F(Cli, TuneInfeasibleSplit) {
    testutil::write_file(dir / "tiny.csv", "f0,label\n0,1\n1,1\n2,1\n3,2\n4,2\n5,3\n");
    const auto r = call({"tune", "--data", path("tiny.csv"), "--rounds", "3", "--out", path("c.json")});
    EXPECT_EQ(r.code, 4);
}

TEST_F(Cli, CvSweepRows) {
    simulate();
    const auto r = call({"cv-sweep", "--data", path("train.csv"), "--variant", "SAMME", "--tree_counts",
                         "5,10,20", "--out", path("s.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream csv(testutil::read_file(dir / "s.csv"));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "n_trees,cv_mavg,cv_accuracy");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 3);
}

TEST_F(Cli, CvSweepCountsAreIndependent) {
    simulate();
    const Dataset ds = load_csv(dir / "train.csv");
    auto cfg = cli::config_from_json({{"variant", "SAMME"}, {"tree_counts", {7, 15}}});
    const auto both = cli::cv_sweep(ds, cfg);
    cfg.tree_counts = {15};
    const auto single = cli::cv_sweep(ds, cfg);
    ASSERT_EQ(both.size(), 2u);
    ASSERT_EQ(single.size(), 1u);
    EXPECT_EQ(both[1].cv_mavg, single[0].cv_mavg);
    EXPECT_EQ(both[1].cv_accuracy, single[0].cv_accuracy);

    // A single count equals a plain k-fold CV computed by hand.
    const FoldAssignment folds = stratified_kfold(ds, 5, cfg.fold_seed);
    double mavg_sum = 0;
    for (int f = 0; f < 5; ++f) {
        auto [tr, te] = folds.indices(f);
        const Dataset train = ds.subset(tr);
        const Dataset test = ds.subset(te);
        FitOptions o;
        o.variant = Variant::SAMME;
        o.rounds = 15;
        const auto model = fit(train, o).model;
        mavg_sum += evaluate_predictions(test.labels(), model.predict(test), 3).mavg;
    }
    EXPECT_NEAR(single[0].cv_mavg, mavg_sum / 5, 1e-12);

    cfg = cli::config_from_json({{"variant", "SAMMEC2"}, {"tree_counts", {4, 6}}, {"population_size", 2},
                                 {"generations", 1}});
    const auto tuned = cli::cv_sweep(ds, cfg);
    cfg.tree_counts = {6};
    const auto tuned_single = cli::cv_sweep(ds, cfg);
    EXPECT_EQ(tuned[1].cv_mavg, tuned_single[0].cv_mavg);
    EXPECT_EQ(*tuned[1].costs, *tuned_single[0].costs);
}

TEST_F(Cli, CvSweepInfeasibleFolds) {
    testutil::write_file(dir / "tiny.csv", "f0,label\n0,1\n1,1\n2,1\n3,1\n4,1\n5,2\n6,2\n");
    const auto r = call({"cv-sweep", "--data", path("tiny.csv"), "--variant", "SAMME", "--tree_counts", "3", "--out",
                         path("s.csv")});
    EXPECT_EQ(r.code, 4);
}

TEST_F(Cli, EvaluateMetricsJson) {
    testutil::write_file(dir / "sep.csv", "f0,f1,label\n0,5,1\n1,5,1\n2,5,2\n3,5,2\n4,5,3\n5,5,3\n");
    ASSERT_EQ(call({"train", "--data", path("sep.csv"), "--variant", "SAMME", "--rounds", "20", "--model",
                    path("m.json")})
                  .code,
              0);
    const auto r = call({"evaluate", "--model", path("m.json"), "--data", path("sep.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto doc = nlohmann::json::parse(r.out);
    EXPECT_EQ(doc.at("accuracy"), 1.0);
    EXPECT_EQ(doc.at("mavg"), 1.0);
    const MetricReport rep = doc.get<MetricReport>();
    EXPECT_EQ(rep.confusion.size(), 3u);

    ASSERT_EQ(call({"evaluate", "--model", path("m.json"), "--data", path("sep.csv"), "--out", path("e.json")}).code,
              0);
    EXPECT_EQ(nlohmann::json::parse(testutil::read_file(dir / "e.json")), doc);
}

TEST_F(Cli, EvaluateShapeMismatch) {
    testutil::write_file(dir / "sep.csv", "f0,f1,label\n0,5,1\n1,5,1\n2,5,2\n3,5,2\n4,5,3\n5,5,3\n");
    ASSERT_EQ(call({"train", "--data", path("sep.csv"), "--variant", "SAMME", "--rounds", "5", "--model",
                    path("m.json")})
                  .code,
              0);
    testutil::write_file(dir / "d1.csv", "f0,label\n0,1\n1,2\n2,3\n");
    EXPECT_EQ(call({"evaluate", "--model", path("m.json"), "--data", path("d1.csv")}).code, 3);
    testutil::write_file(dir / "k2.csv", "f0,f1,label\n0,5,1\n1,5,2\n");
    EXPECT_EQ(call({"evaluate", "--model", path("m.json"), "--data", path("k2.csv")}).code, 3);
    testutil::write_file(dir / "broken.json", "{\"variant\": ");
    EXPECT_EQ(call({"evaluate", "--model", path("broken.json"), "--data", path("k2.csv")}).code, 2);
}

TEST_F(Cli, HelpExitsCleanly) {
    const auto r = call({"train", "--help"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("--variant"), std::string::npos);
}
