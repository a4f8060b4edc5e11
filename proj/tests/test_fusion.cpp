#include "doctest.h"

#include <cmath>
#include <map>
#include <sstream>

#include "test_support.hpp"

using namespace evicomb;
using testsup::frame_of;
using testsup::throws_mentioning;

namespace {

using ClfScores = std::vector<std::pair<std::string, std::vector<double>>>;

std::string score_csv(const ScoreMatrix& matrix) {
    std::ostringstream out;
    io::write_score_csv(out, matrix);
    return out.str();
}

std::string labels_csv(const std::map<std::string, std::string>& labels) {
    std::ostringstream out;
    io::write_labels_csv(out, labels);
    return out.str();
}

} // namespace

TEST_CASE("score vectors map to outstanding triplets") {
    const Frame f = frame_of(3);
    const std::vector<double> scores{2.0, 1.0, 1.0};
    const TripletMass t = scores_to_triplet(scores, f);
    CHECK(t.a1() == 0);
    CHECK(t.a2() == 1); // tie for the runner-up resolves to the lower index
    CHECK(t.m1() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(t.m2() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(t.mt() == doctest::Approx(0.25).epsilon(1e-12));

    const std::vector<double> zero{0.0, 0.0, 0.0};
    CHECK_THROWS_AS(scores_to_triplet(zero, f), MassError);
    const std::vector<double> negative{1.0, -0.5, 0.2};
    CHECK_THROWS_AS(scores_to_triplet(negative, f), MassError);
    const std::vector<double> short_list{1.0, 2.0};
    CHECK_THROWS_AS(scores_to_triplet(short_list, f), MassError);
}

TEST_CASE("score vectors map to dichotomous structures with an ignorance floor") {
    const Frame f = frame_of(3);
    const std::vector<double> scores{0.5, 0.3, 0.2};
    const DichotomousMass d = scores_to_dichotomous(scores, f, 0.1);
    CHECK(d.focus() == 0);
    CHECK(d.p() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(d.c() == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(d.r() == doctest::Approx(0.05).epsilon(1e-12));

    // floor 0 keeps nothing back; floor 1 pushes all refutation into Theta.
    CHECK(scores_to_dichotomous(scores, f, 0.0).r() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(scores_to_dichotomous(scores, f, 1.0).c() == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(scores_to_dichotomous(scores, f, 1.0).r() == doctest::Approx(0.5).epsilon(1e-12));

    // The focus is the first maximum.
    const std::vector<double> tied{0.4, 0.4, 0.2};
    CHECK(scores_to_dichotomous(tied, f).focus() == 0);
    const std::vector<double> late{0.3, 0.3, 0.4};
    CHECK(scores_to_dichotomous(late, f).focus() == 2);

    CHECK_THROWS_AS(scores_to_dichotomous(scores, f, -0.1), MassError);
    CHECK_THROWS_AS(scores_to_dichotomous(scores, f, 1.5), MassError);
}

TEST_CASE("score matrix construction is validated") {
    const Frame f = frame_of(3);
    CHECK_THROWS_AS(ScoreMatrix::make(frame_of(1), {}), MassError);

    std::vector<ScoreMatrix::Item> dup;
    dup.push_back({"a", {{"clf0", {1.0, 0.0, 0.0}}}});
    dup.push_back({"a", {{"clf0", {1.0, 0.0, 0.0}}}});
    CHECK(throws_mentioning([&] { ScoreMatrix::make(f, dup); }, "repeats item id"));

    std::vector<ScoreMatrix::Item> unnamed;
    unnamed.push_back({"", {{"clf0", {1.0, 0.0, 0.0}}}});
    CHECK_THROWS_AS(ScoreMatrix::make(f, unnamed), MassError);

    std::vector<ScoreMatrix::Item> ragged;
    ragged.push_back({"a", {{"clf0", {1.0, 0.0, 0.0}}, {"clf1", {1.0, 0.0, 0.0}}}});
    ragged.push_back({"b", {{"clf0", {1.0, 0.0, 0.0}}}});
    CHECK_THROWS_AS(ScoreMatrix::make(f, ragged), MassError);

    std::vector<ScoreMatrix::Item> reordered;
    reordered.push_back({"a", {{"clf0", {1.0, 0.0, 0.0}}, {"clf1", {1.0, 0.0, 0.0}}}});
    reordered.push_back({"b", {{"clf1", {1.0, 0.0, 0.0}}, {"clf0", {1.0, 0.0, 0.0}}}});
    CHECK_THROWS_AS(ScoreMatrix::make(f, reordered), MassError);

    std::vector<ScoreMatrix::Item> wrong_len;
    wrong_len.push_back({"a", {{"clf0", {1.0, 0.0}}}});
    CHECK_THROWS_AS(ScoreMatrix::make(f, wrong_len), MassError);

    std::vector<ScoreMatrix::Item> negative;
    negative.push_back({"a", {{"clf0", {1.0, -0.2, 0.0}}}});
    CHECK_THROWS_AS(ScoreMatrix::make(f, negative), MassError);

    std::vector<ScoreMatrix::Item> ok;
    ok.push_back({"a", {{"clf0", {1.0, 0.5, 0.2}}, {"clf1", {0.1, 0.9, 0.3}}}});
    const ScoreMatrix m = ScoreMatrix::make(f, ok);
    CHECK(m.classifier_ids() == std::vector<std::string>{"clf0", "clf1"});
}

TEST_CASE("a single classifier decides by argmax under every method") {
    const Frame f = frame_of(4);
    const ClfScores scores{{"clf0", {0.1, 0.2, 0.6, 0.1}}};
    for (FuseMethod method :
         {FuseMethod::triplet, FuseMethod::dichotomous, FuseMethod::oracle}) {
        FuseOptions options;
        options.method = method;
        const ItemDecision d = fuse_item("item0", scores, f, options);
        CAPTURE(to_string(method));
        CHECK(!d.undecided);
        CHECK(d.category == 2);
        REQUIRE(d.combined.has_value());
        CHECK(d.combined->a1() == 2);
    }
}

TEST_CASE("agreeing classifiers reinforce the shared decision") {
    const Frame f = frame_of(3);
    const std::vector<double> scores{0.6, 0.3, 0.1};
    const TripletMass single = scores_to_triplet(scores, f);
    const ClfScores two{{"clf0", scores}, {"clf1", scores}};
    for (FuseMethod method :
         {FuseMethod::triplet, FuseMethod::dichotomous, FuseMethod::oracle}) {
        FuseOptions options;
        options.method = method;
        const ItemDecision d = fuse_item("item0", two, f, options);
        CAPTURE(to_string(method));
        CHECK(d.category == 0);
        REQUIRE(d.combined.has_value());
        CHECK(d.combined->m1() > single.m1());
    }
}

TEST_CASE("the exact methods agree with the oracle on decisive items") {
    Sampler sampler(41);
    const Frame f = frame_of(5);
    std::uint64_t steps_triplet = 0, steps_oracle = 0;
    for (int trial = 0; trial < 100; ++trial) {
        ClfScores scores;
        // One moderately confident classifier per trial plus two noisy ones,
        // all broadly favoring category `winner`.
        const std::size_t winner = sampler.uniform_index(5);
        for (int c = 0; c < 3; ++c) {
            std::vector<double> row;
            for (std::size_t k = 0; k < 5; ++k) row.push_back(0.05 + 0.3 * sampler.uniform(0.0, 1.0));
            row[winner] = 1.0 + sampler.uniform(0.0, 1.0);
            scores.push_back({"clf" + std::to_string(c), std::move(row)});
        }
        FuseOptions triplet_options;
        triplet_options.method = FuseMethod::triplet;
        FuseOptions oracle_options;
        oracle_options.method = FuseMethod::oracle;
        const ItemDecision dt = fuse_item("t", scores, f, triplet_options, &steps_triplet);
        const ItemDecision dg = fuse_item("t", scores, f, oracle_options, &steps_oracle);
        REQUIRE(!dt.undecided);
        REQUIRE(!dg.undecided);
        CHECK(dt.category == winner);
        CHECK(dg.category == winner);
    }
    CHECK(steps_triplet == steps_oracle); // same number of pairwise folds
}

TEST_CASE("total conflict yields an undecided item, not an exception") {
    const Frame f = frame_of(3);
    const ClfScores certain_clash{{"clf0", {1.0, 0.0, 0.0}}, {"clf1", {0.0, 1.0, 0.0}}};

    FuseOptions options;
    options.method = FuseMethod::triplet;
    const ItemDecision d = fuse_item("item0", certain_clash, f, options);
    CHECK(d.undecided);
    CHECK(!d.combined.has_value());
    CHECK(d.note.find("total conflict") != std::string::npos);

    // The dichotomous route hits the same wall: the floor reserves a share
    // of (1 - p), and certainty leaves nothing to reserve.
    options.method = FuseMethod::dichotomous;
    options.ignorance_floor = 0.0;
    CHECK(fuse_item("item0", certain_clash, f, options).undecided);
    options.ignorance_floor = 0.1;
    CHECK(fuse_item("item0", certain_clash, f, options).undecided);

    // Anything short of a certainty clash resolves.
    const ClfScores near_clash{{"clf0", {0.9, 0.1, 0.0}}, {"clf1", {0.1, 0.9, 0.0}}};
    CHECK(!fuse_item("item0", near_clash, f, options).undecided);

    // Through the matrix pipeline the conflict shows up in the counters.
    std::vector<ScoreMatrix::Item> items;
    items.push_back({"item0", certain_clash});
    const ScoreMatrix matrix = ScoreMatrix::make(f, std::move(items));
    FuseOptions report_options;
    report_options.method = FuseMethod::triplet;
    const FusionReport report = fuse_matrix(matrix, report_options);
    CHECK(report.undecided == 1);
    CHECK(report.decisions.at(0).undecided);

    const std::map<std::string, std::string> labels{{"item0", "h0"}};
    const FusionReport scored = evaluate(matrix, labels, report_options);
    REQUIRE(scored.accuracy.has_value());
    CHECK(*scored.accuracy == 0.0); // undecided counts as incorrect
}

TEST_CASE("the oracle method refuses oversized frames") {
    const Frame f = frame_of(17);
    std::vector<double> row(17, 0.1);
    row[3] = 1.0;
    const ClfScores scores{{"clf0", row}, {"clf1", row}};
    FuseOptions options;
    options.method = FuseMethod::oracle;
    CHECK(throws_mentioning([&] { fuse_item("item0", scores, f, options); }, "16"));
    options.method = FuseMethod::triplet;
    CHECK_NOTHROW(fuse_item("item0", scores, f, options));
}

TEST_CASE("evaluation scores decisions and individual classifiers") {
    const Frame f = frame_of(3);
    std::vector<ScoreMatrix::Item> items;
    items.push_back({"good", {{"clf0", {0.8, 0.1, 0.1}}, {"clf1", {0.7, 0.2, 0.1}}}});
    items.push_back({"bad", {{"clf0", {0.1, 0.8, 0.1}}, {"clf1", {0.6, 0.3, 0.1}}}});
    const ScoreMatrix matrix = ScoreMatrix::make(f, std::move(items));
    const std::map<std::string, std::string> labels{{"good", "h0"}, {"bad", "h2"}};

    FuseOptions options;
    options.method = FuseMethod::triplet;
    const FusionReport report = evaluate(matrix, labels, options);
    REQUIRE(report.accuracy.has_value());
    CHECK(*report.accuracy == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(report.individual_accuracy.size() == 2);
    CHECK(report.individual_accuracy.at(0).first == "clf0");
    CHECK(report.individual_accuracy.at(0).second == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(report.individual_accuracy.at(1).second == doctest::Approx(0.5).epsilon(1e-12));

    // fuse_matrix never reports accuracy.
    CHECK(!fuse_matrix(matrix, options).accuracy.has_value());
    CHECK(fuse_matrix(matrix, options).individual_accuracy.empty());

    const std::map<std::string, std::string> missing{{"good", "h0"}};
    CHECK(throws_mentioning([&] { evaluate(matrix, missing, options); }, "bad"));
    const std::map<std::string, std::string> unknown{{"good", "h0"}, {"bad", "nope"}};
    CHECK_THROWS_AS(evaluate(matrix, unknown, options), FrameError);
}

TEST_CASE("synthetic workloads are seeded and reproducible") {
    SynthParams params;
    params.categories = 4;
    params.items = 50;
    params.classifiers = 3;
    params.accuracy = 0.8;
    params.seed = 7;

    const SynthWorkload a = synth_workload(params);
    const SynthWorkload b = synth_workload(params);
    CHECK(score_csv(a.matrix) == score_csv(b.matrix));
    CHECK(labels_csv(a.labels) == labels_csv(b.labels));
    CHECK(a.matrix.items().size() == 50);
    CHECK(a.matrix.classifier_ids().size() == 3);
    CHECK(a.labels.size() == 50);

    params.seed = 8;
    const SynthWorkload c = synth_workload(params);
    CHECK(score_csv(a.matrix) != score_csv(c.matrix));

    params.noise = NoiseModel::exponential;
    const SynthWorkload d = synth_workload(params);
    for (const auto& item : d.matrix.items()) {
        for (const auto& [clf, scores] : item.scores) {
            for (double s : scores) CHECK(s > 0.0);
        }
    }
}

TEST_CASE("synthetic parameters are validated") {
    SynthParams params;
    params.categories = 1;
    CHECK_THROWS_AS(synth_workload(params), MassError);
    params = SynthParams{};
    params.items = 0;
    CHECK_THROWS_AS(synth_workload(params), MassError);
    params = SynthParams{};
    params.classifiers = 0;
    CHECK_THROWS_AS(synth_workload(params), MassError);
    params = SynthParams{};
    params.accuracy = 0.1; // equals chance for 10 categories
    CHECK_THROWS_AS(synth_workload(params), MassError);
    params.accuracy = 1.2;
    CHECK_THROWS_AS(synth_workload(params), MassError);
}

TEST_CASE("the winner score dominates the per-category noise") {
    SynthParams params;
    params.categories = 10;
    params.items = 1000;
    params.classifiers = 5;
    params.accuracy = 0.7;
    params.seed = 99;
    const SynthWorkload w = synth_workload(params);

    FuseOptions options;
    options.method = FuseMethod::triplet;
    const FusionReport report = evaluate(w.matrix, w.labels, options);
    REQUIRE(report.individual_accuracy.size() == 5);
    for (const auto& [clf, acc] : report.individual_accuracy) {
        CAPTURE(clf);
        CHECK(acc > 0.64);
        CHECK(acc < 0.76);
    }
    // Fusing five independent 0.7 classifiers must beat any one of them.
    REQUIRE(report.accuracy.has_value());
    for (const auto& [clf, acc] : report.individual_accuracy) {
        CHECK(*report.accuracy > acc);
    }
}

TEST_CASE("fusion reports are deterministic apart from wall time") {
    SynthParams params;
    params.categories = 6;
    params.items = 40;
    params.classifiers = 4;
    params.seed = 123;
    const SynthWorkload w = synth_workload(params);

    for (FuseMethod method :
         {FuseMethod::triplet, FuseMethod::dichotomous, FuseMethod::oracle}) {
        FuseOptions options;
        options.method = method;
        const FusionReport r1 = evaluate(w.matrix, w.labels, options);
        const FusionReport r2 = evaluate(w.matrix, w.labels, options);
        CAPTURE(to_string(method));
        CHECK(r1.combine_steps == r2.combine_steps);
        CHECK(r1.undecided == r2.undecided);
        CHECK(*r1.accuracy == *r2.accuracy);
        REQUIRE(r1.decisions.size() == r2.decisions.size());
        for (std::size_t i = 0; i < r1.decisions.size(); ++i) {
            CHECK(r1.decisions[i].undecided == r2.decisions[i].undecided);
            CHECK(r1.decisions[i].category == r2.decisions[i].category);
        }
    }
}

TEST_CASE("method names round-trip through their string forms") {
    for (FuseMethod method :
         {FuseMethod::triplet, FuseMethod::dichotomous, FuseMethod::oracle}) {
        CHECK(fuse_method_from_string(to_string(method)) == method);
    }
    CHECK(!fuse_method_from_string("auto").has_value());
    CHECK(noise_model_from_string("flat") == NoiseModel::flat);
    CHECK(noise_model_from_string("exponential") == NoiseModel::exponential);
    CHECK(!noise_model_from_string("gaussian").has_value());
}
