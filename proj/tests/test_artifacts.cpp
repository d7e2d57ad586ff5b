#include "lexborrow/artifacts.hpp"

#include "lexborrow/io.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <string>

using namespace lexborrow;

namespace {

struct TempPath {
    std::string path;
    explicit TempPath(const std::string& name)
        : path((std::filesystem::temp_directory_path() / name).string()) {}
    ~TempPath() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("stats tsv round-trips") {
    UsageStatsMap stats;
    WordUsageStats w;
    w.word = "film";
    w.u_hi = 3;
    w.u_cmh = 1;
    w.u_en = 7;
    w.t_hi = 5;
    w.t_cmh = 2;
    w.t_en = 9;
    w.p_hi = 4;
    w.p_en = 11;
    stats.emplace("film", w);
    stats.emplace("scene", WordUsageStats{"scene"});

    TempPath file("lb_stats.tsv");
    write_stats_tsv(file.path, stats);
    CHECK(read_stats_tsv(file.path) == stats);
}

TEST_CASE("scores tsv round-trips infinities and exclusions") {
    ScoredWords scored;
    scored.scores.push_back({"a", MetricId::UUR, 1.5});
    scored.scores.push_back({"b", MetricId::UUR, std::numeric_limits<double>::infinity()});
    scored.scores.push_back({"c", MetricId::UUR, 0.0});
    scored.excluded = {"zed"};

    TempPath file("lb_scores.tsv");
    write_scores_tsv(file.path, scored);
    const auto back = read_scores_tsv(file.path);
    REQUIRE(back.scores.size() == 3);
    CHECK(back.scores[0].word == "a");
    CHECK(back.scores[0].value == 1.5);
    CHECK(back.scores[0].metric == MetricId::UUR);
    CHECK(std::isinf(back.scores[1].value));
    CHECK(back.excluded == scored.excluded);
}

TEST_CASE("rank list tsv round-trips order, scores and tied ranks") {
    std::vector<Score> scores;
    scores.push_back({"a", MetricId::UTR, 3.0});
    scores.push_back({"b", MetricId::UTR, 1.0});
    scores.push_back({"c", MetricId::UTR, 3.0});
    const RankList list = rank(std::move(scores));

    TempPath file("lb_rank.tsv");
    write_ranklist_tsv(file.path, list);
    const auto back = read_ranklist_tsv(file.path);
    CHECK(back.metric == MetricId::UTR);
    REQUIRE(back.entries.size() == 3);
    for (size_t i = 0; i < 3; ++i) {
        CHECK(back.entries[i].word == list.entries[i].word);
        CHECK(back.entries[i].rank == list.entries[i].rank);
        CHECK(back.entries[i].score == list.entries[i].score);
    }
}

TEST_CASE("candidates tsv preserves selection order") {
    const std::vector<std::string> words{"film", "scene", "khana"};
    const std::map<std::string, uint64_t> freqs{{"film", 9}, {"scene", 4}, {"khana", 4}};

    TempPath file("lb_cands.tsv");
    write_candidates_tsv(file.path, words, freqs);
    CHECK(read_candidates_tsv(file.path) == words);
}

TEST_CASE("features tsv round-trips fractions exactly") {
    std::vector<ContextFeatureVector> table(2);
    table[0].word = "film";
    table[0].values[4] = 1.0 / 3.0;
    table[0].values[5] = 2.0 / 3.0;
    table[0].values[9] = 1.0;
    table[1].word = "scene";

    TempPath file("lb_feats.tsv");
    write_features_tsv(file.path, table);
    const auto back = read_features_tsv(file.path);
    REQUIRE(back.size() == 2);
    for (size_t i = 0; i < 2; ++i) {
        CHECK(back[i].word == table[i].word);
        CHECK(back[i].values == table[i].values); // shortest-round-trip doubles
    }
}

TEST_CASE("clusters tsv restores k and the assignment") {
    ClusterModel model;
    model.k = 3;
    model.assignment = {{"a", 0}, {"b", 2}, {"c", 1}, {"d", 2}};

    TempPath file("lb_clusters.tsv");
    write_clusters_tsv(file.path, model);
    const auto back = read_clusters_tsv(file.path);
    CHECK(back.k == 3);
    CHECK(back.assignment == model.assignment);
}

TEST_CASE("elbow json round-trips the curve") {
    ElbowResult elbow;
    elbow.chosen_k = 3;
    elbow.inertia_curve = {{2, 10.5}, {3, 2.25}, {4, 1.125}};

    TempPath file("lb_elbow.json");
    write_elbow_json(file.path, elbow);
    const auto back = read_elbow_json(file.path);
    CHECK(back.chosen_k == 3);
    CHECK(back.inertia_curve == elbow.inertia_curve);
}

TEST_CASE("targets tsv keeps bbw and ran apart") {
    TargetWordSets targets;
    targets.bbw = {"bb1", "bb2"};
    targets.ran = {"rn1", "rn2", "rn3"};

    TempPath file("lb_targets.tsv");
    write_targets_tsv(file.path, targets);
    const auto back = read_targets_tsv(file.path);
    CHECK(back.bbw == targets.bbw);
    CHECK(back.ran == targets.ran);
    CHECK(back.full() == targets.full());
}

TEST_CASE("lpf tsv round-trips counts") {
    std::vector<LPFScore> scores(2);
    scores[0].word = "film";
    scores[0].count_en = 30;
    scores[0].count_hi = 20;
    scores[0].count_none = 8;
    scores[0].lpf = 10;
    scores[1].word = "scene";
    scores[1].lpf = 0;

    TempPath file("lb_lpf.tsv");
    write_lpf_tsv(file.path, scores);
    const auto back = read_lpf_tsv(file.path);
    REQUIRE(back.size() == 2);
    CHECK(back[0].word == "film");
    CHECK(back[0].count_en == 30);
    CHECK(back[0].count_none == 8);
    CHECK(back[0].lpf == 10);
    CHECK(back[1].lpf == 0);
}

TEST_CASE("truth tsv round-trips the planted ranking") {
    PlantedTruth truth;
    std::vector<Score> scores;
    for (const auto& [word, p] : SynthSpec::spread_targets(4)) {
        truth.propensity[word] = p;
        scores.push_back({word, MetricId::Planted, p});
    }
    truth.ranking = rank(std::move(scores));

    TempPath file("lb_truth.tsv");
    write_truth_tsv(file.path, truth);
    const auto back = read_truth_tsv(file.path);
    CHECK(back.metric == MetricId::Planted);
    REQUIRE(back.entries.size() == 4);
    for (size_t i = 0; i < 4; ++i) {
        CHECK(back.entries[i].word == truth.ranking.entries[i].word);
        CHECK(back.entries[i].rank == truth.ranking.entries[i].rank);
    }
}

TEST_CASE("histogram json round-trips counts") {
    const std::map<std::string, uint64_t> hist{{"En", 23}, {"Hi", 23}, {"CME", 51},
                                               {"CMH", 41}, {"CMEQ", 20}, {"CS", 19},
                                               {"Other", 23}};
    TempPath file("lb_hist.json");
    write_histogram_json(file.path, hist);
    CHECK(read_histogram_json(file.path) == hist);
}

TEST_CASE("baseline tsv is loadable by the metrics reader") {
    BaselineTable table{{"film", {120, 40}}, {"khana", {3, 77}}};
    TempPath file("lb_base.tsv");
    write_baseline_tsv(file.path, table);
    CHECK(load_baseline_table(file.path) == table);
}

TEST_CASE("wordlists keep one word per line") {
    const std::vector<std::string> words{"alpha", "beta", "gamma"};
    TempPath file("lb_words.txt");
    write_wordlist(file.path, words);
    CHECK(read_lines(file.path) == words);
}

TEST_CASE("eval json round-trips the full report") {
    EvalReport report;
    report.metric = "uur";
    report.cohort = "age_lt_30";
    report.n = 57;
    report.rho = -0.25;
    for (size_t i = 0; i < 5; ++i) {
        report.buckets.buckets[i].tp = i + 1;
        report.buckets.buckets[i].fp = 5 - i;
        report.buckets.buckets[i].tn = i;
        report.buckets.buckets[i].precision = static_cast<double>(i + 1) / 6.0;
        report.buckets.buckets[i].recall = static_cast<double>(i + 1) / (2.0 * i + 1.0);
    }
    report.buckets.macro_precision = 0.5;
    report.buckets.macro_recall = 0.75;
    report.buckets.micro_precision = 0.6;
    report.buckets.micro_recall = 0.6;

    TempPath file("lb_eval.json");
    write_eval_json(file.path, report);
    const auto back = read_eval_json(file.path);
    CHECK(back.metric == report.metric);
    CHECK(back.cohort == report.cohort);
    CHECK(back.n == report.n);
    CHECK(back.rho == report.rho);
    for (size_t i = 0; i < 5; ++i) {
        CHECK(back.buckets.buckets[i].tp == report.buckets.buckets[i].tp);
        CHECK(back.buckets.buckets[i].fp == report.buckets.buckets[i].fp);
        CHECK(back.buckets.buckets[i].tn == report.buckets.buckets[i].tn);
        CHECK(back.buckets.buckets[i].precision == report.buckets.buckets[i].precision);
        CHECK(back.buckets.buckets[i].recall == report.buckets.buckets[i].recall);
    }
    CHECK(back.buckets.macro_precision == report.buckets.macro_precision);
    CHECK(back.buckets.micro_recall == report.buckets.micro_recall);
}

TEST_CASE("readers reject files with the wrong header") {
    TempPath file("lb_badheader.tsv");
    write_file_atomic(file.path, "nope\tnope\n");
    CHECK_THROWS_AS(read_stats_tsv(file.path), DataError);
    CHECK_THROWS_AS(read_ranklist_tsv(file.path), DataError);
    CHECK_THROWS_AS(read_candidates_tsv(file.path), DataError);
    CHECK_THROWS_AS(read_lpf_tsv(file.path), DataError);
    CHECK_THROWS_AS(read_truth_tsv(file.path), DataError);
}

TEST_CASE("atomic writers leave no temp droppings") {
    TempPath file("lb_atomic.tsv");
    write_wordlist(file.path, {"w"});
    const auto dir = std::filesystem::temp_directory_path();
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        const auto name = entry.path().filename().string();
        if (name.rfind("lb_atomic", 0) == 0) CHECK(name == "lb_atomic.tsv");
    }
}
