#include "lexborrow/evaluation.hpp"

#include "lexborrow/rng.hpp"

#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

using namespace lexborrow;

namespace {

RankList list_of(const std::vector<std::pair<std::string, double>>& scored) {
    std::vector<Score> scores;
    for (const auto& [word, value] : scored) {
        scores.push_back({word, MetricId::UUR, value});
    }
    return rank(std::move(scores));
}

std::vector<std::string> numbered_words(size_t n) {
    std::vector<std::string> words;
    for (size_t i = 0; i < n; ++i) {
        std::string id = std::to_string(i);
        words.push_back("w" + std::string(3 - std::min<size_t>(3, id.size()), '0') + id);
    }
    return words;
}

RankList shuffled_list(const std::vector<std::string>& words, Rng& rng) {
    std::vector<std::string> order = words;
    rng.shuffle(order);
    std::vector<std::pair<std::string, double>> scored;
    for (size_t i = 0; i < order.size(); ++i) {
        scored.emplace_back(order[i], static_cast<double>(order.size() - i));
    }
    return list_of(scored);
}

RangePartition partition_of(const std::vector<std::vector<std::string>>& buckets) {
    REQUIRE(buckets.size() == 5);
    RangePartition partition;
    for (size_t i = 0; i < 5; ++i) {
        partition[i].label = kRangeLabels[i];
        partition[i].words.insert(buckets[i].begin(), buckets[i].end());
    }
    return partition;
}

} // namespace

TEST_CASE("spearman of identical lists is 1") {
    const auto list = list_of({{"a", 3.0}, {"b", 2.0}, {"c", 1.0}});
    CHECK(spearman(list, list) == doctest::Approx(1.0));
}

TEST_CASE("spearman of an exact reversal is -1") {
    const auto fwd = list_of({{"a", 3.0}, {"b", 2.0}, {"c", 1.0}, {"d", 0.5}});
    const auto rev = list_of({{"a", 0.5}, {"b", 1.0}, {"c", 2.0}, {"d", 3.0}});
    CHECK(spearman(fwd, rev) == doctest::Approx(-1.0));
}

TEST_CASE("spearman matches the hand formula without ties") {
    // ranks (a,b,c) = (1,2,3) vs (2,1,3): 1 - 6*2/(3*8) = 0.5
    const auto list_a = list_of({{"a", 3.0}, {"b", 2.0}, {"c", 1.0}});
    const auto list_b = list_of({{"b", 3.0}, {"a", 2.0}, {"c", 1.0}});
    CHECK(spearman(list_a, list_b) == doctest::Approx(0.5));
}

TEST_CASE("spearman of a fully tied list is 0") {
    const auto tied = list_of({{"a", 1.0}, {"b", 1.0}, {"c", 1.0}});
    const auto other = list_of({{"a", 3.0}, {"b", 2.0}, {"c", 1.0}});
    CHECK(spearman(tied, other) == 0.0);
}

TEST_CASE("spearman rejects mismatched inputs") {
    const auto abc = list_of({{"a", 3.0}, {"b", 2.0}, {"c", 1.0}});
    const auto abd = list_of({{"a", 3.0}, {"b", 2.0}, {"d", 1.0}});
    const auto ab = list_of({{"a", 3.0}, {"b", 2.0}});
    const auto single = list_of({{"a", 3.0}});
    CHECK_THROWS_AS(spearman(abc, abd), DataError);
    CHECK_THROWS_AS(spearman(abc, ab), DataError);
    CHECK_THROWS_AS(spearman(single, single), DataError);
}

TEST_CASE("spearman is symmetric and bounded on random lists") {
    Rng rng(404);
    const auto words = numbered_words(23);
    for (int trial = 0; trial < 200; ++trial) {
        const auto a = shuffled_list(words, rng);
        const auto b = shuffled_list(words, rng);
        const double ab = spearman(a, b);
        CHECK(ab == spearman(b, a));
        CHECK(ab >= -1.0);
        CHECK(ab <= 1.0);
    }
}

TEST_CASE("spearman is invariant under strictly increasing rescoring") {
    Rng rng(55);
    const auto words = numbered_words(15);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::pair<std::string, double>> scored, rescored;
        for (const auto& word : words) {
            const double value = std::floor(rng.uniform_real() * 8.0); // force some ties
            scored.emplace_back(word, value);
            rescored.emplace_back(word, std::exp(value / 3.0) + 1.0);
        }
        const auto probe = shuffled_list(words, rng);
        const double before = spearman(list_of(scored), probe);
        const double after = spearman(list_of(rescored), probe);
        CHECK(before == doctest::Approx(after).epsilon(1e-12));
    }
}

TEST_CASE("spearman of random permutations is centered on 0") {
    Rng rng(2024);
    const auto words = numbered_words(57);
    const auto identity = shuffled_list(words, rng);
    double sum = 0;
    const int trials = 1000;
    for (int trial = 0; trial < trials; ++trial) {
        sum += spearman(identity, shuffled_list(words, rng));
    }
    CHECK(std::abs(sum / trials) < 0.05);
}

TEST_CASE("partition_ranges reproduces the 57-word split") {
    std::vector<std::pair<std::string, double>> scored;
    const auto words = numbered_words(57);
    for (size_t i = 0; i < words.size(); ++i) {
        scored.emplace_back(words[i], 100.0 - static_cast<double>(i));
    }
    const auto ranges = partition_ranges(list_of(scored));

    const std::array<size_t, 5> expected{11, 11, 12, 11, 12};
    for (size_t i = 0; i < 5; ++i) {
        CHECK(ranges[i].label == kRangeLabels[i]);
        CHECK(ranges[i].words.size() == expected[i]);
    }
    // top band holds the 11 best-scored words
    for (size_t i = 0; i < 11; ++i) CHECK(ranges[0].words.count(words[i]) == 1);
}

TEST_CASE("partition_ranges divides evenly when it can") {
    Rng rng(7);
    const auto ranges10 = partition_ranges(shuffled_list(numbered_words(10), rng));
    for (const auto& range : ranges10) CHECK(range.words.size() == 2);

    const auto ranges5 = partition_ranges(shuffled_list(numbered_words(5), rng));
    for (const auto& range : ranges5) CHECK(range.words.size() == 1);
}

TEST_CASE("partition_ranges needs at least five words") {
    Rng rng(8);
    CHECK_THROWS_AS(partition_ranges(shuffled_list(numbered_words(4), rng)), DataError);
}

TEST_CASE("partition sizes depend only on n and cover the list") {
    Rng rng(99);
    for (int trial = 0; trial < 40; ++trial) {
        const size_t n = 5 + rng.uniform_index(96);
        const auto words = numbered_words(n);
        const auto first = partition_ranges(shuffled_list(words, rng));
        const auto second = partition_ranges(shuffled_list(words, rng));

        std::unordered_set<std::string> seen;
        size_t total = 0;
        for (size_t i = 0; i < 5; ++i) {
            CHECK(first[i].words.size() == (i + 1) * n / 5 - i * n / 5);
            CHECK(first[i].words.size() == second[i].words.size());
            total += first[i].words.size();
            for (const auto& word : first[i].words) CHECK(seen.insert(word).second);
        }
        CHECK(total == n);
    }
}

TEST_CASE("bucket_pr on a one-word swap in the top band") {
    const auto predicted = partition_of({{"a", "b", "c"},
                                         {"d", "e", "f"},
                                         {"g", "h", "i"},
                                         {"j", "k", "l"},
                                         {"m", "n", "o"}});
    const auto truth = partition_of({{"b", "c", "d"},
                                     {"a", "e", "f"},
                                     {"g", "h", "i"},
                                     {"j", "k", "l"},
                                     {"m", "n", "o"}});
    const auto report = bucket_pr(predicted, truth);

    CHECK(report.buckets[0].tp == 2);
    CHECK(report.buckets[0].fp == 1);
    CHECK(report.buckets[0].tn == 1);
    CHECK(report.buckets[0].precision == doctest::Approx(2.0 / 3.0));
    CHECK(report.buckets[0].recall == doctest::Approx(2.0 / 3.0));
    CHECK(report.buckets[2].precision == doctest::Approx(1.0));

    // equal-sized corresponding buckets force precision == recall throughout
    for (const auto& bucket : report.buckets) CHECK(bucket.precision == bucket.recall);
    CHECK(report.macro_precision == doctest::Approx(13.0 / 15.0));
    CHECK(report.micro_precision == doctest::Approx(13.0 / 15.0));
    CHECK(report.micro_precision == report.micro_recall);
}

TEST_CASE("bucket_pr of identical partitions is all ones") {
    Rng rng(6);
    const auto partition = partition_ranges(shuffled_list(numbered_words(23), rng));
    const auto report = bucket_pr(partition, partition);
    for (const auto& bucket : report.buckets) {
        CHECK(bucket.fp == 0);
        CHECK(bucket.tn == 0);
        CHECK(bucket.precision == 1.0);
        CHECK(bucket.recall == 1.0);
    }
    CHECK(report.macro_precision == 1.0);
    CHECK(report.macro_recall == 1.0);
    CHECK(report.micro_precision == 1.0);
    CHECK(report.micro_recall == 1.0);
}

TEST_CASE("bucket_pr rejects partitions over different word sets") {
    Rng rng(9);
    const auto a = partition_ranges(shuffled_list(numbered_words(10), rng));
    auto other = numbered_words(10);
    other[0] = "zz";
    const auto b = partition_ranges(shuffled_list(other, rng));
    CHECK_THROWS_AS(bucket_pr(a, b), DataError);
}

TEST_CASE("micro precision always equals micro recall") {
    Rng rng(123);
    for (int trial = 0; trial < 200; ++trial) {
        const size_t n = 5 + rng.uniform_index(76);
        const auto words = numbered_words(n);
        const auto predicted = partition_ranges(shuffled_list(words, rng));
        const auto truth = partition_ranges(shuffled_list(words, rng));
        const auto report = bucket_pr(predicted, truth);
        CHECK(report.micro_precision == report.micro_recall);
        for (size_t i = 0; i < 5; ++i) {
            CHECK(report.buckets[i].tp + report.buckets[i].fp == predicted[i].words.size());
            CHECK(report.buckets[i].tp + report.buckets[i].tn == truth[i].words.size());
        }
    }
}
