#include "lexborrow/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

namespace lexborrow {

const char* to_string(RangeLabel label) {
    switch (label) {
        case RangeLabel::SB: return "SB";
        case RangeLabel::LB: return "LB";
        case RangeLabel::BL: return "BL";
        case RangeLabel::LM: return "LM";
        case RangeLabel::SM: return "SM";
    }
    return "SB";
}

double spearman(const RankList& list_a, const RankList& list_b) {
    const size_t n = list_a.entries.size();
    if (n != list_b.entries.size() || n < 2) {
        throw DataError("spearman needs two rank lists over the same words, n >= 2");
    }
    std::unordered_map<std::string, double> ranks_b;
    ranks_b.reserve(n);
    for (const RankEntry& e : list_b.entries) ranks_b.emplace(e.word, e.rank);

    std::vector<double> ra(n), rb(n);
    for (size_t i = 0; i < n; ++i) {
        const RankEntry& e = list_a.entries[i];
        auto it = ranks_b.find(e.word);
        if (it == ranks_b.end()) throw DataError("rank lists disagree on word set: " + e.word);
        ra[i] = e.rank;
        rb[i] = it->second;
    }

    double mean_a = 0, mean_b = 0;
    for (size_t i = 0; i < n; ++i) {
        mean_a += ra[i];
        mean_b += rb[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double cov = 0, var_a = 0, var_b = 0;
    for (size_t i = 0; i < n; ++i) {
        const double da = ra[i] - mean_a;
        const double db = rb[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return 0.0;
    const double rho = cov / std::sqrt(var_a * var_b);
    return std::clamp(rho, -1.0, 1.0);
}

RangePartition partition_ranges(const RankList& list) {
    const size_t n = list.entries.size();
    if (n < 5) throw DataError("partition_ranges needs at least 5 ranked words");
    RangePartition ranges;
    for (size_t i = 0; i < 5; ++i) {
        ranges[i].label = kRangeLabels[i];
        const size_t begin = (i * n) / 5;
        const size_t end = ((i + 1) * n) / 5;
        for (size_t k = begin; k < end; ++k) ranges[i].words.insert(list.entries[k].word);
    }
    return ranges;
}

BucketReport bucket_pr(const RangePartition& predicted, const RangePartition& truth) {
    std::unordered_set<std::string> union_pred, union_truth;
    for (size_t i = 0; i < 5; ++i) {
        union_pred.insert(predicted[i].words.begin(), predicted[i].words.end());
        union_truth.insert(truth[i].words.begin(), truth[i].words.end());
    }
    if (union_pred != union_truth) throw DataError("bucket partitions cover different word sets");

    BucketReport report;
    uint64_t sum_tp = 0, sum_tp_fp = 0, sum_tp_tn = 0;
    double sum_p = 0, sum_r = 0;
    for (size_t i = 0; i < 5; ++i) {
        const auto& b = predicted[i].words;
        const auto& g = truth[i].words;
        BucketCounts& counts = report.buckets[i];
        for (const auto& word : b) {
            if (g.count(word)) ++counts.tp;
        }
        counts.fp = b.size() - counts.tp;
        counts.tn = g.size() - counts.tp;
        const uint64_t tp_fp = counts.tp + counts.fp;
        const uint64_t tp_tn = counts.tp + counts.tn;
        counts.precision = tp_fp ? static_cast<double>(counts.tp) / static_cast<double>(tp_fp) : 0.0;
        counts.recall = tp_tn ? static_cast<double>(counts.tp) / static_cast<double>(tp_tn) : 0.0;
        sum_tp += counts.tp;
        sum_tp_fp += tp_fp;
        sum_tp_tn += tp_tn;
        sum_p += counts.precision;
        sum_r += counts.recall;
    }
    report.macro_precision = sum_p / 5.0;
    report.macro_recall = sum_r / 5.0;
    report.micro_precision =
        sum_tp_fp ? static_cast<double>(sum_tp) / static_cast<double>(sum_tp_fp) : 0.0;
    report.micro_recall =
        sum_tp_tn ? static_cast<double>(sum_tp) / static_cast<double>(sum_tp_tn) : 0.0;
    return report;
}

} // namespace lexborrow
