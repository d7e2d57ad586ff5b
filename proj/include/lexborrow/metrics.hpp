#ifndef LEXBORROW_METRICS_HPP
#define LEXBORROW_METRICS_HPP

#include "lexborrow/corpus.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace lexborrow {

enum class MetricId { UUR, UTR, UPR, Baseline, LPF, Planted };

const char* to_string(MetricId id);
MetricId metric_id_from_string(std::string_view s);

/// Per-word usage counters. U_* are unique users, T_* tweets, P_* phrases;
/// a word occurring several times in one tweet (or phrase) counts it once.
struct WordUsageStats {
    std::string word;
    uint64_t u_hi = 0, u_cmh = 0, u_en = 0;
    uint64_t t_hi = 0, t_cmh = 0, t_en = 0;
    uint64_t p_hi = 0, p_en = 0;

    bool operator==(const WordUsageStats&) const = default;
};

using UsageStatsMap = std::map<std::string, WordUsageStats>;

/// Counts word usage over a categorized corpus: tweet and user counts from
/// Hi/CMH/En tweets, phrase counts from the phrase segmentation of every
/// tweet. Partitions the scan over `threads` workers; the merged result does
/// not depend on the partitioning.
UsageStatsMap accumulate_usage(const Corpus& corpus, const std::unordered_set<std::string>& words,
                               unsigned threads = 1);

struct Score {
    std::string word;
    MetricId metric;
    double value = 0.0; // +inf when the denominator is 0 and the numerator is not
};

/// Ratio scores; nullopt means numerator and denominator are both zero and
/// the word is excluded from ranking.
std::optional<Score> uur(const WordUsageStats& stats);
std::optional<Score> utr(const WordUsageStats& stats);
std::optional<Score> upr(const WordUsageStats& stats);

struct ScoredWords {
    std::vector<Score> scores;
    std::vector<std::string> excluded;
};

/// Applies one of the three usage metrics to every word in the map.
ScoredWords score_usage(const UsageStatsMap& stats, MetricId metric);

using BaselineTable = std::map<std::string, std::pair<uint64_t, uint64_t>>; // word -> (F_E, F_H)

/// Reads `word<TAB>F_E<TAB>F_H` rows; a leading "word" header row is
/// skipped.
BaselineTable load_baseline_table(const std::string& path);

/// ln((F_E + k) / (F_H + k)); add-k smoothing keeps the ratio finite.
Score baseline_score(const std::string& word, uint64_t f_e, uint64_t f_h, uint64_t smoothing_k = 1);

/// Scores every word found in the table; missing words are excluded.
ScoredWords score_baseline(const std::vector<std::string>& words, const BaselineTable& table,
                           uint64_t smoothing_k = 1);

struct RankEntry {
    std::string word;
    double score = 0.0;
    double rank = 0.0; // tied values share the mean of their positions
};

struct RankList {
    MetricId metric = MetricId::UUR;
    std::vector<RankEntry> entries; // descending score; ties ordered by word
};

/// Sorts descending by score (+inf first) and assigns average ranks to ties.
RankList rank(std::vector<Score> scores);

} // namespace lexborrow

#endif
