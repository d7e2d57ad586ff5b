#ifndef LEXBORROW_GROUND_TRUTH_HPP
#define LEXBORROW_GROUND_TRUTH_HPP

#include "lexborrow/corpus.hpp"
#include "lexborrow/metrics.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace lexborrow {

enum class SurveyChoice { En, Hi, None };

struct Participant {
    std::string id;
    unsigned age = 0;
    std::string education; // collected, not analyzed
    std::map<std::string, SurveyChoice> choices; // missing answers are absent
};

struct SurveyResponseSet {
    std::vector<Participant> participants;
    std::vector<std::string> words; // column order of the survey form
};

/// Participant filter; nullopt means everyone.
using Cohort = std::optional<std::unordered_set<std::string>>;

/// Parses `participant_id,age,education,<word...>` with cells EN/HI/NONE or
/// empty. Duplicate participant ids and invalid cells are load errors.
SurveyResponseSet load_responses(const std::string& path);

struct LPFScore {
    std::string word;
    uint64_t count_en = 0;
    uint64_t count_hi = 0;
    uint64_t count_none = 0;
    int64_t lpf = 0; // count_en - count_hi
};

LPFScore lpf(const SurveyResponseSet& responses, const std::string& word,
             const Cohort& cohort = std::nullopt);

std::vector<LPFScore> lpf_all(const SurveyResponseSet& responses,
                              const Cohort& cohort = std::nullopt);

/// Descending LPF with average ranks for ties.
RankList rank_by_lpf(const SurveyResponseSet& responses, const Cohort& cohort = std::nullopt);

struct AgeSplit {
    Cohort young; // age < threshold
    Cohort elder; // age >= threshold
};

AgeSplit split_age(const SurveyResponseSet& responses, unsigned threshold = 30);

enum class MixBucketLabel { High, Mid, Low };

const char* to_string(MixBucketLabel label);
MixBucketLabel mix_bucket_from_string(std::string_view s);

struct UserMixBucket {
    MixBucketLabel label;
    std::unordered_set<std::string> user_ids;
};

struct MixBucketThresholds {
    double low_below = 0.07; // Low: fraction < low_below
    double high_above = 0.20; // High: fraction > high_above; Mid otherwise
};

struct UserMixInfo {
    uint64_t total = 0;
    uint64_t mixed = 0; // CME + CMH + CMEQ

    double fraction() const {
        return total ? static_cast<double>(mixed) / static_cast<double>(total) : 0.0;
    }
};

std::map<std::string, UserMixInfo> user_mix_fractions(const Corpus& corpus);

/// Partitions users into High / Mid / Low mixing-extent buckets.
std::array<UserMixBucket, 3> bucket_users(const Corpus& corpus,
                                          const MixBucketThresholds& thresholds = {});

/// Sub-corpus of tweets whose author is in the given user set.
Corpus restrict_to_users(const Corpus& corpus, const std::unordered_set<std::string>& users);

} // namespace lexborrow

#endif
