#ifndef LEXBORROW_SYNTH_HPP
#define LEXBORROW_SYNTH_HPP

#include "lexborrow/corpus.hpp"
#include "lexborrow/metrics.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace lexborrow {

/// Generative model for desk-scale validation: seeded users with planted
/// mixing rates, and target words with planted borrowing propensities p.
/// A target lands in Hindi and mixed-Hindi tweets at a rate proportional
/// to p and in English tweets proportional to (1 - p), which makes the
/// usage ratios monotone in p by construction.
struct SynthSpec {
    uint64_t n_users = 100;
    uint64_t n_tweets = 10000;
    uint64_t hi_lexicon_size = 300;
    uint64_t en_lexicon_size = 300;
    std::vector<std::pair<std::string, double>> targets; // word -> p
    double mix_rate_min = 0.05;
    double mix_rate_max = 0.35;
    uint64_t tweet_len_min = 6;
    uint64_t tweet_len_max = 12;
    double insert_rate = 1.0; // chance a tweet attempts a target insertion
    uint64_t seed = 1;

    void validate() const;

    /// n targets named tw000.. with p evenly spread over [0, 1].
    static std::vector<std::pair<std::string, double>> spread_targets(size_t n);
};

SynthSpec load_synth_spec(const std::string& path);

struct PlantedTruth {
    std::map<std::string, double> propensity; // word -> p
    RankList ranking;                         // descending p, average-tie ranks
};

struct SynthResult {
    Corpus corpus; // tagged by construction, ids in canonical order
    PlantedTruth truth;
};

SynthResult generate_corpus(const SynthSpec& spec);

/// Synthetic reference-frequency table over the full En lexicon, for
/// exercising the baseline scoring path on generated data. Target words get
/// counts shaped by their planted propensity.
BaselineTable synth_baseline_table(const SynthSpec& spec);

/// The word lists backing generation: targets first, then filler words.
std::vector<std::string> synth_en_lexicon(const SynthSpec& spec);
std::vector<std::string> synth_hi_lexicon(const SynthSpec& spec);

/// Independent brute-force recount of per-word usage. Kept free of any
/// shared code with accumulate_usage so the two can check each other.
UsageStatsMap oracle_stats(const Corpus& corpus, const std::unordered_set<std::string>& words);

} // namespace lexborrow

#endif
