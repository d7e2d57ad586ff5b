#ifndef LEXBORROW_CANDIDATES_HPP
#define LEXBORROW_CANDIDATES_HPP

#include "lexborrow/corpus.hpp"

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace lexborrow {

// Context combos for the (left, right) neighbor tags: E = English, H = Hindi,
// $ = tweet boundary. "$$" cannot occur inside a mixed tweet.
constexpr size_t kNumCombos = 8;
constexpr std::array<const char*, kNumCombos> kComboNames = {"EE", "HH", "EH", "HE",
                                                             "$E", "E$", "$H", "H$"};

// Feature blocks, one per mixed-tweet category.
constexpr std::array<TweetCategory, 3> kMixedCategories = {TweetCategory::CME, TweetCategory::CMH,
                                                           TweetCategory::CMEQ};
constexpr size_t kFeatureDim = 24;

/// Column names CME_EE .. CMEQ_H$ in block-major order.
std::vector<std::string> feature_column_names();

/// Per-word context profile: three 8-way fraction blocks. A block is
/// all-zero when the word never occurs in that category, and sums to 1
/// otherwise.
struct ContextFeatureVector {
    std::string word;
    std::array<double, kFeatureDim> values{};

    bool all_zero() const;
};

/// Occurrence counts of En-tagged tokens inside CME/CMH/CMEQ tweets.
/// Every occurrence counts, not once per tweet.
std::map<std::string, uint64_t> foreign_word_frequency(const Corpus& corpus, unsigned threads = 1);

/// Top-n words by count (count ties broken by lexicographic order), minus
/// the stoplist, optionally intersected with a noun lexicon. Result keeps
/// descending-count order.
std::vector<std::string> select_candidates(
    const std::map<std::string, uint64_t>& freqs, const std::unordered_set<std::string>& stoplist,
    const std::optional<std::unordered_set<std::string>>& noun_lexicon, size_t top_n = 1000);

/// Builds the 24-entry context profile for every requested word in one
/// corpus scan. NE/Other neighbors are skipped outward until an En/Hi token
/// or the tweet boundary.
std::vector<ContextFeatureVector> context_feature_table(const Corpus& corpus,
                                                        const std::vector<std::string>& words,
                                                        unsigned threads = 1);

ContextFeatureVector context_features(const Corpus& corpus, const std::string& word);

struct ClusterModel {
    size_t k = 0;
    std::vector<std::array<double, kFeatureDim>> centroids;
    std::map<std::string, size_t> assignment; // word -> cluster id
    double inertia = 0.0;
    std::vector<double> inertia_per_iteration;
};

/// Lloyd iterations with seeded greedy farthest-point initialization.
/// Empty clusters are re-seeded with the point farthest from its centroid.
ClusterModel kmeans(const std::vector<ContextFeatureVector>& vectors, size_t k, uint64_t seed,
                    size_t max_iter = 100);

struct ElbowResult {
    size_t chosen_k = 0;
    std::vector<std::pair<size_t, double>> inertia_curve; // (k, inertia)
};

/// Runs kmeans across k_range and picks the k with the largest second
/// difference of the inertia curve.
ElbowResult elbow_k(const std::vector<ContextFeatureVector>& vectors, size_t k_min, size_t k_max,
                    uint64_t seed, size_t max_iter = 100);

struct TargetWordSets {
    std::vector<std::string> bbw;
    std::vector<std::string> ran;

    std::vector<std::string> full() const;
};

/// Per cluster, the words with the highest and lowest baseline score.
std::vector<std::string> sample_bbw(const ClusterModel& model,
                                    const std::map<std::string, double>& baseline_scores);

/// n words drawn without replacement, round-robin across clusters, never
/// from the exclude set.
std::vector<std::string> sample_random(const ClusterModel& model, size_t n,
                                       const std::unordered_set<std::string>& exclude,
                                       uint64_t seed);

} // namespace lexborrow

#endif
