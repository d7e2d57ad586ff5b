#include "lexborrow/candidates.hpp"

#include "lexborrow/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>
#include <unordered_map>

namespace lexborrow {

std::vector<std::string> feature_column_names() {
    std::vector<std::string> names;
    names.reserve(kFeatureDim);
    for (TweetCategory cat : kMixedCategories) {
        for (const char* combo : kComboNames) {
            names.push_back(std::string(to_string(cat)) + "_" + combo);
        }
    }
    return names;
}

bool ContextFeatureVector::all_zero() const {
    return std::all_of(values.begin(), values.end(), [](double v) { return v == 0.0; });
}

namespace {

int mixed_block_index(TweetCategory cat) {
    for (size_t i = 0; i < kMixedCategories.size(); ++i) {
        if (kMixedCategories[i] == cat) return static_cast<int>(i);
    }
    return -1;
}

template <typename Map>
void for_tweet_chunks(const Corpus& corpus, unsigned threads,
                      void (*scan)(const Corpus&, size_t, size_t, const void*, Map&),
                      const void* ctx, Map& merged) {
    const size_t n = corpus.tweets.size();
    if (threads == 0) threads = 1;
    const size_t chunks = std::min<size_t>(threads, std::max<size_t>(n, 1));
    if (chunks == 1) {
        scan(corpus, 0, n, ctx, merged);
        return;
    }
    std::vector<Map> partials(chunks);
    std::vector<std::thread> workers;
    workers.reserve(chunks);
    for (size_t c = 0; c < chunks; ++c) {
        const size_t begin = n * c / chunks;
        const size_t end = n * (c + 1) / chunks;
        workers.emplace_back(
            [&, begin, end, c] { scan(corpus, begin, end, ctx, partials[c]); });
    }
    for (auto& worker : workers) worker.join();
    for (auto& partial : partials) {
        for (auto& [key, value] : partial) merged[key] += value;
    }
}

void scan_foreign_freq(const Corpus& corpus, size_t begin, size_t end, const void*,
                       std::unordered_map<std::string, uint64_t>& counts) {
    for (size_t i = begin; i < end; ++i) {
        const Tweet& tweet = corpus.tweets[i];
        if (!tweet.category) throw DataError("tweet " + tweet.id + " is not categorized");
        if (mixed_block_index(*tweet.category) < 0) continue;
        for (const Token& token : tweet.tokens) {
            if (token.tag == LanguageTag::En) ++counts[token.normalized];
        }
    }
}

} // namespace

std::map<std::string, uint64_t> foreign_word_frequency(const Corpus& corpus, unsigned threads) {
    std::unordered_map<std::string, uint64_t> counts;
    for_tweet_chunks(corpus, threads, scan_foreign_freq, nullptr, counts);
    return {counts.begin(), counts.end()};
}

std::vector<std::string> select_candidates(
    const std::map<std::string, uint64_t>& freqs, const std::unordered_set<std::string>& stoplist,
    const std::optional<std::unordered_set<std::string>>& noun_lexicon, size_t top_n) {
    if (top_n == 0) throw DataError("select_candidates: top_n must be positive");

    std::vector<std::pair<std::string, uint64_t>> order(freqs.begin(), freqs.end());
    std::sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (order.size() > top_n) order.resize(top_n);

    std::vector<std::string> result;
    for (auto& [word, count] : order) {
        if (stoplist.count(word)) continue;
        if (noun_lexicon && !noun_lexicon->count(word)) continue;
        result.push_back(word);
    }
    return result;
}

namespace {

// Neighbor symbol: 'E', 'H' or '$', skipping NE/Other tokens outward.
char neighbor_symbol(const Tweet& tweet, size_t pos, int step) {
    long i = static_cast<long>(pos) + step;
    const long n = static_cast<long>(tweet.tokens.size());
    while (i >= 0 && i < n) {
        const auto& tag = tweet.tokens[static_cast<size_t>(i)].tag;
        if (tag == LanguageTag::En) return 'E';
        if (tag == LanguageTag::Hi) return 'H';
        i += step;
    }
    return '$';
}

int combo_index(char left, char right) {
    const std::string combo{left, right};
    for (size_t i = 0; i < kNumCombos; ++i) {
        if (combo == kComboNames[i]) return static_cast<int>(i);
    }
    return -1; // "$$"
}

struct FeatureCounts {
    std::array<uint64_t, kFeatureDim> counts{};

    FeatureCounts& operator+=(const FeatureCounts& other) {
        for (size_t i = 0; i < kFeatureDim; ++i) counts[i] += other.counts[i];
        return *this;
    }
};

void scan_context(const Corpus& corpus, size_t begin, size_t end, const void* ctx,
                  std::unordered_map<std::string, FeatureCounts>& out) {
    const auto& words = *static_cast<const std::unordered_set<std::string>*>(ctx);
    for (size_t i = begin; i < end; ++i) {
        const Tweet& tweet = corpus.tweets[i];
        if (!tweet.category) throw DataError("tweet " + tweet.id + " is not categorized");
        const int block = mixed_block_index(*tweet.category);
        if (block < 0) continue;
        for (size_t pos = 0; pos < tweet.tokens.size(); ++pos) {
            const auto& norm = tweet.tokens[pos].normalized;
            if (!words.count(norm)) continue;
            const int combo = combo_index(neighbor_symbol(tweet, pos, -1),
                                          neighbor_symbol(tweet, pos, +1));
            if (combo < 0) continue; // lone content token, no context
            ++out[norm].counts[static_cast<size_t>(block) * kNumCombos +
                               static_cast<size_t>(combo)];
        }
    }
}

} // namespace

std::vector<ContextFeatureVector> context_feature_table(const Corpus& corpus,
                                                        const std::vector<std::string>& words,
                                                        unsigned threads) {
    const std::unordered_set<std::string> word_set(words.begin(), words.end());
    std::unordered_map<std::string, FeatureCounts> counts;
    for_tweet_chunks(corpus, threads, scan_context, &word_set, counts);

    std::vector<ContextFeatureVector> vectors;
    vectors.reserve(words.size());
    for (const auto& word : words) {
        ContextFeatureVector vec;
        vec.word = word;
        auto it = counts.find(word);
        if (it != counts.end()) {
            for (size_t block = 0; block < kMixedCategories.size(); ++block) {
                uint64_t total = 0;
                for (size_t c = 0; c < kNumCombos; ++c) {
                    total += it->second.counts[block * kNumCombos + c];
                }
                if (total == 0) continue;
                for (size_t c = 0; c < kNumCombos; ++c) {
                    vec.values[block * kNumCombos + c] =
                        static_cast<double>(it->second.counts[block * kNumCombos + c]) /
                        static_cast<double>(total);
                }
            }
        }
        vectors.push_back(std::move(vec));
    }
    return vectors;
}

ContextFeatureVector context_features(const Corpus& corpus, const std::string& word) {
    return context_feature_table(corpus, {word}, 1).front();
}

namespace {

double squared_distance(const std::array<double, kFeatureDim>& a,
                        const std::array<double, kFeatureDim>& b) {
    double sum = 0;
    for (size_t i = 0; i < kFeatureDim; ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return sum;
}

} // namespace

ClusterModel kmeans(const std::vector<ContextFeatureVector>& vectors, size_t k, uint64_t seed,
                    size_t max_iter) {
    const size_t n = vectors.size();
    if (k == 0 || k > n) throw DataError("kmeans: need 1 <= K <= number of vectors");

    // Sort points by word so ties and the farthest-point argmax are stable.
    std::vector<size_t> order(n);
    for (size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return vectors[a].word < vectors[b].word; });

    Rng rng(seed);
    std::vector<std::array<double, kFeatureDim>> centroids;
    centroids.reserve(k);
    centroids.push_back(vectors[order[rng.uniform_index(n)]].values);

    std::vector<double> nearest_sq(n, std::numeric_limits<double>::infinity());
    auto refresh_nearest = [&](const std::array<double, kFeatureDim>& c) {
        for (size_t i = 0; i < n; ++i) {
            nearest_sq[i] = std::min(nearest_sq[i], squared_distance(vectors[i].values, c));
        }
    };
    refresh_nearest(centroids.back());
    while (centroids.size() < k) {
        size_t far = order[0];
        for (size_t idx : order) {
            if (nearest_sq[idx] > nearest_sq[far]) far = idx;
        }
        centroids.push_back(vectors[far].values);
        refresh_nearest(centroids.back());
    }

    std::vector<size_t> assignment(n, 0);
    ClusterModel model;
    model.k = k;

    for (size_t iter = 0; iter < max_iter; ++iter) {
        bool changed = iter == 0;
        double inertia = 0;
        for (size_t i = 0; i < n; ++i) {
            size_t best = 0;
            double best_sq = squared_distance(vectors[i].values, centroids[0]);
            for (size_t c = 1; c < k; ++c) {
                const double sq = squared_distance(vectors[i].values, centroids[c]);
                if (sq < best_sq) {
                    best_sq = sq;
                    best = c;
                }
            }
            if (assignment[i] != best) {
                assignment[i] = best;
                changed = true;
            }
            inertia += best_sq;
        }
        model.inertia = inertia;
        model.inertia_per_iteration.push_back(inertia);
        if (!changed) break;

        // Recompute centroids; re-seed empty clusters with the point
        // farthest from its current centroid.
        std::vector<std::array<double, kFeatureDim>> sums(k);
        std::vector<size_t> sizes(k, 0);
        for (size_t i = 0; i < n; ++i) {
            ++sizes[assignment[i]];
            for (size_t d = 0; d < kFeatureDim; ++d) sums[assignment[i]][d] += vectors[i].values[d];
        }
        for (size_t c = 0; c < k; ++c) {
            if (sizes[c] == 0) {
                size_t far = order[0];
                double far_sq = -1;
                for (size_t idx : order) {
                    const double sq =
                        squared_distance(vectors[idx].values, centroids[assignment[idx]]);
                    if (sq > far_sq) {
                        far_sq = sq;
                        far = idx;
                    }
                }
                centroids[c] = vectors[far].values;
                continue;
            }
            for (size_t d = 0; d < kFeatureDim; ++d) {
                centroids[c][d] = sums[c][d] / static_cast<double>(sizes[c]);
            }
        }
    }

    model.centroids = std::move(centroids);
    for (size_t i = 0; i < n; ++i) model.assignment[vectors[i].word] = assignment[i];
    return model;
}

ElbowResult elbow_k(const std::vector<ContextFeatureVector>& vectors, size_t k_min, size_t k_max,
                    uint64_t seed, size_t max_iter) {
    if (k_min < 1 || k_max > vectors.size() || k_min > k_max) {
        throw DataError("elbow_k: K range must lie within [1, number of vectors]");
    }
    if (k_max - k_min < 2) throw DataError("elbow_k: K range must span at least 3 values");

    ElbowResult result;
    std::vector<double> inertias;
    for (size_t k = k_min; k <= k_max; ++k) {
        const ClusterModel model = kmeans(vectors, k, seed, max_iter);
        result.inertia_curve.emplace_back(k, model.inertia);
        inertias.push_back(model.inertia);
    }
    // Discrete curvature; largest second difference marks the knee.
    result.chosen_k = k_min + 1;
    double best = -std::numeric_limits<double>::infinity();
    for (size_t i = 1; i + 1 < inertias.size(); ++i) {
        const double curvature = inertias[i - 1] - 2.0 * inertias[i] + inertias[i + 1];
        if (curvature > best) {
            best = curvature;
            result.chosen_k = k_min + i;
        }
    }
    return result;
}

std::vector<std::string> TargetWordSets::full() const {
    std::vector<std::string> all = bbw;
    std::unordered_set<std::string> seen(bbw.begin(), bbw.end());
    for (const auto& word : ran) {
        if (seen.insert(word).second) all.push_back(word);
    }
    return all;
}

namespace {

std::vector<std::vector<std::string>> cluster_members_sorted(const ClusterModel& model) {
    std::vector<std::vector<std::string>> members(model.k);
    for (const auto& [word, cluster] : model.assignment) {
        members[cluster].push_back(word); // map iteration is already sorted
    }
    return members;
}

} // namespace

std::vector<std::string> sample_bbw(const ClusterModel& model,
                                    const std::map<std::string, double>& baseline_scores) {
    std::vector<std::string> result;
    std::unordered_set<std::string> seen;
    for (const auto& members : cluster_members_sorted(model)) {
        if (members.empty()) continue;
        const std::string* hi = nullptr;
        const std::string* lo = nullptr;
        double hi_score = 0, lo_score = 0;
        for (const auto& word : members) {
            auto it = baseline_scores.find(word);
            if (it == baseline_scores.end()) {
                throw DataError("no baseline score for clustered word: " + word);
            }
            // Strict comparisons keep the lexicographically first word on ties.
            if (!hi || it->second > hi_score) {
                hi = &word;
                hi_score = it->second;
            }
            if (!lo || it->second < lo_score) {
                lo = &word;
                lo_score = it->second;
            }
        }
        for (const std::string* pick : {hi, lo}) {
            if (pick && seen.insert(*pick).second) result.push_back(*pick);
        }
    }
    return result;
}

std::vector<std::string> sample_random(const ClusterModel& model, size_t n,
                                       const std::unordered_set<std::string>& exclude,
                                       uint64_t seed) {
    Rng rng(seed);
    auto pools = cluster_members_sorted(model);
    for (auto& pool : pools) {
        pool.erase(std::remove_if(pool.begin(), pool.end(),
                                  [&](const std::string& w) { return exclude.count(w) > 0; }),
                   pool.end());
        rng.shuffle(pool);
    }

    std::vector<std::string> result;
    std::vector<size_t> cursor(pools.size(), 0);
    while (result.size() < n) {
        bool drew = false;
        for (size_t c = 0; c < pools.size() && result.size() < n; ++c) {
            if (cursor[c] < pools[c].size()) {
                result.push_back(pools[c][cursor[c]++]);
                drew = true;
            }
        }
        if (!drew) throw DataError("sample_random: not enough words outside the exclude set");
    }
    return result;
}

} // namespace lexborrow
