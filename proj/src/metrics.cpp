#include "lexborrow/metrics.hpp"

#include "lexborrow/io.hpp"
#include "lexborrow/tagging.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace lexborrow {

const char* to_string(MetricId id) {
    switch (id) {
        case MetricId::UUR: return "uur";
        case MetricId::UTR: return "utr";
        case MetricId::UPR: return "upr";
        case MetricId::Baseline: return "baseline";
        case MetricId::LPF: return "lpf";
        case MetricId::Planted: return "planted";
    }
    return "uur";
}

MetricId metric_id_from_string(std::string_view s) {
    if (s == "uur") return MetricId::UUR;
    if (s == "utr") return MetricId::UTR;
    if (s == "upr") return MetricId::UPR;
    if (s == "baseline") return MetricId::Baseline;
    if (s == "lpf") return MetricId::LPF;
    if (s == "planted") return MetricId::Planted;
    throw DataError("unknown metric '" + std::string(s) + "'");
}

namespace {

struct UsagePartial {
    uint64_t t_hi = 0, t_cmh = 0, t_en = 0;
    uint64_t p_hi = 0, p_en = 0;
    std::unordered_set<std::string> users_hi, users_cmh, users_en;
};

using PartialMap = std::unordered_map<std::string, UsagePartial>;

void scan_tweets(const Corpus& corpus, size_t begin, size_t end,
                 const std::unordered_set<std::string>& words, PartialMap& out) {
    std::unordered_set<std::string> in_tweet;
    std::unordered_set<std::string> in_phrase;
    for (size_t i = begin; i < end; ++i) {
        const Tweet& tweet = corpus.tweets[i];
        if (!tweet.category) throw DataError("tweet " + tweet.id + " is not categorized");

        const TweetCategory cat = *tweet.category;
        if (cat == TweetCategory::Hi || cat == TweetCategory::CMH || cat == TweetCategory::En) {
            in_tweet.clear();
            for (const Token& token : tweet.tokens) {
                if (words.count(token.normalized)) in_tweet.insert(token.normalized);
            }
            for (const auto& word : in_tweet) {
                UsagePartial& p = out[word];
                switch (cat) {
                    case TweetCategory::Hi:
                        ++p.t_hi;
                        p.users_hi.insert(tweet.user_id);
                        break;
                    case TweetCategory::CMH:
                        ++p.t_cmh;
                        p.users_cmh.insert(tweet.user_id);
                        break;
                    default:
                        ++p.t_en;
                        p.users_en.insert(tweet.user_id);
                        break;
                }
            }
        }

        for (const Phrase& phrase : segment_phrases(tweet)) {
            if (phrase.lang == PhraseLang::Oth) continue;
            in_phrase.clear();
            for (size_t k = phrase.begin; k < phrase.end; ++k) {
                const auto& norm = tweet.tokens[k].normalized;
                if (words.count(norm)) in_phrase.insert(norm);
            }
            for (const auto& word : in_phrase) {
                UsagePartial& p = out[word];
                if (phrase.lang == PhraseLang::Hi) ++p.p_hi;
                else ++p.p_en;
            }
        }
    }
}

void merge_partial(PartialMap& into, PartialMap& from) {
    for (auto& [word, p] : from) {
        UsagePartial& dst = into[word];
        dst.t_hi += p.t_hi;
        dst.t_cmh += p.t_cmh;
        dst.t_en += p.t_en;
        dst.p_hi += p.p_hi;
        dst.p_en += p.p_en;
        dst.users_hi.merge(p.users_hi);
        dst.users_cmh.merge(p.users_cmh);
        dst.users_en.merge(p.users_en);
    }
}

} // namespace

UsageStatsMap accumulate_usage(const Corpus& corpus, const std::unordered_set<std::string>& words,
                               unsigned threads) {
    const size_t n = corpus.tweets.size();
    if (threads == 0) threads = 1;
    const size_t chunks = std::min<size_t>(threads, std::max<size_t>(n, 1));

    std::vector<PartialMap> partials(chunks);
    if (chunks == 1) {
        scan_tweets(corpus, 0, n, words, partials[0]);
    } else {
        std::vector<std::thread> workers;
        workers.reserve(chunks);
        for (size_t c = 0; c < chunks; ++c) {
            const size_t begin = n * c / chunks;
            const size_t end = n * (c + 1) / chunks;
            workers.emplace_back([&, begin, end, c] {
                scan_tweets(corpus, begin, end, words, partials[c]);
            });
        }
        for (auto& worker : workers) worker.join();
    }

    PartialMap merged = std::move(partials[0]);
    for (size_t c = 1; c < chunks; ++c) merge_partial(merged, partials[c]);

    UsageStatsMap result;
    for (const auto& word : words) {
        WordUsageStats stats;
        stats.word = word;
        auto it = merged.find(word);
        if (it != merged.end()) {
            const UsagePartial& p = it->second;
            stats.t_hi = p.t_hi;
            stats.t_cmh = p.t_cmh;
            stats.t_en = p.t_en;
            stats.p_hi = p.p_hi;
            stats.p_en = p.p_en;
            stats.u_hi = p.users_hi.size();
            stats.u_cmh = p.users_cmh.size();
            stats.u_en = p.users_en.size();
        }
        result.emplace(word, std::move(stats));
    }
    return result;
}

namespace {

std::optional<Score> ratio_score(const std::string& word, MetricId metric, uint64_t numerator,
                                 uint64_t denominator) {
    if (denominator == 0 && numerator == 0) return std::nullopt;
    Score score;
    score.word = word;
    score.metric = metric;
    score.value = denominator == 0 ? std::numeric_limits<double>::infinity()
                                   : static_cast<double>(numerator) / static_cast<double>(denominator);
    return score;
}

} // namespace

std::optional<Score> uur(const WordUsageStats& stats) {
    return ratio_score(stats.word, MetricId::UUR, stats.u_hi + stats.u_cmh, stats.u_en);
}

std::optional<Score> utr(const WordUsageStats& stats) {
    return ratio_score(stats.word, MetricId::UTR, stats.t_hi + stats.t_cmh, stats.t_en);
}

std::optional<Score> upr(const WordUsageStats& stats) {
    return ratio_score(stats.word, MetricId::UPR, stats.p_hi, stats.p_en);
}

ScoredWords score_usage(const UsageStatsMap& stats, MetricId metric) {
    ScoredWords out;
    for (const auto& [word, ws] : stats) {
        std::optional<Score> score;
        switch (metric) {
            case MetricId::UUR: score = uur(ws); break;
            case MetricId::UTR: score = utr(ws); break;
            case MetricId::UPR: score = upr(ws); break;
            default: throw DataError("score_usage expects uur, utr or upr");
        }
        if (score) out.scores.push_back(std::move(*score));
        else out.excluded.push_back(word);
    }
    return out;
}

BaselineTable load_baseline_table(const std::string& path) {
    BaselineTable table;
    const TsvTable tsv = read_tsv(path, false);
    for (size_t i = 0; i < tsv.rows.size(); ++i) {
        const auto& row = tsv.rows[i];
        if (i == 0 && !row.empty() && row[0] == "word") continue;
        if (row.size() != 3) {
            throw DataError(path + ": expected word<TAB>F_E<TAB>F_H, got " +
                            std::to_string(row.size()) + " fields");
        }
        table[row[0]] = {static_cast<uint64_t>(std::stoull(row[1])),
                         static_cast<uint64_t>(std::stoull(row[2]))};
    }
    return table;
}

Score baseline_score(const std::string& word, uint64_t f_e, uint64_t f_h, uint64_t smoothing_k) {
    Score score;
    score.word = word;
    score.metric = MetricId::Baseline;
    score.value = std::log(static_cast<double>(f_e + smoothing_k) /
                           static_cast<double>(f_h + smoothing_k));
    return score;
}

ScoredWords score_baseline(const std::vector<std::string>& words, const BaselineTable& table,
                           uint64_t smoothing_k) {
    ScoredWords out;
    for (const auto& word : words) {
        auto it = table.find(word);
        if (it == table.end()) {
            out.excluded.push_back(word);
            continue;
        }
        out.scores.push_back(baseline_score(word, it->second.first, it->second.second, smoothing_k));
    }
    return out;
}

RankList rank(std::vector<Score> scores) {
    RankList list;
    if (!scores.empty()) list.metric = scores.front().metric;

    std::unordered_set<std::string> seen;
    for (const Score& score : scores) {
        if (std::isnan(score.value)) throw DataError("NaN score for word " + score.word);
        if (!seen.insert(score.word).second) {
            throw DataError("duplicate word in rank input: " + score.word);
        }
    }
    std::sort(scores.begin(), scores.end(), [](const Score& a, const Score& b) {
        if (a.value != b.value) return a.value > b.value;
        return a.word < b.word;
    });
    // Average rank within each group of equal scores.
    list.entries.reserve(scores.size());
    size_t i = 0;
    while (i < scores.size()) {
        size_t j = i;
        while (j < scores.size() && scores[j].value == scores[i].value) ++j;
        const double avg_rank = static_cast<double>(i + 1 + j) / 2.0;
        for (size_t k = i; k < j; ++k) {
            list.entries.push_back(RankEntry{scores[k].word, scores[k].value, avg_rank});
        }
        i = j;
    }
    return list;
}

} // namespace lexborrow
