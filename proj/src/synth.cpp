#include "lexborrow/synth.hpp"

#include "lexborrow/io.hpp"
#include "lexborrow/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>

namespace lexborrow {

namespace {

std::string numbered(const char* prefix, uint64_t i, int width) {
    std::string digits = std::to_string(i);
    std::string out = prefix;
    for (int pad = width - static_cast<int>(digits.size()); pad > 0; --pad) out += '0';
    return out + digits;
}

/// Lexicon words that are never targets; targets get their own insertion
/// channel, so drawing them as filler would blur the planted signal.
std::vector<std::string> filler_words(const char* prefix, uint64_t size,
                                      const std::set<std::string>& reserved) {
    std::vector<std::string> words;
    words.reserve(size);
    for (uint64_t i = 0; words.size() < size; ++i) {
        std::string w = numbered(prefix, i, 3);
        if (!reserved.count(w)) words.push_back(std::move(w));
    }
    return words;
}

std::set<std::string> target_names(const SynthSpec& spec) {
    std::set<std::string> names;
    for (const auto& [word, p] : spec.targets) names.insert(word);
    return names;
}

} // namespace

void SynthSpec::validate() const {
    auto check_prob = [](double p, const char* what) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw DataError(std::string(what) + " must lie in [0, 1]");
        }
    };
    check_prob(mix_rate_min, "mix_rate.min");
    check_prob(mix_rate_max, "mix_rate.max");
    check_prob(insert_rate, "insert_rate");
    if (mix_rate_min > mix_rate_max) throw DataError("mix_rate.min exceeds mix_rate.max");
    if (n_users == 0) throw DataError("n_users must be positive");
    if (tweet_len_min < 5) throw DataError("tweet_len.min must be at least 5");
    if (tweet_len_min > tweet_len_max) throw DataError("tweet_len.min exceeds tweet_len.max");
    if (hi_lexicon_size == 0) throw DataError("hi_lexicon_size must be positive");
    if (en_lexicon_size < targets.size() + 1) {
        throw DataError("en_lexicon_size must exceed the number of target words");
    }
    std::set<std::string> seen;
    for (const auto& [word, p] : targets) {
        if (word.empty()) throw DataError("target words must be non-empty");
        check_prob(p, "target propensity");
        if (!seen.insert(word).second) throw DataError("duplicate target word " + word);
    }
}

std::vector<std::pair<std::string, double>> SynthSpec::spread_targets(size_t n) {
    std::vector<std::pair<std::string, double>> targets;
    targets.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        const double p = n == 1 ? 0.5 : static_cast<double>(i) / static_cast<double>(n - 1);
        targets.emplace_back(numbered("tw", i, 3), p);
    }
    return targets;
}

SynthSpec load_synth_spec(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    SynthSpec spec;
    try {
        if (doc.contains("n_users")) spec.n_users = doc["n_users"].get<uint64_t>();
        if (doc.contains("n_tweets")) spec.n_tweets = doc["n_tweets"].get<uint64_t>();
        if (doc.contains("hi_lexicon_size")) spec.hi_lexicon_size = doc["hi_lexicon_size"].get<uint64_t>();
        if (doc.contains("en_lexicon_size")) spec.en_lexicon_size = doc["en_lexicon_size"].get<uint64_t>();
        if (doc.contains("mix_rate")) {
            spec.mix_rate_min = doc["mix_rate"].at("min").get<double>();
            spec.mix_rate_max = doc["mix_rate"].at("max").get<double>();
        }
        if (doc.contains("tweet_len")) {
            spec.tweet_len_min = doc["tweet_len"].at("min").get<uint64_t>();
            spec.tweet_len_max = doc["tweet_len"].at("max").get<uint64_t>();
        }
        if (doc.contains("insert_rate")) spec.insert_rate = doc["insert_rate"].get<double>();
        if (doc.contains("seed")) spec.seed = doc["seed"].get<uint64_t>();
        if (doc.contains("targets") && doc.contains("n_targets")) {
            throw DataError(path + ": give either targets or n_targets, not both");
        }
        if (doc.contains("targets")) {
            for (const auto& [word, p] : doc["targets"].items()) {
                spec.targets.emplace_back(word, p.get<double>());
            }
        } else if (doc.contains("n_targets")) {
            spec.targets = SynthSpec::spread_targets(doc["n_targets"].get<size_t>());
        }
    } catch (const nlohmann::json::exception& e) {
        throw DataError(path + ": " + e.what());
    }
    spec.validate();
    return spec;
}

SynthResult generate_corpus(const SynthSpec& spec) {
    spec.validate();
    const std::set<std::string> reserved = target_names(spec);
    const std::vector<std::string> hi_words =
        filler_words("hw", spec.hi_lexicon_size, reserved);
    const std::vector<std::string> en_filler =
        filler_words("ew", spec.en_lexicon_size - spec.targets.size(), reserved);

    Rng rng(spec.seed);
    std::vector<double> mix_rate(spec.n_users);
    for (auto& m : mix_rate) m = rng.uniform_real(spec.mix_rate_min, spec.mix_rate_max);

    SynthResult result;
    result.corpus.provenance.source_path = "synth";
    result.corpus.provenance.report.input = spec.n_tweets;
    result.corpus.provenance.report.retained = spec.n_tweets;
    result.corpus.tweets.reserve(spec.n_tweets);

    auto make_token = [](const std::string& word, LanguageTag tag) {
        Token token;
        token.surface = word;
        token.normalized = word;
        token.tag = tag;
        return token;
    };

    for (uint64_t t = 0; t < spec.n_tweets; ++t) {
        const uint64_t user = t % spec.n_users;
        Tweet tweet;
        tweet.id = numbered("t", t, 8);
        tweet.user_id = numbered("u", user, 4);

        const bool mixed = rng.bernoulli(mix_rate[user]);
        const bool hi_mono = mixed ? false : rng.bernoulli(0.5);
        const uint64_t len =
            spec.tweet_len_min + rng.uniform_index(spec.tweet_len_max - spec.tweet_len_min + 1);
        tweet.tokens.reserve(len);

        size_t en_pos1 = 0, en_pos2 = 0;
        if (mixed) {
            // Hindi matrix with two isolated English tokens. Keeping them
            // non-adjacent rules the CS category out, and with len >= 5 the
            // Hindi share stays below the monolingual threshold, so the
            // categorizer always lands on CMH.
            for (uint64_t k = 0; k < len; ++k) {
                tweet.tokens.push_back(
                    make_token(hi_words[rng.uniform_index(hi_words.size())], LanguageTag::Hi));
            }
            en_pos1 = rng.uniform_index(len);
            do {
                en_pos2 = rng.uniform_index(len);
            } while (en_pos2 + 1 >= en_pos1 && en_pos1 + 1 >= en_pos2);
            tweet.tokens[en_pos1] =
                make_token(en_filler[rng.uniform_index(en_filler.size())], LanguageTag::En);
            tweet.tokens[en_pos2] =
                make_token(en_filler[rng.uniform_index(en_filler.size())], LanguageTag::En);
        } else if (hi_mono) {
            for (uint64_t k = 0; k < len; ++k) {
                tweet.tokens.push_back(
                    make_token(hi_words[rng.uniform_index(hi_words.size())], LanguageTag::Hi));
            }
        } else {
            for (uint64_t k = 0; k < len; ++k) {
                tweet.tokens.push_back(
                    make_token(en_filler[rng.uniform_index(en_filler.size())], LanguageTag::En));
            }
        }

        if (!spec.targets.empty()) {
            const auto& [word, p] = spec.targets[rng.uniform_index(spec.targets.size())];
            // Borrowed-leaning words surface in Hindi contexts, English-leaning
            // ones in English contexts; every metric is then monotone in p.
            const double accept = spec.insert_rate * (mixed || hi_mono ? p : 1.0 - p);
            if (rng.bernoulli(accept)) {
                if (mixed) {
                    const size_t pos = rng.bernoulli(0.5) ? en_pos1 : en_pos2;
                    tweet.tokens[pos] = make_token(word, LanguageTag::En);
                } else {
                    const size_t pos = rng.uniform_index(len);
                    tweet.tokens[pos] =
                        make_token(word, hi_mono ? LanguageTag::Hi : LanguageTag::En);
                }
            }
        }
        result.corpus.tweets.push_back(std::move(tweet));
    }

    std::vector<Score> scores;
    scores.reserve(spec.targets.size());
    for (const auto& [word, p] : spec.targets) {
        result.truth.propensity[word] = p;
        scores.push_back(Score{word, MetricId::Planted, p});
    }
    result.truth.ranking = rank(std::move(scores));
    return result;
}

BaselineTable synth_baseline_table(const SynthSpec& spec) {
    spec.validate();
    BaselineTable table;
    // High-propensity targets read as established loans: the transliterated
    // form is frequent (F_E large) and the native translation rare.
    for (const auto& [word, p] : spec.targets) {
        table[word] = {100 + static_cast<uint64_t>(std::llround(p * 900.0)),
                       100 + static_cast<uint64_t>(std::llround((1.0 - p) * 900.0))};
    }
    const auto filler = filler_words("ew", spec.en_lexicon_size - spec.targets.size(),
                                     target_names(spec));
    for (size_t i = 0; i < filler.size(); ++i) {
        table[filler[i]] = {500 + (i * 37) % 500, 1 + (i * 11) % 20};
    }
    return table;
}

std::vector<std::string> synth_en_lexicon(const SynthSpec& spec) {
    spec.validate();
    std::vector<std::string> words;
    words.reserve(spec.en_lexicon_size);
    for (const auto& [word, p] : spec.targets) words.push_back(word);
    for (auto& word : filler_words("ew", spec.en_lexicon_size - spec.targets.size(),
                                   target_names(spec))) {
        words.push_back(std::move(word));
    }
    return words;
}

std::vector<std::string> synth_hi_lexicon(const SynthSpec& spec) {
    spec.validate();
    return filler_words("hw", spec.hi_lexicon_size, target_names(spec));
}

UsageStatsMap oracle_stats(const Corpus& corpus, const std::unordered_set<std::string>& words) {
    struct Sets {
        std::set<std::string> u_hi, u_cmh, u_en;
        std::set<std::string> t_hi, t_cmh, t_en;
        std::set<std::string> ph_hi, ph_en;
    };
    std::map<std::string, Sets> sets;
    for (const auto& word : words) sets[word];

    for (const Tweet& tweet : corpus.tweets) {
        if (!tweet.category) throw DataError("tweet " + tweet.id + " is not categorized");
        const TweetCategory cat = *tweet.category;

        for (const Token& token : tweet.tokens) {
            auto it = sets.find(token.normalized);
            if (it == sets.end()) continue;
            Sets& s = it->second;
            if (cat == TweetCategory::Hi) {
                s.t_hi.insert(tweet.id);
                s.u_hi.insert(tweet.user_id);
            } else if (cat == TweetCategory::CMH) {
                s.t_cmh.insert(tweet.id);
                s.u_cmh.insert(tweet.user_id);
            } else if (cat == TweetCategory::En) {
                s.t_en.insert(tweet.id);
                s.u_en.insert(tweet.user_id);
            }
        }

        // Re-derive maximal same-tag runs from scratch rather than calling
        // the tagging module, so a phrase bug cannot hide in both counts.
        const size_t n = tweet.tokens.size();
        auto lang_index = [&](size_t i) -> int {
            const auto& tag = tweet.tokens[i].tag;
            if (!tag) throw DataError("tweet " + tweet.id + " has untagged tokens");
            if (*tag == LanguageTag::En) return 0;
            if (*tag == LanguageTag::Hi) return 1;
            return 2;
        };
        for (size_t i = 0; i < n;) {
            const int lang = lang_index(i);
            size_t j = i + 1;
            while (j < n && lang_index(j) == lang) ++j;
            if (lang != 2) {
                const std::string phrase_key = tweet.id + "#" + std::to_string(i);
                for (size_t k = i; k < j; ++k) {
                    auto it = sets.find(tweet.tokens[k].normalized);
                    if (it == sets.end()) continue;
                    if (lang == 1) it->second.ph_hi.insert(phrase_key);
                    else it->second.ph_en.insert(phrase_key);
                }
            }
            i = j;
        }
    }

    UsageStatsMap result;
    for (auto& [word, s] : sets) {
        WordUsageStats stats;
        stats.word = word;
        stats.u_hi = s.u_hi.size();
        stats.u_cmh = s.u_cmh.size();
        stats.u_en = s.u_en.size();
        stats.t_hi = s.t_hi.size();
        stats.t_cmh = s.t_cmh.size();
        stats.t_en = s.t_en.size();
        stats.p_hi = s.ph_hi.size();
        stats.p_en = s.ph_en.size();
        result.emplace(word, std::move(stats));
    }
    return result;
}

} // namespace lexborrow
