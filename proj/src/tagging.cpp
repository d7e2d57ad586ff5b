#include "lexborrow/tagging.hpp"

#include "lexborrow/io.hpp"
#include "lexborrow/text.hpp"

#include <algorithm>
#include <sstream>

namespace lexborrow {

const char* to_string(PhraseLang lang) {
    switch (lang) {
        case PhraseLang::En: return "En";
        case PhraseLang::Hi: return "Hi";
        case PhraseLang::Oth: return "Oth";
    }
    return "Oth";
}

PhraseLang phrase_lang_from_string(std::string_view s) {
    if (s == "En") return PhraseLang::En;
    if (s == "Hi") return PhraseLang::Hi;
    if (s == "Oth") return PhraseLang::Oth;
    throw DataError("unknown phrase lang '" + std::string(s) + "'");
}

LexiconSet::LexiconSet(std::unordered_set<std::string> en_words,
                       std::unordered_set<std::string> hi_words,
                       std::unordered_set<std::string> ne_words, std::vector<Class> priority)
    : en_(std::move(en_words)), hi_(std::move(hi_words)), ne_(std::move(ne_words)) {
    if (priority.size() != 3) throw DataError("lexicon priority must list ne, hi and en once");
    // Keep each word only in its highest-priority class.
    auto set_for = [this](Class c) -> std::unordered_set<std::string>& {
        switch (c) {
            case Class::NE: return ne_;
            case Class::Hi: return hi_;
            default: return en_;
        }
    };
    for (size_t i = 0; i < priority.size(); ++i) {
        const auto& winner = set_for(priority[i]);
        for (size_t j = i + 1; j < priority.size(); ++j) {
            auto& loser = set_for(priority[j]);
            for (const auto& word : winner) loser.erase(word);
        }
    }
}

LanguageTag LexiconSet::lookup(const std::string& normalized) const {
    if (ne_.count(normalized)) return LanguageTag::NE;
    if (hi_.count(normalized)) return LanguageTag::Hi;
    if (en_.count(normalized)) return LanguageTag::En;
    return LanguageTag::Other;
}

std::unordered_set<std::string> load_word_list(const std::string& path) {
    std::unordered_set<std::string> words;
    for (const auto& line : read_lines(path)) {
        if (line.empty()) continue;
        std::string word = line;
        size_t tab = word.find('\t');
        if (tab != std::string::npos) word.resize(tab);
        word = normalize_token(word);
        if (!word.empty()) words.insert(std::move(word));
    }
    return words;
}

std::vector<LexiconSet::Class> lexicon_priority_from_string(std::string_view csv) {
    std::vector<LexiconSet::Class> priority;
    std::stringstream ss{std::string(csv)};
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "ne") priority.push_back(LexiconSet::Class::NE);
        else if (item == "hi") priority.push_back(LexiconSet::Class::Hi);
        else if (item == "en") priority.push_back(LexiconSet::Class::En);
        else throw DataError("unknown lexicon class '" + item + "' in priority list");
    }
    if (priority.size() != 3) throw DataError("lexicon priority must list ne, hi and en once");
    return priority;
}

void tag_tokens(Tweet& tweet, const LexiconSet& lexicons) {
    if (lexicons.empty()) throw DataError("tagging with empty lexicons");
    for (Token& token : tweet.tokens) {
        if (is_hashtag_token(token.normalized) || is_mention_token(token.normalized) ||
            is_url_token(token.normalized) || token.normalized.empty()) {
            token.tag = LanguageTag::Other;
            continue;
        }
        token.tag = lexicons.lookup(token.normalized);
    }
}

namespace {

std::vector<LanguageTag> content_tags(const Tweet& tweet) {
    std::vector<LanguageTag> tags;
    for (const Token& token : tweet.tokens) {
        if (!token.tag) throw DataError("tweet " + tweet.id + " has untagged tokens");
        if (*token.tag == LanguageTag::En || *token.tag == LanguageTag::Hi) {
            tags.push_back(*token.tag);
        }
    }
    return tags;
}

} // namespace

TweetCategory categorize_tweet(const Tweet& tweet, const CategoryPolicy& policy) {
    const auto tags = content_tags(tweet);
    if (tags.empty()) return TweetCategory::Other;

    const size_t n = tags.size();
    const size_t n_en = static_cast<size_t>(std::count(tags.begin(), tags.end(), LanguageTag::En));
    const size_t n_hi = n - n_en;

    const double threshold = policy.monolingual_threshold * static_cast<double>(n);
    if (static_cast<double>(n_en) > threshold) return TweetCategory::En;
    if (static_cast<double>(n_hi) > threshold) return TweetCategory::Hi;

    // Code-switched: one trail of each language, both long enough.
    std::vector<size_t> run_lengths;
    for (size_t i = 0; i < n;) {
        size_t j = i;
        while (j < n && tags[j] == tags[i]) ++j;
        run_lengths.push_back(j - i);
        i = j;
    }
    if (run_lengths.size() == 2 && run_lengths[0] >= policy.cs_min_run &&
        run_lengths[1] >= policy.cs_min_run) {
        return TweetCategory::CS;
    }

    if (n_hi > n_en) return TweetCategory::CMH;
    if (n_en > n_hi) return TweetCategory::CME;
    return TweetCategory::CMEQ;
}

void categorize_corpus(Corpus& corpus, const CategoryPolicy& policy) {
    for (Tweet& tweet : corpus.tweets) tweet.category = categorize_tweet(tweet, policy);
}

std::vector<Phrase> segment_phrases(const Tweet& tweet) {
    std::vector<Phrase> phrases;
    auto lang_of = [&tweet](size_t i) {
        const auto& tag = tweet.tokens[i].tag;
        if (!tag) throw DataError("tweet " + tweet.id + " has untagged tokens");
        switch (*tag) {
            case LanguageTag::En: return PhraseLang::En;
            case LanguageTag::Hi: return PhraseLang::Hi;
            default: return PhraseLang::Oth;
        }
    };
    const size_t n = tweet.tokens.size();
    for (size_t i = 0; i < n;) {
        const PhraseLang lang = lang_of(i);
        size_t j = i + 1;
        while (j < n && lang_of(j) == lang) ++j;
        phrases.push_back(Phrase{lang, i, j});
        i = j;
    }
    return phrases;
}

std::map<std::string, uint64_t> category_histogram(const Corpus& corpus) {
    std::map<std::string, uint64_t> hist;
    for (const char* name : {"En", "Hi", "CME", "CMH", "CMEQ", "CS", "Other"}) hist[name] = 0;
    for (const Tweet& tweet : corpus.tweets) {
        if (!tweet.category) throw DataError("tweet " + tweet.id + " is not categorized");
        ++hist[to_string(*tweet.category)];
    }
    return hist;
}

} // namespace lexborrow
