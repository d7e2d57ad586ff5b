#ifndef LEXBORROW_TAGGING_HPP
#define LEXBORROW_TAGGING_HPP

#include "lexborrow/corpus.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <unordered_set>
#include <vector>

namespace lexborrow {

enum class PhraseLang { En, Hi, Oth };

const char* to_string(PhraseLang lang);
PhraseLang phrase_lang_from_string(std::string_view s);

/// Maximal run of same-language tokens; [begin, end) token indices.
struct Phrase {
    PhraseLang lang;
    size_t begin;
    size_t end;

    bool operator==(const Phrase&) const = default;
};

/// Word lists backing the deterministic tagger. A word appearing in several
/// lists is kept only in the highest-priority one, so lookups are
/// unambiguous.
class LexiconSet {
public:
    enum class Class { NE, Hi, En };

    LexiconSet() = default;
    LexiconSet(std::unordered_set<std::string> en_words, std::unordered_set<std::string> hi_words,
               std::unordered_set<std::string> ne_words,
               std::vector<Class> priority = {Class::NE, Class::Hi, Class::En});

    bool empty() const { return en_.empty() && hi_.empty() && ne_.empty(); }
    const std::unordered_set<std::string>& en_words() const { return en_; }
    const std::unordered_set<std::string>& hi_words() const { return hi_; }
    const std::unordered_set<std::string>& ne_words() const { return ne_; }

    /// Lexicon tag for a normalized word, or Other when out of vocabulary.
    LanguageTag lookup(const std::string& normalized) const;

private:
    std::unordered_set<std::string> en_;
    std::unordered_set<std::string> hi_;
    std::unordered_set<std::string> ne_;
};

/// Reads one word per line (optional tab-separated frequency column is
/// ignored); words are normalized on load.
std::unordered_set<std::string> load_word_list(const std::string& path);

std::vector<LexiconSet::Class> lexicon_priority_from_string(std::string_view csv);

/// Tags every token: hashtags/mentions/URLs and empty normalizations are
/// Other, then lexicon lookup, then Other for out-of-vocabulary words.
void tag_tokens(Tweet& tweet, const LexiconSet& lexicons);

struct CategoryPolicy {
    double monolingual_threshold = 0.90; // En/Hi if strictly above
    size_t cs_min_run = 2;               // both trails at least this long
};

/// Applies the category precedence over content (En/Hi) tokens:
/// monolingual > code-switched > majority. Zero-content tweets get the
/// Other sentinel.
TweetCategory categorize_tweet(const Tweet& tweet, const CategoryPolicy& policy = {});

/// Categorizes every tweet in place.
void categorize_corpus(Corpus& corpus, const CategoryPolicy& policy = {});

/// Maximal same-language runs covering all tokens; NE and Other map to Oth.
std::vector<Phrase> segment_phrases(const Tweet& tweet);

/// Category counts in a fixed emit order (the six categories, then Other).
std::map<std::string, uint64_t> category_histogram(const Corpus& corpus);

} // namespace lexborrow

#endif
