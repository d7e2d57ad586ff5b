#ifndef LEXBORROW_CORPUS_HPP
#define LEXBORROW_CORPUS_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lexborrow {

/// Error class for malformed or missing input data. The CLI maps it to
/// exit code 2.
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class LanguageTag { En, Hi, NE, Other };

const char* to_string(LanguageTag tag);
LanguageTag language_tag_from_string(std::string_view s);

/// Six content categories plus an Other sentinel for tweets without any
/// En/Hi content token. Other tweets are excluded from all metrics.
enum class TweetCategory { En, Hi, CME, CMH, CMEQ, CS, Other };

const char* to_string(TweetCategory cat);
TweetCategory tweet_category_from_string(std::string_view s);

struct Token {
    std::string surface;
    std::string normalized;
    std::optional<LanguageTag> tag;

    bool operator==(const Token&) const = default;
};

struct Tweet {
    std::string id;
    std::string user_id;
    std::vector<Token> tokens;
    std::optional<TweetCategory> category;

    bool operator==(const Tweet&) const = default;
};

/// Per-reason drop counters for loading and filtering. Conservation holds
/// per step: input = retained + sum of the reasons that step can produce.
struct FilterReport {
    uint64_t input = 0;
    uint64_t retained = 0;
    uint64_t non_roman = 0;
    uint64_t url_only = 0;
    uint64_t empty = 0;
    uint64_t duplicate = 0;
    uint64_t malformed = 0;

    uint64_t dropped() const { return non_roman + url_only + empty + duplicate + malformed; }
};

struct Provenance {
    std::string source_path;
    FilterReport report;
};

struct Corpus {
    std::vector<Tweet> tweets;
    Provenance provenance;
};

enum class CorpusFormat {
    Jsonl,        // {"id","user","text"}
    Tsv,          // id <TAB> user <TAB> text
    TokensJsonl,  // {"id","user","tokens"} — persisted tokenized stage output
    PreTaggedJsonl, // adds "tags" (and "category" when present)
};

CorpusFormat corpus_format_from_string(std::string_view s);

struct FilterPolicy {
    double min_latin_fraction = 0.95;
};

/// Loads one tweet per record. Tokens are whitespace-split and normalized
/// for the text formats; pre-tagged records carry their own token list.
/// Duplicate ids and malformed records are dropped and counted in the
/// corpus provenance report.
Corpus load_corpus(const std::string& path, CorpusFormat format);

/// Writes tokens + tags (+ category when present) one JSON object per line.
void save_corpus_pre_tagged(const Corpus& corpus, const std::string& path);

/// Writes tokens without tags, for the post-ingest stage artifact.
void save_corpus_tokens(const Corpus& corpus, const std::string& path);

/// Drops empty, URL-only and non-romanized tweets. Token order and tweet
/// order are preserved in the retained set.
std::pair<Corpus, FilterReport> filter_corpus(const Corpus& corpus, const FilterPolicy& policy);

} // namespace lexborrow

#endif
