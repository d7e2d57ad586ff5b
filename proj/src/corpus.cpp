#include "lexborrow/corpus.hpp"

#include "lexborrow/io.hpp"
#include "lexborrow/text.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <unordered_set>

namespace lexborrow {

using nlohmann::json;

const char* to_string(LanguageTag tag) {
    switch (tag) {
        case LanguageTag::En: return "En";
        case LanguageTag::Hi: return "Hi";
        case LanguageTag::NE: return "NE";
        case LanguageTag::Other: return "Other";
    }
    return "Other";
}

LanguageTag language_tag_from_string(std::string_view s) {
    if (s == "En") return LanguageTag::En;
    if (s == "Hi") return LanguageTag::Hi;
    if (s == "NE") return LanguageTag::NE;
    if (s == "Other") return LanguageTag::Other;
    throw DataError("unknown language tag '" + std::string(s) + "'");
}

const char* to_string(TweetCategory cat) {
    switch (cat) {
        case TweetCategory::En: return "En";
        case TweetCategory::Hi: return "Hi";
        case TweetCategory::CME: return "CME";
        case TweetCategory::CMH: return "CMH";
        case TweetCategory::CMEQ: return "CMEQ";
        case TweetCategory::CS: return "CS";
        case TweetCategory::Other: return "Other";
    }
    return "Other";
}

TweetCategory tweet_category_from_string(std::string_view s) {
    if (s == "En") return TweetCategory::En;
    if (s == "Hi") return TweetCategory::Hi;
    if (s == "CME") return TweetCategory::CME;
    if (s == "CMH") return TweetCategory::CMH;
    if (s == "CMEQ") return TweetCategory::CMEQ;
    if (s == "CS") return TweetCategory::CS;
    if (s == "Other") return TweetCategory::Other;
    throw DataError("unknown tweet category '" + std::string(s) + "'");
}

CorpusFormat corpus_format_from_string(std::string_view s) {
    if (s == "jsonl") return CorpusFormat::Jsonl;
    if (s == "tsv") return CorpusFormat::Tsv;
    if (s == "tokens_jsonl") return CorpusFormat::TokensJsonl;
    if (s == "pre_tagged_jsonl") return CorpusFormat::PreTaggedJsonl;
    throw DataError("unknown corpus format '" + std::string(s) + "'");
}

namespace {

Token make_token(std::string surface) {
    Token token;
    token.normalized = normalize_token(surface);
    token.surface = std::move(surface);
    return token;
}

Tweet parse_text_record(std::string id, std::string user, const std::string& text) {
    Tweet tweet;
    tweet.id = std::move(id);
    tweet.user_id = std::move(user);
    for (auto& piece : split_whitespace(text)) {
        tweet.tokens.push_back(make_token(std::move(piece)));
    }
    return tweet;
}

Tweet parse_json_record(const json& rec, CorpusFormat format) {
    Tweet tweet;
    tweet.id = rec.at("id").get<std::string>();
    tweet.user_id = rec.at("user").get<std::string>();
    if (format == CorpusFormat::Jsonl) {
        return parse_text_record(tweet.id, tweet.user_id, rec.at("text").get<std::string>());
    }
    const auto& tokens = rec.at("tokens");
    if (!tokens.is_array()) throw DataError("'tokens' is not an array");
    for (const auto& tok : tokens) {
        tweet.tokens.push_back(make_token(tok.get<std::string>()));
    }
    if (format == CorpusFormat::PreTaggedJsonl) {
        const auto& tags = rec.at("tags");
        if (!tags.is_array() || tags.size() != tweet.tokens.size()) {
            throw DataError("token/tag length mismatch");
        }
        for (size_t i = 0; i < tweet.tokens.size(); ++i) {
            tweet.tokens[i].tag = language_tag_from_string(tags[i].get<std::string>());
        }
        if (rec.contains("category")) {
            tweet.category = tweet_category_from_string(rec.at("category").get<std::string>());
        }
    }
    return tweet;
}

} // namespace

Corpus load_corpus(const std::string& path, CorpusFormat format) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot read corpus file: " + path);

    Corpus corpus;
    corpus.provenance.source_path = path;
    FilterReport& report = corpus.provenance.report;
    std::unordered_set<std::string> seen_ids;

    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++report.input;
        Tweet tweet;
        try {
            if (format == CorpusFormat::Tsv) {
                std::istringstream ls(line);
                std::string id, user, text;
                if (!std::getline(ls, id, '\t') || !std::getline(ls, user, '\t')) {
                    throw DataError("expected id<TAB>user<TAB>text");
                }
                std::getline(ls, text);
                tweet = parse_text_record(std::move(id), std::move(user), text);
            } else {
                tweet = parse_json_record(json::parse(line), format);
            }
        } catch (const std::exception& e) {
            std::cerr << path << ":" << line_no << ": skipping malformed record: " << e.what()
                      << "\n";
            ++report.malformed;
            continue;
        }
        if (!seen_ids.insert(tweet.id).second) {
            ++report.duplicate;
            continue;
        }
        corpus.tweets.push_back(std::move(tweet));
    }
    report.retained = corpus.tweets.size();
    return corpus;
}

namespace {

std::string corpus_to_jsonl(const Corpus& corpus, bool with_tags) {
    std::ostringstream out;
    for (const Tweet& tweet : corpus.tweets) {
        json rec;
        rec["id"] = tweet.id;
        rec["user"] = tweet.user_id;
        json tokens = json::array();
        for (const Token& token : tweet.tokens) tokens.push_back(token.surface);
        rec["tokens"] = std::move(tokens);
        if (with_tags) {
            json tags = json::array();
            for (const Token& token : tweet.tokens) {
                if (!token.tag) throw DataError("tweet " + tweet.id + " has untagged tokens");
                tags.push_back(to_string(*token.tag));
            }
            rec["tags"] = std::move(tags);
            if (tweet.category) rec["category"] = to_string(*tweet.category);
        }
        out << rec.dump() << '\n';
    }
    return out.str();
}

} // namespace

void save_corpus_pre_tagged(const Corpus& corpus, const std::string& path) {
    write_file_atomic(path, corpus_to_jsonl(corpus, true));
}

void save_corpus_tokens(const Corpus& corpus, const std::string& path) {
    write_file_atomic(path, corpus_to_jsonl(corpus, false));
}

std::pair<Corpus, FilterReport> filter_corpus(const Corpus& corpus, const FilterPolicy& policy) {
    FilterReport report;
    report.input = corpus.tweets.size();

    Corpus result;
    result.provenance = corpus.provenance;
    for (const Tweet& tweet : corpus.tweets) {
        if (tweet.tokens.empty()) {
            ++report.empty;
            continue;
        }
        bool all_urls = true;
        std::string joined;
        for (const Token& token : tweet.tokens) {
            if (is_url_token(token.surface)) continue;
            all_urls = false;
            joined += token.surface;
            joined += ' ';
        }
        if (all_urls) {
            ++report.url_only;
            continue;
        }
        if (latin_fraction(joined) < policy.min_latin_fraction) {
            ++report.non_roman;
            continue;
        }
        result.tweets.push_back(tweet);
    }
    report.retained = result.tweets.size();
    result.provenance.report = report;
    return {std::move(result), report};
}

} // namespace lexborrow
