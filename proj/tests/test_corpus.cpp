#include "lexborrow/corpus.hpp"

#include "lexborrow/io.hpp"
#include "lexborrow/rng.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <string>

using namespace lexborrow;

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name, const std::string& content)
        : path((std::filesystem::temp_directory_path() / name).string()) {
        write_file_atomic(path, content);
    }
    ~TempFile() { std::remove(path.c_str()); }
};

Tweet make_tweet(std::string id, std::string user, std::vector<std::string> words,
                 std::vector<LanguageTag> tags = {}) {
    Tweet tweet;
    tweet.id = std::move(id);
    tweet.user_id = std::move(user);
    for (size_t i = 0; i < words.size(); ++i) {
        Token token;
        token.surface = words[i];
        token.normalized = words[i];
        if (i < tags.size()) token.tag = tags[i];
        tweet.tokens.push_back(std::move(token));
    }
    return tweet;
}

} // namespace

TEST_CASE("load_corpus keeps well-formed records") {
    TempFile file("lb_corpus1.jsonl",
                  R"({"id":"1","user":"u1","text":"yeh Film. acchi hai"})"
                  "\n"
                  R"({"id":"2","user":"u2","text":"good movie"})"
                  "\n"
                  R"({"id":"3","user":"u1","text":"ok"})"
                  "\n");
    const Corpus corpus = load_corpus(file.path, CorpusFormat::Jsonl);
    REQUIRE(corpus.tweets.size() == 3);
    CHECK(corpus.provenance.report.input == 3);
    CHECK(corpus.provenance.report.retained == 3);
    // tokenization + normalization applied
    CHECK(corpus.tweets[0].tokens.size() == 4);
    CHECK(corpus.tweets[0].tokens[1].surface == "Film.");
    CHECK(corpus.tweets[0].tokens[1].normalized == "film");
}

TEST_CASE("load_corpus drops duplicate ids") {
    TempFile file("lb_corpus2.jsonl",
                  R"({"id":"1","user":"u1","text":"a"})"
                  "\n"
                  R"({"id":"2","user":"u2","text":"b"})"
                  "\n"
                  R"({"id":"1","user":"u3","text":"c"})"
                  "\n");
    const Corpus corpus = load_corpus(file.path, CorpusFormat::Jsonl);
    CHECK(corpus.tweets.size() == 2);
    CHECK(corpus.provenance.report.duplicate == 1);
}

TEST_CASE("load_corpus counts malformed records and keeps going") {
    TempFile file("lb_corpus3.jsonl",
                  R"({"id":"1","user":"u1","text":"a"})"
                  "\n"
                  "not json\n"
                  R"({"id":"2","user":"u2"})"
                  "\n");
    const Corpus corpus = load_corpus(file.path, CorpusFormat::Jsonl);
    CHECK(corpus.tweets.size() == 1);
    CHECK(corpus.provenance.report.malformed == 2);
}

TEST_CASE("pre_tagged token/tag length mismatch is malformed") {
    TempFile file("lb_corpus4.jsonl",
                  R"({"id":"1","user":"u1","tokens":["a","b"],"tags":["En"]})"
                  "\n"
                  R"({"id":"2","user":"u1","tokens":["a"],"tags":["Hi"]})"
                  "\n");
    const Corpus corpus = load_corpus(file.path, CorpusFormat::PreTaggedJsonl);
    REQUIRE(corpus.tweets.size() == 1);
    CHECK(corpus.provenance.report.malformed == 1);
    CHECK(corpus.tweets[0].tokens[0].tag == LanguageTag::Hi);
}

TEST_CASE("tsv format loads") {
    TempFile file("lb_corpus5.tsv", "1\tu1\tyeh film acchi\n2\tu2\tcool stuff\n");
    const Corpus corpus = load_corpus(file.path, CorpusFormat::Tsv);
    REQUIRE(corpus.tweets.size() == 2);
    CHECK(corpus.tweets[1].tokens.size() == 2);
}

TEST_CASE("filter_corpus drop reasons") {
    Corpus corpus;
    corpus.tweets.push_back(make_tweet("1", "u", {"http://t.co/x"}));
    corpus.tweets.push_back(make_tweet("2", "u", {}));
    corpus.tweets.push_back(make_tweet("3", "u", {"ab", "कख"})); // 50% Latin
    corpus.tweets.push_back(make_tweet("4", "u", {"plain", "english"}));
    corpus.tweets.push_back(make_tweet("5", "u", {"http://a.b", "www.c.d"}));

    auto [kept, report] = filter_corpus(corpus, FilterPolicy{});
    CHECK(report.input == 5);
    CHECK(report.url_only == 2);
    CHECK(report.empty == 1);
    CHECK(report.non_roman == 1);
    REQUIRE(kept.tweets.size() == 1);
    CHECK(kept.tweets[0].id == "4");
}

TEST_CASE("filter ignores URL tokens when judging romanization") {
    Corpus corpus;
    // The URL chars don't count; remaining text is pure Devanagari.
    corpus.tweets.push_back(make_tweet("1", "u", {"http://t.co/xyz", "कख"}));
    auto [kept, report] = filter_corpus(corpus, FilterPolicy{});
    CHECK(kept.tweets.empty());
    CHECK(report.non_roman == 1);
}

TEST_CASE("filter conservation and idempotence on random corpora") {
    Rng rng(99);
    for (int trial = 0; trial < 20; ++trial) {
        Corpus corpus;
        const size_t n = rng.uniform_index(40);
        for (size_t i = 0; i < n; ++i) {
            std::vector<std::string> words;
            const size_t len = rng.uniform_index(5);
            for (size_t k = 0; k < len; ++k) {
                switch (rng.uniform_index(4)) {
                    case 0: words.push_back("word"); break;
                    case 1: words.push_back("http://x.y"); break;
                    case 2: words.push_back("कखग"); break;
                    default: words.push_back("ok"); break;
                }
            }
            corpus.tweets.push_back(make_tweet(std::to_string(i), "u", words));
        }

        auto [once, report] = filter_corpus(corpus, FilterPolicy{});
        CHECK(report.retained + report.dropped() == report.input);

        auto [twice, report2] = filter_corpus(once, FilterPolicy{});
        CHECK(twice.tweets == once.tweets);
        CHECK(report2.dropped() == 0);
    }
}

TEST_CASE("pre_tagged round trip") {
    Corpus corpus;
    corpus.tweets.push_back(make_tweet("1", "u1", {"yeh", "film", "#tag"},
                                       {LanguageTag::Hi, LanguageTag::En, LanguageTag::Other}));
    corpus.tweets.push_back(make_tweet("2", "u2", {"good", "movie"},
                                       {LanguageTag::En, LanguageTag::En}));
    corpus.tweets[1].category = TweetCategory::En;

    const std::string path =
        (std::filesystem::temp_directory_path() / "lb_roundtrip.jsonl").string();
    save_corpus_pre_tagged(corpus, path);
    const Corpus back = load_corpus(path, CorpusFormat::PreTaggedJsonl);
    std::remove(path.c_str());

    CHECK(back.tweets == corpus.tweets);
}

TEST_CASE("enum string round trips") {
    for (auto tag : {LanguageTag::En, LanguageTag::Hi, LanguageTag::NE, LanguageTag::Other}) {
        CHECK(language_tag_from_string(to_string(tag)) == tag);
    }
    for (auto cat : {TweetCategory::En, TweetCategory::Hi, TweetCategory::CME, TweetCategory::CMH,
                     TweetCategory::CMEQ, TweetCategory::CS, TweetCategory::Other}) {
        CHECK(tweet_category_from_string(to_string(cat)) == cat);
    }
    CHECK_THROWS_AS(language_tag_from_string("XX"), DataError);
    CHECK_THROWS_AS(corpus_format_from_string("yaml"), DataError);
}
