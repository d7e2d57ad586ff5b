#include "lexborrow/text.hpp"

#include <doctest.h>

using namespace lexborrow;

TEST_CASE("normalize_token strips edge punctuation and lowercases") {
    CHECK(normalize_token("Film.") == "film");
    CHECK(normalize_token("film") == "film");
    CHECK(normalize_token("\"Hello!\"") == "hello");
    CHECK(normalize_token("...") == "");
    CHECK(normalize_token("don't") == "don't"); // interior punctuation stays
}

TEST_CASE("normalize_token keeps hashtag and mention markers") {
    CHECK(normalize_token("#ThikHai") == "#thikhai");
    CHECK(normalize_token("@User,") == "@user");
}

TEST_CASE("normalize_token is idempotent") {
    for (const char* raw : {"Film.", "#Tag!", "@User", "a.b", "''", "123,"}) {
        const std::string once = normalize_token(raw);
        CHECK(normalize_token(once) == once);
    }
}

TEST_CASE("split_whitespace") {
    CHECK(split_whitespace("a  b\tc\n") == std::vector<std::string>{"a", "b", "c"});
    CHECK(split_whitespace("   ").empty());
    CHECK(split_whitespace("").empty());
}

TEST_CASE("token classifiers") {
    CHECK(is_url_token("http://t.co/x"));
    CHECK(is_url_token("HTTPS://example.com"));
    CHECK(is_url_token("www.example.com"));
    CHECK_FALSE(is_url_token("film"));
    CHECK(is_hashtag_token("#thikhai"));
    CHECK_FALSE(is_hashtag_token("thikhai"));
    CHECK(is_mention_token("@user"));
    CHECK_FALSE(is_mention_token("user"));
}

TEST_CASE("decode_utf8 replaces invalid bytes") {
    const auto cps = decode_utf8("a\xFF");
    REQUIRE(cps.size() == 2);
    CHECK(cps[0] == 'a');
    CHECK(cps[1] == 0xFFFD);
}

TEST_CASE("latin_fraction") {
    CHECK(latin_fraction("abc") == doctest::Approx(1.0));
    // "ab" + two Devanagari letters -> half the alphabetic chars are Latin.
    CHECK(latin_fraction("ab कख") == doctest::Approx(0.5));
    CHECK(latin_fraction("123 !!") == doctest::Approx(1.0)); // nothing alphabetic
    CHECK(latin_fraction("कख") == doctest::Approx(0.0));
}
