#ifndef LEXBORROW_TEXT_HPP
#define LEXBORROW_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lexborrow {

/// Lowercase + strip leading/trailing punctuation. '#' and '@' markers are
/// kept so hashtags and mentions stay recognizable downstream. Idempotent.
std::string normalize_token(std::string_view surface);

/// Whitespace tokenization of a raw text line.
std::vector<std::string> split_whitespace(std::string_view text);

bool is_url_token(std::string_view token);
bool is_hashtag_token(std::string_view token);
bool is_mention_token(std::string_view token);

/// Decodes UTF-8 into codepoints; invalid bytes come back as U+FFFD.
std::vector<uint32_t> decode_utf8(std::string_view text);

/// Basic Latin letter (ASCII A-Z a-z).
bool is_basic_latin_letter(uint32_t cp);

/// Letter in any script we classify (Latin plus the major non-Latin blocks).
bool is_alphabetic(uint32_t cp);

/// Fraction of alphabetic characters that are basic Latin letters.
/// Text with no alphabetic characters counts as fully Latin.
double latin_fraction(std::string_view text);

} // namespace lexborrow

#endif
