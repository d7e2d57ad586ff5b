#include "lexborrow/text.hpp"

#include <algorithm>
#include <cctype>

namespace lexborrow {

namespace {

bool is_strippable_punct(char c) {
    // ASCII punctuation, except the hashtag/mention markers.
    unsigned char u = static_cast<unsigned char>(c);
    return std::ispunct(u) && c != '#' && c != '@';
}

} // namespace

std::string normalize_token(std::string_view surface) {
    size_t begin = 0;
    size_t end = surface.size();
    while (begin < end && is_strippable_punct(surface[begin])) ++begin;
    while (end > begin && is_strippable_punct(surface[end - 1])) --end;
    std::string out(surface.substr(begin, end - begin));
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

std::vector<std::string> split_whitespace(std::string_view text) {
    std::vector<std::string> tokens;
    size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        size_t start = i;
        while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        if (i > start) tokens.emplace_back(text.substr(start, i - start));
    }
    return tokens;
}

namespace {

bool starts_with_nocase(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (size_t i = 0; i < prefix.size(); ++i) {
        if (std::tolower(static_cast<unsigned char>(s[i])) != prefix[i]) return false;
    }
    return true;
}

} // namespace

bool is_url_token(std::string_view token) {
    return starts_with_nocase(token, "http://") || starts_with_nocase(token, "https://") ||
           starts_with_nocase(token, "www.");
}

bool is_hashtag_token(std::string_view token) {
    return !token.empty() && token.front() == '#';
}

bool is_mention_token(std::string_view token) {
    return !token.empty() && token.front() == '@';
}

std::vector<uint32_t> decode_utf8(std::string_view text) {
    std::vector<uint32_t> cps;
    cps.reserve(text.size());
    size_t i = 0;
    const auto byte = [&](size_t k) { return static_cast<uint8_t>(text[k]); };
    while (i < text.size()) {
        uint8_t b0 = byte(i);
        uint32_t cp = 0xFFFD;
        size_t len = 1;
        if (b0 < 0x80) {
            cp = b0;
        } else if ((b0 & 0xE0) == 0xC0 && i + 1 < text.size() && (byte(i + 1) & 0xC0) == 0x80) {
            cp = (uint32_t(b0 & 0x1F) << 6) | (byte(i + 1) & 0x3F);
            len = 2;
        } else if ((b0 & 0xF0) == 0xE0 && i + 2 < text.size() && (byte(i + 1) & 0xC0) == 0x80 &&
                   (byte(i + 2) & 0xC0) == 0x80) {
            cp = (uint32_t(b0 & 0x0F) << 12) | (uint32_t(byte(i + 1) & 0x3F) << 6) |
                 (byte(i + 2) & 0x3F);
            len = 3;
        } else if ((b0 & 0xF8) == 0xF0 && i + 3 < text.size() && (byte(i + 1) & 0xC0) == 0x80 &&
                   (byte(i + 2) & 0xC0) == 0x80 && (byte(i + 3) & 0xC0) == 0x80) {
            cp = (uint32_t(b0 & 0x07) << 18) | (uint32_t(byte(i + 1) & 0x3F) << 12) |
                 (uint32_t(byte(i + 2) & 0x3F) << 6) | (byte(i + 3) & 0x3F);
            len = 4;
        }
        cps.push_back(cp);
        i += len;
    }
    return cps;
}

bool is_basic_latin_letter(uint32_t cp) {
    return (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
}

bool is_alphabetic(uint32_t cp) {
    if (is_basic_latin_letter(cp)) return true;
    struct Range {
        uint32_t lo, hi;
    };
    // Latin supplements plus the major non-Latin letter blocks. Symbols,
    // digits and emoji fall outside and do not count as alphabetic.
    static constexpr Range kLetterRanges[] = {
        {0x00C0, 0x00FF}, // Latin-1 letters (x00D7 and x00F7 excluded below)
        {0x0100, 0x024F}, // Latin Extended-A/B
        {0x0370, 0x03FF}, // Greek
        {0x0400, 0x04FF}, // Cyrillic
        {0x0590, 0x05FF}, // Hebrew
        {0x0600, 0x06FF}, // Arabic
        {0x0900, 0x097F}, // Devanagari
        {0x0980, 0x09FF}, // Bengali
        {0x0A00, 0x0A7F}, // Gurmukhi
        {0x0A80, 0x0AFF}, // Gujarati
        {0x0B00, 0x0B7F}, // Oriya
        {0x0B80, 0x0BFF}, // Tamil
        {0x0C00, 0x0C7F}, // Telugu
        {0x0C80, 0x0CFF}, // Kannada
        {0x0D00, 0x0D7F}, // Malayalam
        {0x0E00, 0x0E7F}, // Thai
        {0x3040, 0x30FF}, // Hiragana/Katakana
        {0x4E00, 0x9FFF}, // CJK
        {0xAC00, 0xD7AF}, // Hangul
    };
    if (cp == 0x00D7 || cp == 0x00F7) return false;
    for (const auto& r : kLetterRanges) {
        if (cp >= r.lo && cp <= r.hi) return true;
    }
    return false;
}

double latin_fraction(std::string_view text) {
    size_t alpha = 0;
    size_t latin = 0;
    for (uint32_t cp : decode_utf8(text)) {
        if (!is_alphabetic(cp)) continue;
        ++alpha;
        if (is_basic_latin_letter(cp)) ++latin;
    }
    if (alpha == 0) return 1.0;
    return static_cast<double>(latin) / static_cast<double>(alpha);
}

} // namespace lexborrow
