#pragma once

// UTF-8 helpers shared by every module. All functions operate on codepoints,
// never on grapheme clusters.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace tarjim::text {

bool is_valid_utf8(std::string_view s);

// Invalid sequences decode to U+FFFD.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);
void append_utf8(std::string& out, char32_t cp);

std::size_t codepoint_count(std::string_view s);

// Whitespace as understood by Python's str.isspace(); the WMT scorers split on
// this set, so every whitespace-sensitive routine here uses it too.
bool is_space(char32_t cp);

// Splits on runs of is_space codepoints. Views point into `s`.
std::vector<std::string_view> split_words(std::string_view s);
std::size_t word_count(std::string_view s);

std::string trim(std::string_view s);

// NFC, then trim, then collapse internal whitespace runs to one U+0020.
std::string normalize(std::string_view s);

// Full Unicode lowercase mapping (root locale).
std::string to_lower(std::string_view s);

// General category L*.
bool is_letter(char32_t cp);

bool is_arabic_script(char32_t cp);
bool is_latin_script(char32_t cp);

}  // namespace tarjim::text
