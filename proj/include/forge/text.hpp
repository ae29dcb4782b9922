#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace forge {

// Minimal UTF-8 support: enough to classify codepoints for language tagging
// and to scan emoji sequences. Invalid byte sequences decode to U+FFFD.

std::vector<char32_t> utf8_decode(std::string_view s);
std::string utf8_encode(const std::vector<char32_t>& cps);
void utf8_append(std::string& out, char32_t cp);

// Codepoint classes used by tokenization and univ-tag detection.
bool is_punct_cp(char32_t cp);
bool is_digit_cp(char32_t cp);
bool is_emoji_cp(char32_t cp);
bool is_latin_letter_cp(char32_t cp);

bool is_ascii_space(char c);

// ASCII-only case folding; dictionary and tag-lexicon lookups are folded
// with this (the embedded scripts in play have no case).
std::string ascii_lower(std::string_view s);

std::vector<std::string> split_ws(std::string_view s);
std::vector<std::string> split_char(std::string_view s, char sep);

// True for whitespace-delimited chunks that look like URLs:
// http://..., https://... or www.... (case-insensitive prefix).
bool looks_like_url(std::string_view chunk);

// @ followed by one or more word characters.
bool looks_like_mention(std::string_view chunk);

}  // namespace forge
