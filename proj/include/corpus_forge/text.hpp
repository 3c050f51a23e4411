// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

// Unicode helpers shared by every stage. All strings are UTF-8.
namespace corpus_forge::text {

/// Decodes the code point starting at `pos` and advances `pos` past it.
/// Ill-formed sequences decode to U+FFFD and consume one maximal subpart.
char32_t next_code_point(std::string_view s, std::size_t& pos);

void append_utf8(std::string& out, char32_t cp);

std::u32string to_u32(std::string_view s);
std::string to_utf8(std::u32string_view s);

std::size_t code_point_count(std::string_view s);

/// Repairs arbitrary bytes into well-formed UTF-8, substituting U+FFFD.
std::string repair_utf8(std::string_view bytes);

/// Decodes bytes in a declared legacy charset. Unknown charsets and
/// UTF-8 fall back to `repair_utf8`.
std::string decode_charset(std::string_view bytes, std::string_view charset);

std::string nfc(std::string_view s);
std::string case_fold(std::string_view s);

bool is_white_space(char32_t cp);
bool is_alphabetic(char32_t cp);
bool is_alphanumeric(char32_t cp);
/// Unicode general category P* or S*.
bool is_punct_or_symbol(char32_t cp);

/// Maximal runs of non-whitespace, in order. Views alias `s`.
std::vector<std::string_view> split_whitespace(std::string_view s);

std::string_view trim(std::string_view s);
std::string_view trim_right(std::string_view s);
std::string_view trim_left(std::string_view s);

/// Collapses every whitespace run to a single ASCII space and trims.
std::string collapse_whitespace(std::string_view s);

bool starts_with_ci(std::string_view s, std::string_view prefix);
std::string ascii_lower(std::string_view s);

}  // namespace corpus_forge::text
