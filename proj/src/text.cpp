// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/text.hpp"

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>
#include <unicode/utf8.h>

#include <algorithm>
#include <cctype>

namespace corpus_forge::text {
namespace {

bool is_ascii(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

std::string from_unicode_string(const icu::UnicodeString& us) {
    std::string out;
    us.toUTF8String(out);
    return out;
}

}  // namespace

char32_t next_code_point(std::string_view s, std::size_t& pos) {
    UChar32 c = 0;
    auto i = static_cast<int32_t>(pos);
    U8_NEXT(reinterpret_cast<const uint8_t*>(s.data()), i, static_cast<int32_t>(s.size()), c);
    pos = static_cast<std::size_t>(i);
    return c < 0 ? U'�' : static_cast<char32_t>(c);
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

std::u32string to_u32(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    for (std::size_t pos = 0; pos < s.size();) out.push_back(next_code_point(s, pos));
    return out;
}

std::string to_utf8(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) append_utf8(out, cp);
    return out;
}

std::size_t code_point_count(std::string_view s) {
    std::size_t n = 0;
    for (std::size_t pos = 0; pos < s.size(); ++n) next_code_point(s, pos);
    return n;
}

std::string repair_utf8(std::string_view bytes) {
    if (is_ascii(bytes)) return std::string(bytes);
    std::string out;
    out.reserve(bytes.size());
    for (std::size_t pos = 0; pos < bytes.size();) append_utf8(out, next_code_point(bytes, pos));
    return out;
}

std::string decode_charset(std::string_view bytes, std::string_view charset) {
    auto cs = ascii_lower(trim(charset));
    if (cs == "iso-8859-1" || cs == "latin1" || cs == "latin-1" || cs == "iso8859-1" || cs == "l1") {
        std::string out;
        out.reserve(bytes.size() * 2);
        for (unsigned char b : bytes) append_utf8(out, b);
        return out;
    }
    if (cs == "windows-1252" || cs == "cp1252" || cs == "iso-8859-15" || cs == "latin9") {
        icu::UnicodeString us(bytes.data(), static_cast<int32_t>(bytes.size()),
                              cs == "iso-8859-15" || cs == "latin9" ? "ISO-8859-15" : "windows-1252");
        return from_unicode_string(us);
    }
    return repair_utf8(bytes);
}

std::string nfc(std::string_view s) {
    if (is_ascii(s)) return std::string(s);
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* norm = icu::Normalizer2::getNFCInstance(status);
    auto us = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    if (U_FAILURE(status)) return std::string(s);
    if (norm->isNormalized(us, status) && U_SUCCESS(status)) return std::string(s);
    status = U_ZERO_ERROR;
    auto normalized = norm->normalize(us, status);
    if (U_FAILURE(status)) return std::string(s);
    return from_unicode_string(normalized);
}

std::string case_fold(std::string_view s) {
    if (is_ascii(s)) return ascii_lower(s);
    auto us = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    us.foldCase();
    return from_unicode_string(us);
}

bool is_white_space(char32_t cp) { return u_isUWhiteSpace(static_cast<UChar32>(cp)) != 0; }

bool is_alphabetic(char32_t cp) { return u_hasBinaryProperty(static_cast<UChar32>(cp), UCHAR_ALPHABETIC) != 0; }

bool is_alphanumeric(char32_t cp) { return is_alphabetic(cp) || u_isdigit(static_cast<UChar32>(cp)); }

bool is_punct_or_symbol(char32_t cp) {
    auto mask = U_GET_GC_MASK(static_cast<UChar32>(cp));
    return (mask & (U_GC_P_MASK | U_GC_S_MASK)) != 0;
}

std::vector<std::string_view> split_whitespace(std::string_view s) {
    std::vector<std::string_view> words;
    std::size_t start = std::string_view::npos;
    for (std::size_t pos = 0; pos < s.size();) {
        std::size_t here = pos;
        char32_t cp = next_code_point(s, pos);
        if (is_white_space(cp)) {
            if (start != std::string_view::npos) {
                words.push_back(s.substr(start, here - start));
                start = std::string_view::npos;
            }
        } else if (start == std::string_view::npos) {
            start = here;
        }
    }
    if (start != std::string_view::npos) words.push_back(s.substr(start));
    return words;
}

std::string_view trim_left(std::string_view s) {
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t next = pos;
        if (!is_white_space(next_code_point(s, next))) break;
        pos = next;
    }
    return s.substr(pos);
}

std::string_view trim_right(std::string_view s) {
    std::size_t end = 0;
    for (std::size_t pos = 0; pos < s.size();) {
        char32_t cp = next_code_point(s, pos);
        if (!is_white_space(cp)) end = pos;
    }
    return s.substr(0, end);
}

std::string_view trim(std::string_view s) { return trim_right(trim_left(s)); }

std::string collapse_whitespace(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    for (auto word : split_whitespace(s)) {
        if (!out.empty()) out.push_back(' ');
        out.append(word);
    }
    return out;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    if (s.size() < prefix.size()) return false;
    for (std::size_t i = 0; i < prefix.size(); ++i) {
        auto a = static_cast<unsigned char>(s[i]);
        auto b = static_cast<unsigned char>(prefix[i]);
        if (std::tolower(a) != std::tolower(b)) return false;
    }
    return true;
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
    });
    return out;
}

}  // namespace corpus_forge::text
