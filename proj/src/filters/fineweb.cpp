// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/filters/fineweb.hpp"

#include <algorithm>
#include <unordered_set>
#include <vector>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::filters {
namespace {

constexpr std::string_view kStage = "fineweb_quality";

void check_fraction(double v, const std::string& name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(name + " must be in [0, 1]");
}

}  // namespace

void FineWebQualityConfig::validate() const {
    check_fraction(short_line_frac_max, "fineweb_quality.short_line_frac_max");
    check_fraction(char_dup_frac_max, "fineweb_quality.char_dup_frac_max");
    check_fraction(line_punct_frac_min, "fineweb_quality.line_punct_frac_min");
    check_fraction(new_line_ratio_max, "fineweb_quality.new_line_ratio_max");
    if (terminal_punctuation.empty()) throw ConfigError("fineweb_quality.terminal_punctuation must not be empty");
}

FineWebQualityStats fineweb_quality_stats(std::string_view input, const FineWebQualityConfig& cfg) {
    FineWebQualityStats st;
    const auto u = text::to_u32(text::nfc(input));
    const std::u32string_view s = u;

    std::vector<std::u32string_view> lines;
    std::size_t start = 0;
    std::size_t newlines = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i < s.size() && s[i] != U'\n') continue;
        if (i < s.size()) ++newlines;
        auto line = s.substr(start, i - start);
        if (std::any_of(line.begin(), line.end(), [](char32_t c) { return !text::is_white_space(c); })) {
            lines.push_back(line);
        }
        start = i + 1;
    }
    st.lines = lines.size();
    if (lines.empty()) return st;

    std::size_t short_lines = 0;
    std::size_t punct_lines = 0;
    std::size_t dup_chars = 0;
    std::size_t words = 0;
    std::unordered_set<std::u32string_view> seen;
    for (auto line : lines) {
        if (line.size() < cfg.short_line_chars) ++short_lines;
        auto r = line;
        while (!r.empty() && text::is_white_space(r.back())) r.remove_suffix(1);
        if (cfg.terminal_punctuation.find(r.back()) != std::u32string::npos) ++punct_lines;
        if (!seen.insert(line).second) dup_chars += line.size();
        bool in_word = false;
        for (char32_t c : line) {
            bool ws = text::is_white_space(c);
            if (!ws && !in_word) ++words;
            in_word = !ws;
        }
    }
    const auto n = static_cast<double>(lines.size());
    st.short_line_frac = static_cast<double>(short_lines) / n;
    st.line_punct_frac = static_cast<double>(punct_lines) / n;
    st.char_dup_frac = static_cast<double>(dup_chars) / static_cast<double>(s.size() - newlines);
    st.new_line_ratio = static_cast<double>(newlines) / static_cast<double>(words);
    return st;
}

Verdict fineweb_quality(const Document& doc, const FineWebQualityConfig& cfg) {
    auto st = fineweb_quality_stats(doc.text, cfg);
    if (st.lines == 0) return Verdict::drop(kStage, reason::fineweb_empty);
    if (st.short_line_frac > cfg.short_line_frac_max) return Verdict::drop(kStage, reason::fineweb_short_line_frac);
    if (st.line_punct_frac < cfg.line_punct_frac_min) return Verdict::drop(kStage, reason::fineweb_line_punct_frac);
    if (st.char_dup_frac > cfg.char_dup_frac_max) return Verdict::drop(kStage, reason::fineweb_char_dup_frac);
    if (st.new_line_ratio > cfg.new_line_ratio_max) return Verdict::drop(kStage, reason::fineweb_newline_ratio);
    return Verdict::keep(kStage);
}

}  // namespace corpus_forge::filters
