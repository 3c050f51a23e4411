// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/filters/gopher.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::filters {
namespace {

using U32View = std::u32string_view;

bool is_ws(char32_t c) { return text::is_white_space(c); }

U32View strip(U32View s) {
    while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
    return s;
}

// Splits on runs of at least `min_run` consecutive '\n'. Shorter runs stay
// inside the pieces; leading and trailing separators yield empty pieces.
std::vector<U32View> split_newline_runs(U32View s, std::size_t min_run) {
    std::vector<U32View> out;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] != U'\n') {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && s[j] == U'\n') ++j;
        if (j - i >= min_run) {
            out.push_back(s.substr(start, i - start));
            start = j;
        }
        i = j;
    }
    out.push_back(s.substr(start));
    return out;
}

// (duplicate elements, characters in duplicate elements)
std::pair<std::size_t, std::size_t> find_duplicates(const std::vector<U32View>& xs) {
    std::unordered_set<U32View> seen;
    std::size_t elems = 0;
    std::size_t chars = 0;
    for (auto x : xs) {
        if (!seen.insert(x).second) {
            ++elems;
            chars += x.size();
        }
    }
    return {elems, chars};
}

std::vector<U32View> words_of(U32View s) {
    std::vector<U32View> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_ws(s[i])) ++i;
        std::size_t j = i;
        while (j < s.size() && !is_ws(s[j])) ++j;
        if (j > i) out.push_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

double top_ngram_mass(const std::vector<U32View>& words, std::size_t n) {
    if (words.size() < n) return 0.0;
    struct Entry {
        std::size_t count = 0;
        std::size_t first = 0;
        std::size_t length = 0;
    };
    std::unordered_map<std::u32string, Entry> counts;
    std::u32string key;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
        key.clear();
        for (std::size_t k = 0; k < n; ++k) {
            if (k) key.push_back(U' ');
            key.append(words[i + k]);
        }
        auto [it, inserted] = counts.try_emplace(key);
        if (inserted) {
            it->second.first = i;
            it->second.length = key.size();
        }
        ++it->second.count;
    }
    const Entry* best = nullptr;
    for (const auto& [_, e] : counts) {
        if (!best || e.count > best->count || (e.count == best->count && e.first < best->first)) best = &e;
    }
    if (!best || best->count < 2) return 0.0;
    return static_cast<double>(best->count * best->length);
}

double duplicate_ngram_chars(const std::vector<U32View>& words, std::size_t n) {
    std::unordered_set<std::u32string> seen;
    std::size_t repeated = 0;
    std::size_t i = 0;
    std::u32string key;
    while (words.size() >= n && i + n <= words.size()) {
        key.clear();
        for (std::size_t k = 0; k < n; ++k) key.append(words[i + k]);
        if (seen.contains(key)) {
            repeated += key.size();
            i += n;
        } else {
            seen.insert(key);
            ++i;
        }
    }
    return static_cast<double>(repeated);
}

bool is_line_break(char32_t c) {
    switch (c) {
        case U'\n': case U'\r': case U'\v': case U'\f': case 0x1C: case 0x1D: case 0x1E:
        case 0x85: case 0x2028: case 0x2029:
            return true;
        default:
            return false;
    }
}

// Line splitting with universal newlines; a trailing break does not open
// an empty final line.
std::vector<U32View> split_lines(U32View s) {
    std::vector<U32View> out;
    std::size_t start = 0;
    std::size_t i = 0;
    while (i < s.size()) {
        if (!is_line_break(s[i])) {
            ++i;
            continue;
        }
        out.push_back(s.substr(start, i - start));
        i += (s[i] == U'\r' && i + 1 < s.size() && s[i + 1] == U'\n') ? 2 : 1;
        start = i;
    }
    if (start < s.size()) out.push_back(s.substr(start));
    return out;
}

std::size_t count_occurrences(U32View s, U32View needle) {
    std::size_t n = 0;
    for (auto pos = s.find(needle); pos != U32View::npos; pos = s.find(needle, pos + needle.size())) ++n;
    return n;
}

bool is_symbol_word(U32View w) {
    return std::all_of(w.begin(), w.end(), [](char32_t c) { return text::is_punct_or_symbol(c); });
}

U32View trim_punct(U32View w) {
    while (!w.empty() && text::is_punct_or_symbol(w.front())) w.remove_prefix(1);
    while (!w.empty() && text::is_punct_or_symbol(w.back())) w.remove_suffix(1);
    return w;
}

void check_fraction(double v, const std::string& name) {
    if (!(v >= 0.0 && v <= 1.0)) throw ConfigError(name + " must be in [0, 1]");
}

std::string_view top_reason(int n) {
    switch (n) {
        case 2: return reason::gopher_rep_top_2_gram;
        case 3: return reason::gopher_rep_top_3_gram;
        case 4: return reason::gopher_rep_top_4_gram;
        default: throw ContractError("no reason code for top n-gram n=" + std::to_string(n));
    }
}

std::string_view dup_reason(int n) {
    switch (n) {
        case 5: return reason::gopher_rep_dup_5_gram;
        case 6: return reason::gopher_rep_dup_6_gram;
        case 7: return reason::gopher_rep_dup_7_gram;
        case 8: return reason::gopher_rep_dup_8_gram;
        case 9: return reason::gopher_rep_dup_9_gram;
        case 10: return reason::gopher_rep_dup_10_gram;
        default: throw ContractError("no reason code for duplicate n-gram n=" + std::to_string(n));
    }
}

constexpr std::string_view kRepStage = "gopher_repetition";
constexpr std::string_view kQualStage = "gopher_quality";

}  // namespace

void GopherRepetitionConfig::validate() const {
    check_fraction(dup_line_frac_max, "gopher_repetition.dup_line_frac_max");
    check_fraction(dup_paragraph_frac_max, "gopher_repetition.dup_paragraph_frac_max");
    check_fraction(dup_line_char_frac_max, "gopher_repetition.dup_line_char_frac_max");
    check_fraction(dup_paragraph_char_frac_max, "gopher_repetition.dup_paragraph_char_frac_max");
    for (const auto& [n, v] : top_ngram_char_frac_max) {
        if (n < 2 || n > 4) throw ConfigError("gopher_repetition.top_ngram_char_frac_max keys must be 2..4");
        check_fraction(v, "gopher_repetition.top_ngram_char_frac_max");
    }
    for (const auto& [n, v] : dup_ngram_char_frac_max) {
        if (n < 5 || n > 10) throw ConfigError("gopher_repetition.dup_ngram_char_frac_max keys must be 5..10");
        check_fraction(v, "gopher_repetition.dup_ngram_char_frac_max");
    }
}

GopherRepetitionStats gopher_repetition_stats(std::string_view input, const GopherRepetitionConfig& cfg) {
    GopherRepetitionStats st;
    const auto u = text::to_u32(text::nfc(input));
    const U32View s = u;
    for (const auto& [n, _] : cfg.top_ngram_char_frac_max) st.top_ngram_char_frac[n] = 0.0;
    for (const auto& [n, _] : cfg.dup_ngram_char_frac_max) st.dup_ngram_char_frac[n] = 0.0;
    if (s.empty()) return st;
    const auto len = static_cast<double>(s.size());

    auto paras = split_newline_runs(strip(s), 2);
    auto [pd, pc] = find_duplicates(paras);
    st.dup_para_frac = static_cast<double>(pd) / static_cast<double>(paras.size());
    st.dup_para_char_frac = static_cast<double>(pc) / len;

    auto lines = split_newline_runs(s, 1);
    auto [ld, lc] = find_duplicates(lines);
    st.dup_line_frac = static_cast<double>(ld) / static_cast<double>(lines.size());
    st.dup_line_char_frac = static_cast<double>(lc) / len;

    auto words = words_of(s);
    for (auto& [n, v] : st.top_ngram_char_frac) v = top_ngram_mass(words, static_cast<std::size_t>(n)) / len;
    for (auto& [n, v] : st.dup_ngram_char_frac) v = duplicate_ngram_chars(words, static_cast<std::size_t>(n)) / len;
    return st;
}

Verdict gopher_repetition(const Document& doc, const GopherRepetitionConfig& cfg) {
    auto st = gopher_repetition_stats(doc.text, cfg);
    if (st.dup_para_frac > cfg.dup_paragraph_frac_max) return Verdict::drop(kRepStage, reason::gopher_rep_dup_para_frac);
    if (st.dup_para_char_frac > cfg.dup_paragraph_char_frac_max) {
        return Verdict::drop(kRepStage, reason::gopher_rep_dup_para_char_frac);
    }
    if (st.dup_line_frac > cfg.dup_line_frac_max) return Verdict::drop(kRepStage, reason::gopher_rep_dup_line_frac);
    if (st.dup_line_char_frac > cfg.dup_line_char_frac_max) {
        return Verdict::drop(kRepStage, reason::gopher_rep_dup_line_char_frac);
    }
    for (const auto& [n, limit] : cfg.top_ngram_char_frac_max) {
        if (st.top_ngram_char_frac.at(n) > limit) return Verdict::drop(kRepStage, top_reason(n));
    }
    for (const auto& [n, limit] : cfg.dup_ngram_char_frac_max) {
        if (st.dup_ngram_char_frac.at(n) > limit) return Verdict::drop(kRepStage, dup_reason(n));
    }
    return Verdict::keep(kRepStage);
}

std::set<std::string> default_portuguese_stop_words() {
    return {"de", "a", "e", "que", "o", "da", "do", "em", "para", "com", "não", "uma"};
}

void GopherQualityConfig::validate() const {
    if (min_words > max_words) throw ConfigError("gopher_quality.min_words must not exceed max_words");
    if (mean_word_len_min > mean_word_len_max) {
        throw ConfigError("gopher_quality.mean_word_len_range must be ordered");
    }
    check_fraction(symbol_word_ratio_max, "gopher_quality.symbol_word_ratio_max");
    check_fraction(bullet_line_frac_max, "gopher_quality.bullet_line_frac_max");
    check_fraction(ellipsis_line_frac_max, "gopher_quality.ellipsis_line_frac_max");
    check_fraction(alpha_word_frac_min, "gopher_quality.alpha_word_frac_min");
}

GopherQualityStats gopher_quality_stats(std::string_view input, const GopherQualityConfig& cfg) {
    GopherQualityStats st;
    const auto u = text::to_u32(text::nfc(input));
    const U32View s = u;
    auto words = words_of(s);
    st.words = words.size();

    std::unordered_set<std::u32string> stops;
    for (const auto& w : cfg.stop_words) stops.insert(text::to_u32(text::case_fold(text::nfc(w))));

    std::size_t len_sum = 0;
    std::size_t alpha = 0;
    for (auto w : words) {
        if (!is_symbol_word(w)) {
            ++st.non_symbol_words;
            len_sum += w.size();
        }
        if (std::any_of(w.begin(), w.end(), [](char32_t c) { return text::is_alphabetic(c); })) ++alpha;
        auto core = trim_punct(w);
        if (!core.empty() && stops.contains(text::to_u32(text::case_fold(text::to_utf8(core))))) ++st.stop_word_hits;
    }
    st.mean_word_length = st.non_symbol_words
                              ? static_cast<double>(len_sum) / static_cast<double>(st.non_symbol_words)
                              : std::numeric_limits<double>::quiet_NaN();
    if (st.words) {
        const auto n = static_cast<double>(st.words);
        auto hashes = static_cast<double>(std::count(s.begin(), s.end(), U'#'));
        auto ellipses = static_cast<double>(count_occurrences(s, U"...") + count_occurrences(s, U"…"));
        st.symbol_ratio = std::max(hashes, ellipses) / n;
        st.alpha_word_frac = static_cast<double>(alpha) / n;
    }

    auto lines = split_lines(s);
    if (!lines.empty()) {
        std::size_t bullets = 0;
        std::size_t ellipsis_lines = 0;
        for (auto line : lines) {
            auto l = line;
            while (!l.empty() && is_ws(l.front())) l.remove_prefix(1);
            if (l.starts_with(U"•") || l.starts_with(U"-")) ++bullets;
            auto r = line;
            while (!r.empty() && is_ws(r.back())) r.remove_suffix(1);
            if (r.ends_with(U"...") || r.ends_with(U"…")) ++ellipsis_lines;
        }
        st.bullet_line_frac = static_cast<double>(bullets) / static_cast<double>(lines.size());
        st.ellipsis_line_frac = static_cast<double>(ellipsis_lines) / static_cast<double>(lines.size());
    }
    return st;
}

Verdict gopher_quality(const Document& doc, const GopherQualityConfig& cfg) {
    auto st = gopher_quality_stats(doc.text, cfg);
    if (st.non_symbol_words < cfg.min_words || st.non_symbol_words > cfg.max_words) {
        return Verdict::drop(kQualStage, reason::gopher_quality_word_count);
    }
    if (!std::isnan(st.mean_word_length) &&
        (st.mean_word_length < cfg.mean_word_len_min || st.mean_word_length > cfg.mean_word_len_max)) {
        return Verdict::drop(kQualStage, reason::gopher_quality_mean_word_length);
    }
    if (st.symbol_ratio > cfg.symbol_word_ratio_max) return Verdict::drop(kQualStage, reason::gopher_quality_symbol_ratio);
    if (st.bullet_line_frac > cfg.bullet_line_frac_max) {
        return Verdict::drop(kQualStage, reason::gopher_quality_bullet_lines);
    }
    if (st.ellipsis_line_frac > cfg.ellipsis_line_frac_max) {
        return Verdict::drop(kQualStage, reason::gopher_quality_ellipsis_lines);
    }
    if (st.words && st.alpha_word_frac < cfg.alpha_word_frac_min) {
        return Verdict::drop(kQualStage, reason::gopher_quality_alpha_words);
    }
    if (st.stop_word_hits < cfg.min_stop_word_hits) return Verdict::drop(kQualStage, reason::gopher_quality_stop_words);
    return Verdict::keep(kQualStage);
}

}  // namespace corpus_forge::filters
