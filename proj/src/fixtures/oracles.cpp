// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/fixtures/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <stdexcept>

#include <unicode/normalizer2.h>
#include <unicode/uchar.h>
#include <unicode/unistr.h>

namespace corpus_forge::fixtures::oracle {
namespace {

using U32 = std::u32string;

U32 nfc32(std::string_view s) {
    UErrorCode err = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(err);
    if (U_FAILURE(err)) throw std::runtime_error("ICU NFC unavailable");
    icu::UnicodeString in = icu::UnicodeString::fromUTF8(icu::StringPiece(s.data(), static_cast<int32_t>(s.size())));
    icu::UnicodeString out = nfc->normalize(in, err);
    if (U_FAILURE(err)) throw std::runtime_error("ICU normalize failed");
    U32 r;
    for (int32_t i = 0; i < out.length(); i = out.moveIndex32(i, 1)) r.push_back(static_cast<char32_t>(out.char32At(i)));
    return r;
}

std::string utf8(const U32& s) {
    icu::UnicodeString u;
    for (char32_t c : s) u.append(static_cast<UChar32>(c));
    std::string out;
    u.toUTF8String(out);
    return out;
}

U32 fold(const U32& s) {
    icu::UnicodeString u;
    for (char32_t c : s) u.append(static_cast<UChar32>(c));
    u.foldCase();
    U32 r;
    for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1)) r.push_back(static_cast<char32_t>(u.char32At(i)));
    return r;
}

bool ws(char32_t c) { return u_isUWhiteSpace(static_cast<UChar32>(c)) != 0; }
bool alpha(char32_t c) { return u_hasBinaryProperty(static_cast<UChar32>(c), UCHAR_ALPHABETIC) != 0; }

bool punct_or_symbol(char32_t c) {
    switch (u_charType(static_cast<UChar32>(c))) {
        case U_DASH_PUNCTUATION: case U_START_PUNCTUATION: case U_END_PUNCTUATION:
        case U_CONNECTOR_PUNCTUATION: case U_OTHER_PUNCTUATION: case U_INITIAL_PUNCTUATION:
        case U_FINAL_PUNCTUATION: case U_MATH_SYMBOL: case U_CURRENCY_SYMBOL:
        case U_MODIFIER_SYMBOL: case U_OTHER_SYMBOL:
            return true;
        default:
            return false;
    }
}

std::vector<U32> split_ws(const U32& s) {
    std::vector<U32> out;
    U32 cur;
    for (char32_t c : s) {
        if (ws(c)) {
            if (!cur.empty()) out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(cur);
    return out;
}

std::vector<U32> split_on(const U32& s, char32_t sep) {
    std::vector<U32> out(1);
    for (char32_t c : s) {
        if (c == sep) {
            out.emplace_back();
        } else {
            out.back().push_back(c);
        }
    }
    return out;
}

// (count of later repeats, their total length)
std::pair<std::size_t, std::size_t> repeats(const std::vector<U32>& xs) {
    std::size_t n = 0, chars = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            if (xs[j] == xs[i]) {
                ++n;
                chars += xs[i].size();
                break;
            }
        }
    }
    return {n, chars};
}

U32 join(const std::vector<U32>& w, std::size_t b, std::size_t n, std::u32string_view sep) {
    U32 s;
    for (std::size_t k = 0; k < n; ++k) {
        if (k) s += sep;
        s += w[b + k];
    }
    return s;
}

std::size_t count_sub(const U32& s, std::u32string_view needle) {
    std::size_t n = 0;
    std::size_t i = 0;
    while (i + needle.size() <= s.size()) {
        if (std::u32string_view(s).substr(i, needle.size()) == needle) {
            ++n;
            i += needle.size();
        } else {
            ++i;
        }
    }
    return n;
}

bool line_break(char32_t c) {
    return c == U'\n' || c == U'\r' || c == U'\v' || c == U'\f' || c == 0x1C || c == 0x1D || c == 0x1E || c == 0x85 ||
           c == 0x2028 || c == 0x2029;
}

}  // namespace

double exact_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::size_t inter = 0;
    for (const auto& x : sa) inter += sb.count(x);
    std::size_t uni = sa.size() + sb.size() - inter;
    return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

std::set<std::string> word_shingles(std::string_view text, std::size_t n) {
    auto words = split_ws(fold(nfc32(text)));
    std::set<std::string> out;
    if (words.size() < n) {
        out.insert(utf8(join(words, 0, words.size(), U" ")));
        return out;
    }
    for (std::size_t i = 0; i + n <= words.size(); ++i) out.insert(utf8(join(words, i, n, U" ")));
    return out;
}

double lsh_probability(double s, std::size_t rows, std::size_t bands) {
    return 1.0 - std::pow(1.0 - std::pow(s, static_cast<double>(rows)), static_cast<double>(bands));
}

RepetitionStats repetition_stats(std::string_view text) {
    RepetitionStats st;
    for (int n = 2; n <= 4; ++n) st.top_ngram_char_frac[n] = 0.0;
    for (int n = 5; n <= 10; ++n) st.dup_ngram_char_frac[n] = 0.0;
    const U32 s = nfc32(text);
    if (s.empty()) return st;
    const double len = static_cast<double>(s.size());

    // Paragraphs: strip, then every run of two or more newlines is a break.
    std::size_t b = 0, e = s.size();
    while (b < e && ws(s[b])) ++b;
    while (e > b && ws(s[e - 1])) --e;
    U32 marked;
    for (std::size_t i = b; i < e;) {
        if (s[i] == U'\n') {
            std::size_t j = i;
            while (j < e && s[j] == U'\n') ++j;
            if (j - i >= 2) {
                marked.push_back(0xE000);
            } else {
                marked.push_back(U'\n');
            }
            i = j;
        } else {
            marked.push_back(s[i++]);
        }
    }
    auto paras = split_on(marked, 0xE000);
    auto [pn, pc] = repeats(paras);
    st.dup_para_frac = static_cast<double>(pn) / static_cast<double>(paras.size());
    st.dup_para_char_frac = static_cast<double>(pc) / len;

    // Lines: newline runs act as one separator; the empty piece before a
    // leading run or after a trailing run survives.
    auto raw = split_on(s, U'\n');
    std::vector<U32> lines;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i].empty() && i != 0 && i + 1 != raw.size()) continue;
        lines.push_back(raw[i]);
    }
    auto [ln, lc] = repeats(lines);
    st.dup_line_frac = static_cast<double>(ln) / static_cast<double>(lines.size());
    st.dup_line_char_frac = static_cast<double>(lc) / len;

    auto words = split_ws(s);
    for (int n = 2; n <= 4; ++n) {
        auto N = static_cast<std::size_t>(n);
        if (words.size() < N) continue;
        std::size_t best_count = 0, best_len = 0;
        for (std::size_t i = 0; i + N <= words.size(); ++i) {
            auto g = join(words, i, N, U" ");
            bool earlier = false;
            for (std::size_t j = 0; j < i && !earlier; ++j) earlier = join(words, j, N, U" ") == g;
            if (earlier) continue;
            std::size_t count = 0;
            for (std::size_t j = i; j + N <= words.size(); ++j) count += join(words, j, N, U" ") == g;
            if (count > best_count) {
                best_count = count;
                best_len = g.size();
            }
        }
        if (best_count >= 2) st.top_ngram_char_frac[n] = static_cast<double>(best_count * best_len) / len;
    }
    for (int n = 5; n <= 10; ++n) {
        auto N = static_cast<std::size_t>(n);
        std::vector<U32> seen;
        std::size_t rep = 0;
        std::size_t i = 0;
        while (i + N <= words.size()) {
            auto g = join(words, i, N, U"");
            if (std::find(seen.begin(), seen.end(), g) != seen.end()) {
                rep += g.size();
                i += N;
            } else {
                seen.push_back(g);
                i += 1;
            }
        }
        st.dup_ngram_char_frac[n] = static_cast<double>(rep) / len;
    }
    return st;
}

std::string repetition_decision(const RepetitionStats& s, const RepetitionLimits& l) {
    if (s.dup_para_frac > l.dup_para_frac) return "gopher_rep:dup_para_frac";
    if (s.dup_para_char_frac > l.dup_para_char_frac) return "gopher_rep:dup_para_char_frac";
    if (s.dup_line_frac > l.dup_line_frac) return "gopher_rep:dup_line_frac";
    if (s.dup_line_char_frac > l.dup_line_char_frac) return "gopher_rep:dup_line_char_frac";
    for (const auto& [n, v] : l.top) {
        if (s.top_ngram_char_frac.at(n) > v) return "gopher_rep:top_" + std::to_string(n) + "_gram";
    }
    for (const auto& [n, v] : l.dup) {
        if (s.dup_ngram_char_frac.at(n) > v) return "gopher_rep:dup_" + std::to_string(n) + "_gram";
    }
    return "";
}

QualityStats quality_stats(std::string_view text, const std::set<std::string>& stop_words) {
    QualityStats st;
    const U32 s = nfc32(text);
    auto words = split_ws(s);
    st.words = words.size();
    std::set<U32> stops;
    for (const auto& w : stop_words) stops.insert(fold(nfc32(w)));
    std::size_t total_len = 0, alpha_words = 0;
    for (const auto& w : words) {
        bool all_ps = std::all_of(w.begin(), w.end(), punct_or_symbol);
        if (!all_ps) {
            ++st.non_symbol_words;
            total_len += w.size();
        }
        if (std::any_of(w.begin(), w.end(), alpha)) ++alpha_words;
        std::size_t b = 0, e = w.size();
        while (b < e && punct_or_symbol(w[b])) ++b;
        while (e > b && punct_or_symbol(w[e - 1])) --e;
        if (e > b && stops.count(fold(w.substr(b, e - b)))) ++st.stop_word_hits;
    }
    if (st.non_symbol_words) st.mean_word_length = static_cast<double>(total_len) / static_cast<double>(st.non_symbol_words);
    if (st.words) {
        auto hashes = static_cast<double>(std::count(s.begin(), s.end(), U'#'));
        auto ell = static_cast<double>(count_sub(s, U"...") + count_sub(s, U"…"));
        st.symbol_ratio = std::max(hashes, ell) / static_cast<double>(st.words);
        st.alpha_word_frac = static_cast<double>(alpha_words) / static_cast<double>(st.words);
    }
    std::vector<U32> lines;
    U32 cur;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (line_break(s[i])) {
            lines.push_back(cur);
            cur.clear();
            if (s[i] == U'\r' && i + 1 < s.size() && s[i + 1] == U'\n') ++i;
        } else {
            cur.push_back(s[i]);
        }
    }
    if (!cur.empty()) lines.push_back(cur);
    if (!lines.empty()) {
        std::size_t bullets = 0, ell = 0;
        for (const auto& line : lines) {
            std::size_t b = 0;
            while (b < line.size() && ws(line[b])) ++b;
            if (b < line.size() && (line[b] == U'•' || line[b] == U'-')) ++bullets;
            std::size_t e = line.size();
            while (e > 0 && ws(line[e - 1])) --e;
            U32 t = line.substr(0, e);
            if ((t.size() >= 3 && t.substr(t.size() - 3) == U"...") || (!t.empty() && t.back() == U'…')) ++ell;
        }
        st.bullet_line_frac = static_cast<double>(bullets) / static_cast<double>(lines.size());
        st.ellipsis_line_frac = static_cast<double>(ell) / static_cast<double>(lines.size());
    }
    return st;
}

std::string quality_decision(const QualityStats& s, const QualityLimits& l) {
    if (s.non_symbol_words < l.min_words || s.non_symbol_words > l.max_words) return "gopher_quality:word_count";
    if (s.non_symbol_words > 0 && (s.mean_word_length < l.mean_len_min || s.mean_word_length > l.mean_len_max)) {
        return "gopher_quality:mean_word_length";
    }
    if (s.symbol_ratio > l.symbol_ratio_max) return "gopher_quality:symbol_ratio";
    if (s.bullet_line_frac > l.bullet_max) return "gopher_quality:bullet_lines";
    if (s.ellipsis_line_frac > l.ellipsis_max) return "gopher_quality:ellipsis_lines";
    if (s.words > 0 && s.alpha_word_frac < l.alpha_min) return "gopher_quality:alpha_words";
    if (s.stop_word_hits < l.stop_words_min) return "gopher_quality:stop_words";
    return "";
}

FineWebStats fineweb_stats(std::string_view text, std::size_t short_chars, std::u32string_view terminal) {
    FineWebStats st;
    const U32 s = nfc32(text);
    auto newlines = static_cast<std::size_t>(std::count(s.begin(), s.end(), U'\n'));
    std::vector<U32> lines;
    for (auto& l : split_on(s, U'\n')) {
        if (std::any_of(l.begin(), l.end(), [](char32_t c) { return !ws(c); })) lines.push_back(l);
    }
    st.lines = lines.size();
    if (lines.empty()) return st;
    std::size_t shorts = 0, punct = 0, words = 0;
    for (const auto& l : lines) {
        shorts += l.size() < short_chars;
        std::size_t e = l.size();
        while (e > 0 && ws(l[e - 1])) --e;
        punct += terminal.find(l[e - 1]) != std::u32string_view::npos;
        words += split_ws(l).size();
    }
    auto [dn, dc] = repeats(lines);
    (void)dn;
    const auto n = static_cast<double>(lines.size());
    st.short_line_frac = static_cast<double>(shorts) / n;
    st.line_punct_frac = static_cast<double>(punct) / n;
    st.char_dup_frac = static_cast<double>(dc) / static_cast<double>(s.size() - newlines);
    st.new_line_ratio = static_cast<double>(newlines) / static_cast<double>(words);
    return st;
}

std::string fineweb_decision(const FineWebStats& s, const FineWebLimits& l) {
    if (s.lines == 0) return "fineweb:empty";
    if (s.short_line_frac > l.short_max) return "fineweb:short_line_frac";
    if (s.line_punct_frac < l.punct_min) return "fineweb:line_punct_frac";
    if (s.char_dup_frac > l.char_dup_max) return "fineweb:char_dup_frac";
    if (s.new_line_ratio > l.newline_max) return "fineweb:newline_ratio";
    return "";
}

std::vector<std::vector<std::size_t>> components_bfs(std::size_t n,
                                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto [a, b] : edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    std::vector<bool> seen(n, false);
    std::vector<std::vector<std::size_t>> out;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s]) continue;
        std::vector<std::size_t> comp;
        std::deque<std::size_t> q{s};
        seen[s] = true;
        while (!q.empty()) {
            auto v = q.front();
            q.pop_front();
            comp.push_back(v);
            for (auto w : adj[v]) {
                if (!seen[w]) {
                    seen[w] = true;
                    q.push_back(w);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

std::vector<std::vector<std::size_t>> components_closure(std::size_t n,
                                                         const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
    std::vector<std::vector<char>> r(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i) r[i][i] = 1;
    for (auto [a, b] : edges) r[a][b] = r[b][a] = 1;
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!r[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (r[k][j]) r[i][j] = 1;
            }
        }
    }
    std::vector<std::vector<std::size_t>> out;
    std::vector<bool> placed(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        if (placed[i]) continue;
        std::vector<std::size_t> comp;
        for (std::size_t j = 0; j < n; ++j) {
            if (r[i][j]) {
                comp.push_back(j);
                placed[j] = true;
            }
        }
        out.push_back(std::move(comp));
    }
    return out;
}

std::size_t whitespace_tokens(std::string_view text) {
    icu::UnicodeString u = icu::UnicodeString::fromUTF8(icu::StringPiece(text.data(), static_cast<int32_t>(text.size())));
    std::size_t n = 0;
    bool in = false;
    for (int32_t i = 0; i < u.length(); i = u.moveIndex32(i, 1)) {
        bool w = ws(static_cast<char32_t>(u.char32At(i)));
        if (!w && !in) ++n;
        in = !w;
    }
    return n;
}

std::size_t vocabulary_tokens(std::string_view text, const std::vector<std::string>& vocab) {
    std::size_t n = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t best = 0;
        for (const auto& v : vocab) {
            if (v.size() > best && text.substr(pos, v.size()) == v) best = v.size();
        }
        if (best == 0) {
            auto lead = static_cast<unsigned char>(text[pos]);
            best = lead < 0x80 ? 1 : lead < 0xE0 ? 2 : lead < 0xF0 ? 3 : 4;
            best = std::min(best, text.size() - pos);
        }
        pos += best;
        ++n;
    }
    return n;
}

WarcScan scan_warc(std::string_view bytes) {
    WarcScan out;
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        if (bytes.substr(pos, 5) != "WARC/") {
            out.truncated = true;
            break;
        }
        auto head_end = bytes.find("\r\n\r\n", pos);
        if (head_end == std::string_view::npos) {
            out.truncated = true;
            break;
        }
        auto head = bytes.substr(pos, head_end - pos);
        std::size_t length = 0;
        bool found = false;
        std::size_t ls = 0;
        while (ls < head.size()) {
            auto le = head.find("\r\n", ls);
            if (le == std::string_view::npos) le = head.size();
            auto line = head.substr(ls, le - ls);
            std::string lower;
            for (char c : line.substr(0, 15)) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
            if (lower == "content-length:") {
                auto v = line.substr(15);
                while (!v.empty() && v.front() == ' ') v.remove_prefix(1);
                for (char c : v) length = length * 10 + static_cast<std::size_t>(c - '0');
                found = true;
            }
            ls = le + 2;
        }
        std::size_t end = head_end + 4 + length + 4;
        if (!found || end > bytes.size()) {
            out.truncated = true;
            break;
        }
        out.records.push_back({pos, head_end + 4 - pos, length});
        pos = end;
    }
    return out;
}

}  // namespace corpus_forge::fixtures::oracle
