// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Brute-force reference implementations. They are written against the rule
// text, not the production code, and favor obviousness over speed.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace corpus_forge::fixtures::oracle {

double exact_jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);
/// Word n-gram shingle set of whitespace-collapsed, NFC, case-folded text.
std::set<std::string> word_shingles(std::string_view text, std::size_t n);

/// 1 - (1 - s^r)^b
double lsh_probability(double s, std::size_t rows, std::size_t bands);

// ---- repetition -------------------------------------------------------------

struct RepetitionStats {
    double dup_para_frac = 0.0;
    double dup_para_char_frac = 0.0;
    double dup_line_frac = 0.0;
    double dup_line_char_frac = 0.0;
    std::map<int, double> top_ngram_char_frac;
    std::map<int, double> dup_ngram_char_frac;
};

RepetitionStats repetition_stats(std::string_view text);

struct RepetitionLimits {
    double dup_para_frac = 0.30;
    double dup_para_char_frac = 0.20;
    double dup_line_frac = 0.30;
    double dup_line_char_frac = 0.20;
    std::map<int, double> top{{2, 0.20}, {3, 0.18}, {4, 0.16}};
    std::map<int, double> dup{{5, 0.15}, {6, 0.14}, {7, 0.13}, {8, 0.12}, {9, 0.11}, {10, 0.10}};
};

/// Reason code of the first failed check, or "" to keep.
std::string repetition_decision(const RepetitionStats& s, const RepetitionLimits& l = {});

// ---- quality ----------------------------------------------------------------

struct QualityStats {
    std::size_t words = 0;
    std::size_t non_symbol_words = 0;
    /// Meaningless when non_symbol_words == 0.
    double mean_word_length = 0.0;
    double symbol_ratio = 0.0;
    double bullet_line_frac = 0.0;
    double ellipsis_line_frac = 0.0;
    double alpha_word_frac = 0.0;
    std::size_t stop_word_hits = 0;
};

QualityStats quality_stats(std::string_view text, const std::set<std::string>& stop_words);

struct QualityLimits {
    std::size_t min_words = 50;
    std::size_t max_words = 100000;
    double mean_len_min = 3.0;
    double mean_len_max = 10.0;
    double symbol_ratio_max = 0.10;
    double bullet_max = 0.90;
    double ellipsis_max = 0.30;
    double alpha_min = 0.80;
    std::size_t stop_words_min = 2;
};

std::string quality_decision(const QualityStats& s, const QualityLimits& l = {});

struct FineWebStats {
    std::size_t lines = 0;
    double short_line_frac = 0.0;
    double line_punct_frac = 0.0;
    double char_dup_frac = 0.0;
    double new_line_ratio = 0.0;
};

FineWebStats fineweb_stats(std::string_view text, std::size_t short_chars = 30,
                           std::u32string_view terminal = U".!?…\"'”»");

struct FineWebLimits {
    double short_max = 0.67;
    double punct_min = 0.12;
    double char_dup_max = 0.01;
    double newline_max = 0.3;
};

std::string fineweb_decision(const FineWebStats& s, const FineWebLimits& l = {});

// ---- clustering ---------------------------------------------------------------

/// Connected components by breadth-first search, each sorted, ordered by
/// smallest member. Singletons included.
std::vector<std::vector<std::size_t>> components_bfs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);
/// Same partition via boolean transitive closure (Warshall).
std::vector<std::vector<std::size_t>> components_closure(std::size_t n,
                                                         const std::vector<std::pair<std::size_t, std::size_t>>& edges);

// ---- tokens -----------------------------------------------------------------

std::size_t whitespace_tokens(std::string_view text);
/// Greedy longest match over code points; unmatched code points count one.
std::size_t vocabulary_tokens(std::string_view text, const std::vector<std::string>& vocab);

// ---- WARC -------------------------------------------------------------------

struct WarcBoundary {
    std::size_t offset = 0;
    std::size_t header_bytes = 0;
    std::size_t content_length = 0;
};

struct WarcScan {
    std::vector<WarcBoundary> records;
    bool truncated = false;
};

/// Walks version lines and Content-Length headers without a parser.
WarcScan scan_warc(std::string_view bytes);

}  // namespace corpus_forge::fixtures::oracle
