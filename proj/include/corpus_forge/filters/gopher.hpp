// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>

#include "corpus_forge/model.hpp"

namespace corpus_forge::filters {

struct GopherRepetitionConfig {
    double dup_line_frac_max = 0.30;
    double dup_paragraph_frac_max = 0.30;
    double dup_line_char_frac_max = 0.20;
    double dup_paragraph_char_frac_max = 0.20;
    std::map<int, double> top_ngram_char_frac_max{{2, 0.20}, {3, 0.18}, {4, 0.16}};
    std::map<int, double> dup_ngram_char_frac_max{{5, 0.15}, {6, 0.14}, {7, 0.13}, {8, 0.12}, {9, 0.11}, {10, 0.10}};

    void validate() const;
};

/// Character fractions are relative to the code-point length of the NFC
/// text. Paragraphs split on runs of two or more '\n' (after stripping),
/// lines on runs of '\n'.
struct GopherRepetitionStats {
    double dup_para_frac = 0.0;
    double dup_para_char_frac = 0.0;
    double dup_line_frac = 0.0;
    double dup_line_char_frac = 0.0;
    /// Mass of the most frequent n-gram (count x length); 0 unless it occurs
    /// at least twice. Ties go to the n-gram seen first.
    std::map<int, double> top_ngram_char_frac;
    /// Characters covered by repeated n-grams, scanning left to right and
    /// jumping past each repeat.
    std::map<int, double> dup_ngram_char_frac;
};

GopherRepetitionStats gopher_repetition_stats(std::string_view text, const GopherRepetitionConfig& cfg);
/// Drops on the first statistic above its bound, in the order: paragraph
/// count, paragraph chars, line count, line chars, top n-grams, duplicate
/// n-grams. Empty text is kept.
Verdict gopher_repetition(const Document& doc, const GopherRepetitionConfig& cfg);

std::set<std::string> default_portuguese_stop_words();

struct GopherQualityConfig {
    std::size_t min_words = 50;
    std::size_t max_words = 100000;
    double mean_word_len_min = 3.0;
    double mean_word_len_max = 10.0;
    double symbol_word_ratio_max = 0.10;
    double bullet_line_frac_max = 0.90;
    double ellipsis_line_frac_max = 0.30;
    double alpha_word_frac_min = 0.80;
    std::size_t min_stop_word_hits = 2;
    std::set<std::string> stop_words = default_portuguese_stop_words();

    void validate() const;
};

struct GopherQualityStats {
    std::size_t words = 0;
    /// Words with at least one character outside Unicode P* and S*.
    std::size_t non_symbol_words = 0;
    /// Mean code-point length of non-symbol words; NaN when there are none
    /// (the range check is then skipped).
    double mean_word_length = 0.0;
    /// max('#' count, ellipsis count) per word.
    double symbol_ratio = 0.0;
    double bullet_line_frac = 0.0;
    double ellipsis_line_frac = 0.0;
    double alpha_word_frac = 0.0;
    /// Words equal to a stop word after case folding and trimming edge
    /// punctuation.
    std::size_t stop_word_hits = 0;
};

GopherQualityStats gopher_quality_stats(std::string_view text, const GopherQualityConfig& cfg);
Verdict gopher_quality(const Document& doc, const GopherQualityConfig& cfg);

}  // namespace corpus_forge::filters
