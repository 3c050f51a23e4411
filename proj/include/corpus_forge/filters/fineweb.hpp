// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "corpus_forge/model.hpp"

namespace corpus_forge::filters {

struct FineWebQualityConfig {
    double short_line_frac_max = 0.67;
    std::size_t short_line_chars = 30;
    double char_dup_frac_max = 0.01;
    double line_punct_frac_min = 0.12;
    double new_line_ratio_max = 0.3;
    /// A line "ends in terminal punctuation" when its last non-whitespace
    /// code point is one of these.
    std::u32string terminal_punctuation = U".!?…\"'”»";

    void validate() const;
};

/// Computed over the non-blank '\n'-separated lines of the NFC text.
struct FineWebQualityStats {
    std::size_t lines = 0;
    /// Lines with fewer than `short_line_chars` code points.
    double short_line_frac = 0.0;
    double line_punct_frac = 0.0;
    /// Code points in lines repeating an earlier line, over all code points
    /// other than '\n'.
    double char_dup_frac = 0.0;
    /// '\n' count per whitespace-separated word.
    double new_line_ratio = 0.0;
};

FineWebQualityStats fineweb_quality_stats(std::string_view text, const FineWebQualityConfig& cfg);
/// Check order: empty, short lines, line punctuation, duplicated line
/// characters, newline ratio.
Verdict fineweb_quality(const Document& doc, const FineWebQualityConfig& cfg);

}  // namespace corpus_forge::filters
