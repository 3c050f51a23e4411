// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>

namespace corpus_forge::extract {

struct ExtractionConfig {
    std::size_t min_line_chars = 10;
    bool drop_duplicate_lines = true;
    double link_density_max = 0.5;
    std::set<std::string> boilerplate_tags{"script", "style", "nav", "header", "footer", "aside", "form", "noscript"};

    /// Throws ConfigError when link_density_max is outside [0, 1].
    void validate() const;
};

/// Main-content text: one line per block-level element in document order.
/// Boilerplate subtrees, comments and `<head>` are skipped; blocks whose
/// anchor-text share exceeds `link_density_max` are removed; entities are
/// decoded. A decoded `<` that would read as a tag opener is followed by a
/// space so the output never contains tag-like text.
std::string extract_main_text(std::string_view html, const ExtractionConfig& cfg);

/// Drops lines with fewer than `min_line_chars` non-whitespace code points
/// and, optionally, repeated lines (compared after trimming trailing
/// whitespace). Survivors keep their order and lose trailing whitespace.
std::string clean_lines(std::string_view text, const ExtractionConfig& cfg);

/// Decodes named and numeric character references.
std::string decode_entities(std::string_view s);

}  // namespace corpus_forge::extract
