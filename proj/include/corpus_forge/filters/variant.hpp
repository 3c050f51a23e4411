// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus_forge/model.hpp"

namespace corpus_forge::filters {

/// (pt-PT term, pt-BR term) pairs. Terms are stored NFC + case-folded with
/// single spaces.
struct VariantLexicon {
    std::vector<std::pair<std::string, std::string>> pairs;

    /// Throws ConfigError on an empty term or a pair whose sides are equal.
    void validate() const;
    [[nodiscard]] VariantLexicon swapped() const;
};

VariantLexicon default_variant_lexicon();
/// `pt_pt<TAB>pt_br` per line; blank lines and '#' comments are skipped.
VariantLexicon load_variant_lexicon(const std::filesystem::path& path);
VariantLexicon make_variant_lexicon(std::vector<std::pair<std::string, std::string>> pairs);

struct VariantHits {
    std::size_t pt_pt = 0;
    std::size_t pt_br = 0;
};

/// Whole-word matches, case-folded. A term matches only where it is not
/// adjacent to a letter, digit or hyphen.
VariantHits variant_hits(std::string_view text, const VariantLexicon& lex);
/// (pt_pt - pt_br) / max(1, pt_pt + pt_br), in [-1, 1].
double variant_score(std::string_view text, const VariantLexicon& lex);

struct VariantRule {
    VariantLexicon lexicon = default_variant_lexicon();
    /// When set, documents scoring below this are dropped as `variant:pt_br`.
    std::optional<double> drop_below;
};

/// Records the score under annotations["variant"]; drops only when the rule
/// has a threshold.
Verdict variant_filter(Document& doc, const VariantRule& rule);

}  // namespace corpus_forge::filters
