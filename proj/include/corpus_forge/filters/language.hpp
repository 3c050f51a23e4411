// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpus_forge/io.hpp"
#include "corpus_forge/model.hpp"

namespace corpus_forge::filters {

inline constexpr std::size_t kMaxNgram = 3;

/// Character n-gram model (n = 1..3) with add-k smoothing. For each order n
/// the seen n-grams plus one "unseen" bucket carry total probability 1.
struct LangProfile {
    std::string language;  // ISO-639-3
    std::unordered_map<std::string, double> ngram_log_probs;
    std::array<double, kMaxNgram> unseen_log_prob{};
    double smoothing = 0.5;

    [[nodiscard]] double log_prob(const std::string& ngram, std::size_t order) const;
};

struct LabeledText {
    std::string text;
    std::string language;
};

/// One profile per language, sorted by language code. Throws ConfigError on
/// an empty corpus or non-positive smoothing.
std::vector<LangProfile> train_lang_profiles(std::span<const LabeledText> corpus, double smoothing = 0.5);

/// Case-folded, letters-only, space-padded form the n-grams are taken from.
std::u32string ngram_normalize(std::string_view text);

struct LanguageResult {
    std::string language;
    double confidence = 0.0;
    /// Fewer than 20 code points of input; the guess is unreliable.
    bool too_short = false;
};

/// Argmax of the per-word log-likelihood; confidence is the winner's
/// softmax share. Throws ContractError on an empty profile set.
LanguageResult identify_language(std::string_view text, std::span<const LangProfile> profiles);

struct LanguageRule {
    std::string accept = "por";
    double min_confidence = 0.65;
};

/// Identifies the language, records it on `doc` and applies the rule.
Verdict language_filter(Document& doc, std::span<const LangProfile> profiles, const LanguageRule& rule);

Json profiles_to_json(std::span<const LangProfile> profiles);
std::vector<LangProfile> profiles_from_json(const Json& j);
void save_profiles(const std::filesystem::path& path, std::span<const LangProfile> profiles);
std::vector<LangProfile> load_profiles(const std::filesystem::path& path);

/// Sentences bundled with the library for por, eng and spa.
std::span<const LabeledText> builtin_language_corpus();
/// Profiles trained on builtin_language_corpus().
const std::vector<LangProfile>& builtin_profiles();

}  // namespace corpus_forge::filters
