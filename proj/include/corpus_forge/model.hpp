// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace corpus_forge {

using Date = std::chrono::year_month_day;

/// Parses `YYYY-MM-DD`, or the date part of an ISO-8601 datetime.
std::optional<Date> parse_iso_date(std::string_view s);
std::string format_iso_date(Date d);

/// One text record flowing through the pipeline.
struct Document {
    std::string id;
    std::optional<std::string> source_url;
    std::optional<Date> capture_date;
    std::string text;
    /// ISO-639-3 code; `language_confidence` is set exactly when this is.
    std::optional<std::string> language;
    std::optional<double> language_confidence;
    /// stage name -> annotation
    std::map<std::string, std::string> annotations;

    friend bool operator==(const Document&, const Document&) = default;
};

enum class Decision { Keep, Drop };

// Closed enumeration of drop reasons. Anything else is a programming error.
namespace reason {
inline constexpr std::string_view ingest_not_document = "ingest:not_document";
inline constexpr std::string_view embargo_too_recent = "embargo:too_recent";
inline constexpr std::string_view embargo_missing_date = "embargo:missing_date";
inline constexpr std::string_view url_malformed = "url:malformed";
inline constexpr std::string_view url_br_domain = "url:br_domain";
inline constexpr std::string_view url_blocklist = "url:blocklist";
inline constexpr std::string_view extract_empty = "extract:empty";
inline constexpr std::string_view lang_too_short = "lang:too_short";
inline constexpr std::string_view lang_not_target = "lang:not_target";
inline constexpr std::string_view lang_low_confidence = "lang:low_confidence";
inline constexpr std::string_view gopher_rep_dup_para_frac = "gopher_rep:dup_para_frac";
inline constexpr std::string_view gopher_rep_dup_para_char_frac = "gopher_rep:dup_para_char_frac";
inline constexpr std::string_view gopher_rep_dup_line_frac = "gopher_rep:dup_line_frac";
inline constexpr std::string_view gopher_rep_dup_line_char_frac = "gopher_rep:dup_line_char_frac";
inline constexpr std::string_view gopher_rep_top_2_gram = "gopher_rep:top_2_gram";
inline constexpr std::string_view gopher_rep_top_3_gram = "gopher_rep:top_3_gram";
inline constexpr std::string_view gopher_rep_top_4_gram = "gopher_rep:top_4_gram";
inline constexpr std::string_view gopher_rep_dup_5_gram = "gopher_rep:dup_5_gram";
inline constexpr std::string_view gopher_rep_dup_6_gram = "gopher_rep:dup_6_gram";
inline constexpr std::string_view gopher_rep_dup_7_gram = "gopher_rep:dup_7_gram";
inline constexpr std::string_view gopher_rep_dup_8_gram = "gopher_rep:dup_8_gram";
inline constexpr std::string_view gopher_rep_dup_9_gram = "gopher_rep:dup_9_gram";
inline constexpr std::string_view gopher_rep_dup_10_gram = "gopher_rep:dup_10_gram";
inline constexpr std::string_view gopher_quality_word_count = "gopher_quality:word_count";
inline constexpr std::string_view gopher_quality_mean_word_length = "gopher_quality:mean_word_length";
inline constexpr std::string_view gopher_quality_symbol_ratio = "gopher_quality:symbol_ratio";
inline constexpr std::string_view gopher_quality_bullet_lines = "gopher_quality:bullet_lines";
inline constexpr std::string_view gopher_quality_ellipsis_lines = "gopher_quality:ellipsis_lines";
inline constexpr std::string_view gopher_quality_alpha_words = "gopher_quality:alpha_words";
inline constexpr std::string_view gopher_quality_stop_words = "gopher_quality:stop_words";
inline constexpr std::string_view fineweb_empty = "fineweb:empty";
inline constexpr std::string_view fineweb_short_line_frac = "fineweb:short_line_frac";
inline constexpr std::string_view fineweb_line_punct_frac = "fineweb:line_punct_frac";
inline constexpr std::string_view fineweb_char_dup_frac = "fineweb:char_dup_frac";
inline constexpr std::string_view fineweb_newline_ratio = "fineweb:newline_ratio";
inline constexpr std::string_view variant_pt_br = "variant:pt_br";
inline constexpr std::string_view dedup_near_duplicate = "dedup:near_duplicate";
inline constexpr std::string_view split_high = "split:high";
inline constexpr std::string_view split_medium = "split:medium";
inline constexpr std::string_view split_low = "split:low";
inline constexpr std::string_view split_unscored = "split:unscored";
inline constexpr std::string_view posttrain_invalid_entry = "posttrain:invalid_entry";
inline constexpr std::string_view posttrain_empty_message = "posttrain:empty_message";
inline constexpr std::string_view posttrain_self_ref = "posttrain:self_ref";
inline constexpr std::string_view posttrain_low_quality = "posttrain:low_quality";
inline constexpr std::string_view posttrain_score_out_of_range = "posttrain:score_out_of_range";
inline constexpr std::string_view posttrain_duplicate_prompt = "posttrain:duplicate_prompt";
inline constexpr std::string_view posttrain_too_long = "posttrain:too_long";
inline constexpr std::string_view posttrain_repo_stars = "posttrain:repo_stars";
inline constexpr std::string_view posttrain_repo_forks = "posttrain:repo_forks";

std::span<const std::string_view> all();
bool is_known(std::string_view code);
}  // namespace reason

/// Keep/drop decision of one stage for one item.
struct Verdict {
    Decision decision = Decision::Keep;
    std::string reason;  // empty for Keep
    std::string stage;

    static Verdict keep(std::string_view stage);
    /// Throws ContractError unless `reason_code` is in the closed enumeration.
    static Verdict drop(std::string_view stage, std::string_view reason_code);

    [[nodiscard]] bool kept() const { return decision == Decision::Keep; }
    friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// Per-stage accounting. kept + sum(dropped_by_reason) == seen.
struct StageStats {
    std::string stage;
    std::uint64_t seen = 0;
    std::uint64_t kept = 0;
    std::map<std::string, std::uint64_t> dropped_by_reason;
    std::uint64_t tokens_in = 0;
    std::uint64_t tokens_out = 0;

    void record_keep(std::uint64_t tokens_before, std::uint64_t tokens_after);
    void record_drop(std::string_view reason_code, std::uint64_t tokens_before);
    void record(const Verdict& v, std::uint64_t tokens_before, std::uint64_t tokens_after);

    [[nodiscard]] std::uint64_t dropped() const;
    [[nodiscard]] bool balanced() const { return kept + dropped() == seen; }

    friend bool operator==(const StageStats&, const StageStats&) = default;
};

/// Fieldwise sum. Throws ContractError when stage names differ; an empty
/// stage name acts as the identity's wildcard.
StageStats merge_stats(const StageStats& a, const StageStats& b);

enum class TokenizerKind { Whitespace, Vocabulary };

struct TokenizerSpec {
    TokenizerKind kind = TokenizerKind::Whitespace;
    std::vector<std::string> vocabulary;

    friend bool operator==(const TokenizerSpec&, const TokenizerSpec&) = default;
};

/// Compiled tokenizer. Vocabulary mode counts greedy longest-match
/// segments; a code point no vocabulary entry starts with counts as one.
class Tokenizer {
   public:
    Tokenizer();
    /// Throws ConfigError for Vocabulary kind with an empty vocabulary.
    explicit Tokenizer(const TokenizerSpec& spec);

    [[nodiscard]] std::uint64_t count(std::string_view text) const;
    [[nodiscard]] const TokenizerSpec& spec() const { return spec_; }

   private:
    struct Trie;
    TokenizerSpec spec_;
    std::shared_ptr<const Trie> trie_;
};

std::uint64_t count_tokens(std::string_view text, const TokenizerSpec& spec);

}  // namespace corpus_forge
