// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "corpus_forge/io.hpp"
#include "corpus_forge/model.hpp"

namespace corpus_forge::posttrain {

struct Message {
    std::string role;  // system | user | assistant
    std::string content;

    friend bool operator==(const Message&, const Message&) = default;
};

struct SftEntry {
    std::string id;
    std::string source;
    std::vector<Message> messages;
    std::string language;
    std::optional<double> quality_score;
    std::uint64_t token_count = 0;

    friend bool operator==(const SftEntry&, const SftEntry&) = default;
};

/// `{id, source, messages:[{role, content}], lang, quality_score?, tokens}`.
Json entry_to_json(const SftEntry& e);
/// Throws DataError on missing or mistyped fields. Structural rules are
/// checked separately by check_entry.
SftEntry entry_from_json(const Json& j);

/// Keep, or Drop with `posttrain:invalid_entry` (roles must be an optional
/// system head followed by alternating user/assistant, starting with user)
/// or `posttrain:empty_message`.
Verdict check_entry(const SftEntry& e);

/// Sum of per-message token counts.
std::uint64_t entry_tokens(const SftEntry& e, const Tokenizer& tok);

struct TagPair {
    std::string open;
    std::string close;
};

std::vector<TagPair> default_trace_tags();

/// Removes nested open...close spans; an unmatched opener removes through
/// the end. Whitespace around a removed span becomes one '\n', or nothing
/// at either end of the text.
std::string strip_traces(std::string_view content, std::span<const TagPair> tags);
/// Applies strip_traces to assistant messages only.
SftEntry strip_reasoning_traces(SftEntry e, std::span<const TagPair> tags);

std::vector<std::string> default_self_ref_patterns();
/// Drop `posttrain:self_ref` when an assistant message contains a pattern
/// (case-folded substring). Throws ConfigError on an empty pattern list.
Verdict filter_self_referential(const SftEntry& e, std::span<const std::string> patterns);

/// Keep when unscored or score >= min_score; `posttrain:low_quality` below;
/// `posttrain:score_out_of_range` for scores outside [1, 6].
Verdict quality_verdict(const SftEntry& e, double min_score);

struct QualityFilterResult {
    std::vector<SftEntry> kept;
    /// Entries with a score outside [1, 6].
    std::vector<SftEntry> quarantined;
    std::uint64_t unscored = 0;
    StageStats stats;
};

/// Throws ConfigError unless min_score is in [1, 6].
QualityFilterResult filter_quality_score(std::vector<SftEntry> entries, double min_score = 5.0);

/// NFC, whitespace-collapsed, trimmed user turns joined by U+001F.
std::string prompt_key(const SftEntry& e);

/// Streaming first-occurrence filter on prompt_key.
class PromptDeduper {
   public:
    /// True the first time a prompt key is seen.
    bool admit(const SftEntry& e);

   private:
    std::unordered_set<std::string> seen_;
};

std::vector<SftEntry> dedup_by_prompt(std::vector<SftEntry> entries, StageStats* stats = nullptr);

/// Deterministic per-entry coin: uniform(hash(seed, id)) < p.
bool unbox_selected(std::string_view id, double p, std::uint64_t seed);
/// Replaces every `\boxed{X}` with X. nullopt when braces do not balance.
std::optional<std::string> unbox_text(std::string_view s);

struct UnboxResult {
    SftEntry entry;
    bool selected = false;
    bool changed = false;
    /// Selected, but the last assistant message had unbalanced braces.
    bool unbalanced = false;
};

/// Throws ContractError unless p is in [0, 1].
UnboxResult unbox_math(SftEntry e, double p, std::uint64_t seed);

/// Drop `posttrain:too_long` iff token_count > max_tokens.
Verdict filter_long_context(const SftEntry& e, std::uint64_t max_tokens = 32768);

struct RepoMeta {
    std::string repo;
    std::uint64_t stars = 0;
    std::uint64_t forks = 0;
};

/// Keep iff stars >= min_stars and forks >= min_forks.
Verdict filter_code_repos(const RepoMeta& m, std::uint64_t min_stars = 500, std::uint64_t min_forks = 100);

/// Field mapping from a raw dataset row to an SftEntry. Either
/// `messages_field` (a list of {role, content} objects) or the
/// prompt/response pair is used.
struct SourceAdapter {
    std::string name;
    std::string id_field = "id";
    std::string messages_field = "messages";
    std::string role_field = "role";
    std::string content_field = "content";
    std::map<std::string, std::string> role_map{{"human", "user"}, {"gpt", "assistant"}, {"model", "assistant"}};
    std::optional<std::string> system_field;
    std::optional<std::string> prompt_field;
    std::optional<std::string> response_field;
    std::optional<std::string> score_field = "quality_score";
    std::optional<std::string> lang_field = "lang";
    std::string default_lang = "por";
};

/// `[[adapter]]` tables in TOML.
std::vector<SourceAdapter> load_adapters(const std::filesystem::path& path);
/// Throws DataError on rows the mapping cannot read. `fallback_id` is used
/// when the row has no id.
SftEntry adapt_row(const Json& row, const SourceAdapter& a, const Tokenizer& tok, std::string_view fallback_id);

std::vector<SftEntry> read_entries(const std::filesystem::path& path);
void write_entries(const std::filesystem::path& path, std::span<const SftEntry> entries);

}  // namespace corpus_forge::posttrain
