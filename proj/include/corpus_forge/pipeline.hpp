// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "corpus_forge/dedup.hpp"
#include "corpus_forge/extract.hpp"
#include "corpus_forge/filters/fineweb.hpp"
#include "corpus_forge/filters/gopher.hpp"
#include "corpus_forge/filters/language.hpp"
#include "corpus_forge/filters/url.hpp"
#include "corpus_forge/filters/variant.hpp"
#include "corpus_forge/io.hpp"
#include "corpus_forge/model.hpp"
#include "corpus_forge/pii.hpp"
#include "corpus_forge/split.hpp"

namespace corpus_forge::pipeline {

/// Registered stage names in their only valid relative order.
const std::vector<std::string>& registered_stages();
const std::vector<std::string>& default_stages();
/// Stages that act on one document at a time.
bool is_document_stage(std::string_view name);

struct PipelineConfig {
    std::string run_id = "run";
    /// Paths or glob patterns; relative ones resolve against base_dir.
    std::vector<std::string> input;
    std::filesystem::path base_dir;
    std::filesystem::path output_dir = "out";
    std::size_t workers = 1;
    std::uint64_t seed = 0;
    TokenizerSpec tokenizer;
    std::vector<std::string> stages = default_stages();
    /// Keep documents in memory between document stages instead of writing
    /// one JSONL file per stage.
    bool fused = false;

    std::optional<Date> processing_date;
    int embargo_months = 12;
    filters::UrlRules url;
    extract::ExtractionConfig extract;
    filters::LanguageRule language;
    /// Empty means the built-in profiles.
    std::vector<filters::LangProfile> language_profiles;
    filters::GopherRepetitionConfig gopher_repetition;
    filters::GopherQualityConfig gopher_quality;
    filters::FineWebQualityConfig fineweb;
    filters::VariantRule variant;
    bool pii_fix_encoding = true;
    pii::MojibakeTable mojibake = pii::default_mojibake_table();
    dedup::DedupConfig dedup;
    std::size_t dedup_max_records = 1 << 20;
    split::SplitThresholds split_thresholds;
    std::optional<split::QualityScoreTable> scores;
    std::set<split::QualitySplit> split_selection = split::default_selection();
    bool fallback_scorer = false;

    /// Throws ConfigError naming the violated invariant.
    void validate() const;
};

/// Parses a TOML config. Files it references (blocklist, lexicon,
/// mojibake table, profiles, vocabulary, scores) are loaded here so that
/// every error surfaces before processing starts.
PipelineConfig load_pipeline_config(const std::filesystem::path& path);

/// Canonical resolved config. Excludes workers, output_dir and fused, none
/// of which may change outputs.
Json config_to_json(const PipelineConfig& cfg);
std::string sha256_hex(std::string_view data);
std::string config_hash(const PipelineConfig& cfg);

/// Expanded, de-duplicated, sorted input files. Throws ConfigError when a
/// pattern matches nothing.
std::vector<std::filesystem::path> resolve_inputs(const PipelineConfig& cfg);
/// `<index>-<sanitized file name>`.
std::string shard_name(std::size_t index, const std::filesystem::path& input);

struct RunReport {
    std::string run_id;
    std::string config_hash;
    std::vector<StageStats> stages;
    double wall_time_s = 0.0;
    std::vector<std::string> warnings;
    std::size_t shards = 0;
    /// split name (or "output" without a split stage) -> totals
    std::map<std::string, split::SplitTotals> outputs;
};

Json run_report_to_json(const RunReport& r);
RunReport run_report_from_json(const Json& j);

/// Applies one document stage. Returns the verdict; the document may be
/// rewritten in place (text, language, annotations).
class DocumentStages {
   public:
    explicit DocumentStages(const PipelineConfig& cfg);
    Verdict apply(std::string_view stage, Document& doc) const;

   private:
    const PipelineConfig& cfg_;
    const std::vector<filters::LangProfile>* profiles_;
};

struct RunOptions {
    /// Skip shards whose done marker matches the config hash.
    bool resume = true;
};

/// Runs the configured chain over every input shard.
RunReport run_pipeline(const PipelineConfig& cfg, const RunOptions& opts = {});

}  // namespace corpus_forge::pipeline
