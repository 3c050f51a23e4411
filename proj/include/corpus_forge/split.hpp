// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "corpus_forge/io.hpp"
#include "corpus_forge/model.hpp"

namespace corpus_forge::split {

enum class QualitySplit { High, Medium, Low, Unscored };

std::string_view split_name(QualitySplit s);
std::optional<QualitySplit> parse_split(std::string_view s);
/// Throws ConfigError on unknown names.
std::set<QualitySplit> parse_split_set(std::span<const std::string> names);

struct SplitThresholds {
    double high_min = 0.75;
    double medium_min = 0.40;

    void validate() const;
};

/// Scores in [0, 1] from an external classifier, or class labels passed
/// through unchanged. A label wins over a score for the same id.
struct QualityScoreTable {
    std::string source_name;
    std::unordered_map<std::string, double> scores;
    std::unordered_map<std::string, QualitySplit> labels;
};

/// JSONL `{id, score}` or `{id, label}`. Throws DataError on scores
/// outside [0, 1], unknown labels or repeated ids.
QualityScoreTable load_score_table(const std::filesystem::path& path, std::string source_name = {});

QualitySplit assign_quality(double score, const SplitThresholds& t);
QualitySplit assign_quality(const std::string& doc_id, const QualityScoreTable& table, const SplitThresholds& t);

/// Name recorded in reports when the fallback scorer is used.
inline constexpr std::string_view kFallbackScorerName = "fallback:gopher-composite (fixture testing only)";
/// Heuristic score in [0, 1]: mean of alphabetic-word fraction, stop-word
/// density, 1 - duplicated-line character fraction and terminal-punctuation
/// line fraction. Not a quality model.
double fallback_score(std::string_view text);

std::set<QualitySplit> default_selection();

struct SplitTotals {
    std::uint64_t docs = 0;
    std::uint64_t tokens = 0;

    friend bool operator==(const SplitTotals&, const SplitTotals&) = default;
};

struct SplitOutcome {
    std::map<QualitySplit, SplitTotals> totals;
    StageStats stats;
};

/// Routes documents of one shard into `<out_dir>/<split>/<shard>.jsonl` for
/// selected splits and `<out_dir>/quarantine/<shard>.jsonl` for unscored
/// ones. Unselected scored splits are counted but not written.
class SplitRouter {
   public:
    SplitRouter(std::filesystem::path out_dir, std::string shard_name, std::set<QualitySplit> selected,
                Tokenizer tokenizer);
    ~SplitRouter();
    SplitRouter(const SplitRouter&) = delete;
    SplitRouter& operator=(const SplitRouter&) = delete;

    /// Records the split under annotations["split"].
    void route(Document doc, QualitySplit split);
    SplitOutcome finish();

   private:
    JsonlWriter& writer_for(const std::string& dir);

    std::filesystem::path out_dir_;
    std::string shard_name_;
    std::set<QualitySplit> selected_;
    Tokenizer tokenizer_;
    std::map<std::string, std::unique_ptr<JsonlWriter>> writers_;
    SplitOutcome outcome_;
};

SplitOutcome materialize_splits(std::span<const Document> docs, std::span<const QualitySplit> assignments,
                                const std::set<QualitySplit>& selected, const std::filesystem::path& out_dir,
                                std::string_view shard_name, const Tokenizer& tokenizer);

}  // namespace corpus_forge::split
