// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/split.hpp"

#include <algorithm>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/filters/fineweb.hpp"
#include "corpus_forge/filters/gopher.hpp"

namespace corpus_forge::split {
namespace {

constexpr std::string_view kStage = "split";

std::string_view drop_reason(QualitySplit s) {
    switch (s) {
        case QualitySplit::High: return reason::split_high;
        case QualitySplit::Medium: return reason::split_medium;
        case QualitySplit::Low: return reason::split_low;
        case QualitySplit::Unscored: return reason::split_unscored;
    }
    return reason::split_unscored;
}

}  // namespace

std::string_view split_name(QualitySplit s) {
    switch (s) {
        case QualitySplit::High: return "high";
        case QualitySplit::Medium: return "medium";
        case QualitySplit::Low: return "low";
        case QualitySplit::Unscored: return "unscored";
    }
    return "unscored";
}

std::optional<QualitySplit> parse_split(std::string_view s) {
    for (auto q : {QualitySplit::High, QualitySplit::Medium, QualitySplit::Low, QualitySplit::Unscored}) {
        if (s == split_name(q)) return q;
    }
    return std::nullopt;
}

std::set<QualitySplit> parse_split_set(std::span<const std::string> names) {
    std::set<QualitySplit> out;
    for (const auto& n : names) {
        auto q = parse_split(n);
        if (!q || *q == QualitySplit::Unscored) {
            throw ConfigError("split selection must name high, medium or low, got '" + n + "'");
        }
        out.insert(*q);
    }
    return out;
}

std::set<QualitySplit> default_selection() { return {QualitySplit::High, QualitySplit::Medium}; }

void SplitThresholds::validate() const {
    if (!(0.0 <= medium_min && medium_min <= high_min && high_min <= 1.0)) {
        throw ConfigError("split thresholds must satisfy 0 <= medium_min <= high_min <= 1");
    }
}

QualityScoreTable load_score_table(const std::filesystem::path& path, std::string source_name) {
    QualityScoreTable t;
    t.source_name = source_name.empty() ? path.stem().string() : std::move(source_name);
    JsonlReader r(path);
    auto where = [&] { return path.string() + ":" + std::to_string(r.line_number()); };
    while (auto j = r.next()) {
        if (!j->is_object() || !j->contains("id") || !(*j)["id"].is_string()) throw DataError(where() + ": missing id");
        auto id = (*j)["id"].get<std::string>();
        if (t.scores.contains(id) || t.labels.contains(id)) throw DataError(where() + ": repeated id '" + id + "'");
        if (j->contains("label")) {
            auto q = (*j)["label"].is_string() ? parse_split((*j)["label"].get<std::string>()) : std::nullopt;
            if (!q || *q == QualitySplit::Unscored) throw DataError(where() + ": label must be high, medium or low");
            t.labels.emplace(std::move(id), *q);
        } else if (j->contains("score") && (*j)["score"].is_number()) {
            double s = (*j)["score"].get<double>();
            if (!(s >= 0.0 && s <= 1.0)) throw DataError(where() + ": score outside [0, 1]");
            t.scores.emplace(std::move(id), s);
        } else {
            throw DataError(where() + ": expected a numeric score or a label");
        }
    }
    return t;
}

QualitySplit assign_quality(double score, const SplitThresholds& t) {
    if (score >= t.high_min) return QualitySplit::High;
    if (score >= t.medium_min) return QualitySplit::Medium;
    return QualitySplit::Low;
}

QualitySplit assign_quality(const std::string& doc_id, const QualityScoreTable& table, const SplitThresholds& t) {
    if (auto it = table.labels.find(doc_id); it != table.labels.end()) return it->second;
    if (auto it = table.scores.find(doc_id); it != table.scores.end()) return assign_quality(it->second, t);
    return QualitySplit::Unscored;
}

double fallback_score(std::string_view text) {
    filters::GopherQualityConfig qc;
    auto q = filters::gopher_quality_stats(text, qc);
    auto rep = filters::gopher_repetition_stats(text, filters::GopherRepetitionConfig{});
    auto fw = filters::fineweb_quality_stats(text, filters::FineWebQualityConfig{});
    double words = static_cast<double>(q.words);
    double stop_density = words > 0 ? std::min(1.0, static_cast<double>(q.stop_word_hits) / (0.15 * words)) : 0.0;
    double s = 0.25 * q.alpha_word_frac + 0.25 * stop_density + 0.25 * (1.0 - rep.dup_line_char_frac) +
               0.25 * fw.line_punct_frac;
    return std::clamp(s, 0.0, 1.0);
}

SplitRouter::SplitRouter(std::filesystem::path out_dir, std::string shard_name, std::set<QualitySplit> selected,
                         Tokenizer tokenizer)
    : out_dir_(std::move(out_dir)),
      shard_name_(std::move(shard_name)),
      selected_(std::move(selected)),
      tokenizer_(std::move(tokenizer)) {
    outcome_.stats.stage = std::string(kStage);
    for (auto q : {QualitySplit::High, QualitySplit::Medium, QualitySplit::Low, QualitySplit::Unscored}) {
        outcome_.totals[q] = {};
    }
}

SplitRouter::~SplitRouter() = default;

JsonlWriter& SplitRouter::writer_for(const std::string& dir) {
    auto it = writers_.find(dir);
    if (it == writers_.end()) {
        std::filesystem::create_directories(out_dir_ / dir);
        it = writers_.emplace(dir, std::make_unique<JsonlWriter>(out_dir_ / dir / (shard_name_ + ".jsonl"))).first;
    }
    return *it->second;
}

void SplitRouter::route(Document doc, QualitySplit split) {
    auto tokens = tokenizer_.count(doc.text);
    auto& tot = outcome_.totals[split];
    ++tot.docs;
    tot.tokens += tokens;
    doc.annotations["split"] = std::string(split_name(split));
    if (split == QualitySplit::Unscored) {
        writer_for("quarantine").write(document_to_json(doc));
        outcome_.stats.record_drop(reason::split_unscored, tokens);
    } else if (selected_.contains(split)) {
        writer_for(std::string(split_name(split))).write(document_to_json(doc));
        outcome_.stats.record_keep(tokens, tokens);
    } else {
        outcome_.stats.record_drop(drop_reason(split), tokens);
    }
}

SplitOutcome SplitRouter::finish() {
    for (auto& [_, w] : writers_) w->commit();
    writers_.clear();
    return outcome_;
}

SplitOutcome materialize_splits(std::span<const Document> docs, std::span<const QualitySplit> assignments,
                                const std::set<QualitySplit>& selected, const std::filesystem::path& out_dir,
                                std::string_view shard_name, const Tokenizer& tokenizer) {
    if (docs.size() != assignments.size()) throw ContractError("every document needs a split assignment");
    SplitRouter router(out_dir, std::string(shard_name), selected, tokenizer);
    for (std::size_t i = 0; i < docs.size(); ++i) router.route(docs[i], assignments[i]);
    return router.finish();
}

}  // namespace corpus_forge::split
