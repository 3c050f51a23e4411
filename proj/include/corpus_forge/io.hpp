// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "corpus_forge/model.hpp"

namespace corpus_forge {

using Json = nlohmann::ordered_json;

/// Fields exactly `id, url, date, text, lang, lang_conf, annotations`;
/// absent fields are omitted, never null.
Json document_to_json(const Document& doc);
/// Throws DataError on missing id/text, wrong field types, or a language
/// without confidence (and vice versa).
Document document_from_json(const Json& j);

std::string document_to_jsonl(const Document& doc);
Document document_from_jsonl(std::string_view line);

Json stats_to_json(const StageStats& s);
StageStats stats_from_json(const Json& j);

/// Line-oriented reader that skips blank lines and tracks line numbers.
class JsonlReader {
   public:
    explicit JsonlReader(const std::filesystem::path& path);

    /// Next parsed line, or nullopt at end of file. Throws DataError with
    /// file:line on malformed JSON.
    std::optional<Json> next();
    [[nodiscard]] std::size_t line_number() const { return line_no_; }

   private:
    std::filesystem::path path_;
    std::ifstream in_;
    std::size_t line_no_ = 0;
};

/// Writes to `<path>.tmp` and renames over `path` on commit(), so an
/// interrupted run never leaves a half-written shard behind.
class JsonlWriter {
   public:
    explicit JsonlWriter(std::filesystem::path path);
    ~JsonlWriter();
    JsonlWriter(const JsonlWriter&) = delete;
    JsonlWriter& operator=(const JsonlWriter&) = delete;

    void write(const Json& j);
    void write_line(std::string_view line);
    void commit();
    [[nodiscard]] std::size_t lines_written() const { return count_; }

   private:
    std::filesystem::path path_;
    std::filesystem::path tmp_;
    std::ofstream out_;
    std::size_t count_ = 0;
    bool committed_ = false;
};

std::string read_file(const std::filesystem::path& path);
/// Atomic (tmp + rename) whole-file write.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace corpus_forge
