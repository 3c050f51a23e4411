// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

// Deterministic test fixtures. Nothing here depends on the pipeline library;
// outputs use the same JSONL and WARC formats as production.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

namespace corpus_forge::fixtures {

using FJson = nlohmann::ordered_json;

enum class FixtureKind { WarcMinimal, PortugueseParagraphs, RepetitionText, PiiCases, OverlapPairs, SftEntries };

struct FixtureSpec {
    FixtureKind kind = FixtureKind::WarcMinimal;
    std::size_t size = 1;
    std::uint64_t seed = 0;
    /// OverlapPairs only.
    std::optional<double> jaccard;

    /// Throws std::invalid_argument.
    void validate() const;
};

/// Small seeded generator; platform-independent (no std distributions).
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next();
    /// Uniform in [0, n).
    std::size_t below(std::size_t n);
    double unit();
    template <typename T>
    const T& pick(const std::vector<T>& xs) {
        return xs[below(xs.size())];
    }

   private:
    std::uint64_t state_;
};

// ---- WARC -------------------------------------------------------------------

struct WarcFixtureRecord {
    std::string type;
    std::string record_id;
    std::string date;
    std::optional<std::string> target_uri;
    std::string content_type;
    std::string payload;
    /// Every header in file order, Content-Length included.
    std::vector<std::pair<std::string, std::string>> headers;
};

struct WarcFixture {
    std::vector<WarcFixtureRecord> records;
    std::string bytes;
    /// Records fully contained in `bytes`.
    std::size_t complete_records = 0;
    bool truncated = false;
};

std::string serialize_record(const WarcFixtureRecord& r);
/// `size` records cycling through response (HTML), response (plain text),
/// request and metadata types.
WarcFixture warc_minimal(std::size_t size, std::uint64_t seed);
/// warc_minimal(size) with the last record cut in the middle of its payload.
WarcFixture warc_truncated(std::size_t size, std::uint64_t seed);

// ---- text -------------------------------------------------------------------

struct FixtureDoc {
    std::string id;
    std::optional<std::string> url;
    std::optional<std::string> date;
    std::string text;
    std::vector<std::pair<std::string, std::string>> annotations;
};

/// Document JSON in the interchange field order.
FJson doc_to_json(const FixtureDoc& d);

/// Clean multi-paragraph Portuguese prose, one sentence per line.
std::string portuguese_paragraph(Rng& rng, std::size_t sentences);
std::vector<FixtureDoc> portuguese_paragraphs(std::size_t size, std::uint64_t seed);

/// Texts covering the filters' decision space: clean prose, repeated lines and
/// paragraphs, n-gram spam, bullet lists, ellipses, symbol runs, short lines.
std::vector<std::string> repetition_texts(std::size_t size, std::uint64_t seed);

// ---- MinHash ----------------------------------------------------------------

struct OverlapPair {
    std::vector<std::string> a;
    std::vector<std::string> b;
    std::size_t shared = 0;
    std::size_t only_a = 0;
    std::size_t only_b = 0;
    double requested = 0.0;
    /// shared / union; the nearest value reachable with `union_size`.
    double exact = 0.0;
};

/// Word sets with a constructed Jaccard index. `index` decorrelates pairs
/// drawn from the same seed.
OverlapPair overlap_pair(double jaccard, std::size_t union_size, std::uint64_t seed, std::uint64_t index = 0);

// ---- SFT --------------------------------------------------------------------

/// Entries exercising the post-train rules: traces, boxed answers, repeated
/// prompts, self-reference, scores around the cut-off and out of range.
std::vector<FJson> sft_entries(std::size_t size, std::uint64_t seed);

/// One source of plain SFT entries whose token counts (whitespace) fall in
/// [min_tokens, max_tokens].
std::vector<FJson> sft_source(const std::string& name, std::size_t size, std::size_t min_tokens,
                              std::size_t max_tokens, std::uint64_t seed);

// ---- pipeline corpus --------------------------------------------------------

struct CorpusPlan {
    std::size_t documents = 0;
    std::size_t files = 0;
    /// Non-document WARC records (requests, metadata) mixed in.
    std::size_t extra_records = 0;
};

/// WARC files holding `documents` response records: Portuguese pages,
/// Brazilian domains, English pages, repetitive and short pages,
/// near-duplicates and PII-bearing pages.
CorpusPlan write_pipeline_corpus(const std::filesystem::path& dir, std::size_t documents, std::size_t files,
                                 std::uint64_t seed);

/// Writes the fixture for `spec` under `dir`; returns the files written.
std::vector<std::filesystem::path> generate_fixture(const FixtureSpec& spec, const std::filesystem::path& dir);

}  // namespace corpus_forge::fixtures
