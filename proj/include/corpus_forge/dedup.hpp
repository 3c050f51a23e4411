// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "corpus_forge/model.hpp"

namespace corpus_forge::dedup {

enum class SurvivorPolicy { KeepFirst, KeepLongest };

std::string_view policy_name(SurvivorPolicy p);
/// Throws ConfigError for anything but "keep_first" / "keep_longest".
SurvivorPolicy parse_policy(std::string_view s);

struct DedupConfig {
    std::size_t shingle_n = 5;
    std::size_t num_hashes = 112;
    std::size_t bands = 14;
    std::size_t rows_per_band = 8;
    SurvivorPolicy survivor_policy = SurvivorPolicy::KeepFirst;
    std::uint64_t seed = 0x5eed;
    /// When set, a candidate pair only links two documents if their
    /// estimated Jaccard reaches this value.
    std::optional<double> verify_threshold;
    /// Only documents of the same collection can be duplicates.
    bool per_collection = false;

    /// Throws ConfigError naming the violated invariant.
    void validate() const;
};

/// Distinct word n-grams of the NFC, case-folded text, sorted. Texts with
/// fewer than n words yield the whole (normalized) text as one shingle.
std::vector<std::string> shingle(std::string_view text, std::size_t n);

struct MinHashSignature {
    std::string doc_id;
    std::vector<std::uint64_t> values;

    friend bool operator==(const MinHashSignature&, const MinHashSignature&) = default;
};

/// h_i(x) = (a_i * x + b_i) mod (2^61 - 1) over a 64-bit base hash of each
/// shingle, with (a_i, b_i) drawn from SplitMix64(seed). Throws
/// ContractError on an empty shingle set.
MinHashSignature minhash_signature(std::span<const std::string> shingles, const DedupConfig& cfg,
                                   std::string doc_id = {});
MinHashSignature minhash_signature(std::span<const std::uint64_t> shingle_hashes, const DedupConfig& cfg,
                                   std::string doc_id = {});
std::uint64_t shingle_hash(std::string_view shingle);

/// Fraction of agreeing positions. Throws ContractError on length mismatch.
double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b);

/// Hash of the rows of one band.
std::uint64_t band_hash(std::span<const std::uint64_t> rows);

using IndexPair = std::pair<std::size_t, std::size_t>;

/// Index pairs (i < j) of signatures that agree on every row of at least
/// one band; sorted, without repeats.
std::vector<IndexPair> lsh_candidates(std::span<const MinHashSignature> signatures, const DedupConfig& cfg);

struct DocMeta {
    std::string id;
    std::uint32_t shard = 0;
    std::uint64_t record = 0;
    std::uint64_t tokens = 0;
};

struct DuplicateCluster {
    /// Sorted ids.
    std::vector<std::string> members;
    std::string survivor;

    friend bool operator==(const DuplicateCluster&, const DuplicateCluster&) = default;
};

/// Connected components of size >= 2 over the pair graph (indices into
/// `docs`), ordered by their smallest member id. KeepFirst picks the
/// smallest (shard, record); KeepLongest the most tokens, ties by KeepFirst.
std::vector<DuplicateCluster> cluster_and_select(std::span<const IndexPair> pairs, std::span<const DocMeta> docs,
                                                 SurvivorPolicy policy);

/// Fixed 18-byte little-endian records: u16 band, u64 band hash, u64 doc
/// ordinal.
struct BandRecord {
    std::uint16_t band = 0;
    std::uint64_t hash = 0;
    std::uint64_t doc = 0;

    friend auto operator<=>(const BandRecord&, const BandRecord&) = default;
};
inline constexpr std::size_t kBandRecordSize = 18;

class BandIndexWriter {
   public:
    explicit BandIndexWriter(const std::filesystem::path& path);
    void append(const BandRecord& r);
    void close();
    [[nodiscard]] std::uint64_t records() const { return count_; }

   private:
    std::ofstream out_;
    std::uint64_t count_ = 0;
};

std::vector<BandRecord> read_band_records(const std::filesystem::path& path);

/// Sorts a band index file by (band, hash, doc) using runs of at most
/// `max_records_in_memory` records and a k-way merge. Returns the number of
/// records.
std::uint64_t sort_band_index(const std::filesystem::path& in, const std::filesystem::path& out,
                              const std::filesystem::path& scratch_dir, std::size_t max_records_in_memory);

/// Two-phase corpus deduplication. Phase 1 (add) streams band records to an
/// on-disk index; phase 2 (finish) sorts the index, links colliding
/// documents and picks survivors.
class Deduplicator {
   public:
    Deduplicator(DedupConfig cfg, std::filesystem::path work_dir, std::size_t max_records_in_memory = 1 << 20);

    /// Documents must be added in canonical (shard, record) order.
    std::uint64_t add(const DocMeta& meta, const MinHashSignature& sig, std::string_view collection = {});

    struct Result {
        std::vector<DuplicateCluster> clusters;
        /// Indexed by ordinal of add().
        std::vector<bool> keep;
        std::uint64_t candidate_links = 0;
    };
    Result finish();

    [[nodiscard]] const std::vector<DocMeta>& docs() const { return docs_; }

   private:
    DedupConfig cfg_;
    std::filesystem::path work_dir_;
    std::size_t max_records_;
    std::optional<BandIndexWriter> writer_;
    std::vector<DocMeta> docs_;
    std::vector<MinHashSignature> kept_sigs_;
};

MinHashSignature signature_of(const Document& doc, const DedupConfig& cfg);

/// JSONL `{survivor, members[]}`, one line per cluster.
void write_cluster_report(const std::filesystem::path& path, std::span<const DuplicateCluster> clusters);

}  // namespace corpus_forge::dedup
