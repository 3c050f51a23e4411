// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/dedup.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <numeric>
#include <queue>
#include <unordered_map>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/hash.hpp"
#include "corpus_forge/io.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::dedup {
namespace {

__extension__ typedef unsigned __int128 u128;

constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

std::uint64_t mod_p(u128 z) {
    auto lo = static_cast<std::uint64_t>(z & kMersenne61);
    auto hi = static_cast<std::uint64_t>(z >> 61);
    std::uint64_t r = lo + (hi & kMersenne61) + static_cast<std::uint64_t>(hi >> 61);
    while (r >= kMersenne61) r -= kMersenne61;
    return r;
}

struct Coefficients {
    std::vector<std::uint64_t> a;
    std::vector<std::uint64_t> b;
};

Coefficients coefficients(std::uint64_t seed, std::size_t n) {
    Coefficients c;
    c.a.reserve(n);
    c.b.reserve(n);
    std::uint64_t state = seed;
    for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t a = 0;
        while (a == 0) a = hashing::splitmix64(state) % kMersenne61;
        c.a.push_back(a);
        c.b.push_back(hashing::splitmix64(state) % kMersenne61);
    }
    return c;
}

void put_le(char* p, std::uint64_t v, int bytes) {
    for (int i = 0; i < bytes; ++i) p[i] = static_cast<char>((v >> (8 * i)) & 0xff);
}

std::uint64_t get_le(const char* p, int bytes) {
    std::uint64_t v = 0;
    for (int i = 0; i < bytes; ++i) v |= std::uint64_t{static_cast<unsigned char>(p[i])} << (8 * i);
    return v;
}

void encode(const BandRecord& r, char* buf) {
    put_le(buf, r.band, 2);
    put_le(buf + 2, r.hash, 8);
    put_le(buf + 10, r.doc, 8);
}

BandRecord decode(const char* buf) {
    return {static_cast<std::uint16_t>(get_le(buf, 2)), get_le(buf + 2, 8), get_le(buf + 10, 8)};
}

class RecordReader {
   public:
    explicit RecordReader(const std::filesystem::path& path) : in_(path, std::ios::binary) {
        if (!in_) throw DataError("cannot open band index " + path.string());
    }
    std::optional<BandRecord> next() {
        char buf[kBandRecordSize];
        in_.read(buf, kBandRecordSize);
        if (in_.gcount() == 0) return std::nullopt;
        if (in_.gcount() != static_cast<std::streamsize>(kBandRecordSize)) throw DataError("band index has a partial record");
        return decode(buf);
    }

   private:
    std::ifstream in_;
};

class UnionFind {
   public:
    explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent_[std::max(a, b)] = std::min(a, b);
    }

   private:
    std::vector<std::size_t> parent_;
};

bool first_before(const DocMeta& a, const DocMeta& b) {
    return std::tie(a.shard, a.record, a.id) < std::tie(b.shard, b.record, b.id);
}

}  // namespace

std::string_view policy_name(SurvivorPolicy p) {
    return p == SurvivorPolicy::KeepFirst ? "keep_first" : "keep_longest";
}

SurvivorPolicy parse_policy(std::string_view s) {
    if (s == "keep_first") return SurvivorPolicy::KeepFirst;
    if (s == "keep_longest") return SurvivorPolicy::KeepLongest;
    throw ConfigError("dedup.survivor_policy must be keep_first or keep_longest, got '" + std::string(s) + "'");
}

void DedupConfig::validate() const {
    if (shingle_n < 1) throw ConfigError("dedup.shingle_n must be >= 1");
    if (num_hashes < 1) throw ConfigError("dedup.num_hashes must be >= 1");
    if (bands * rows_per_band != num_hashes) {
        throw ConfigError("dedup: bands x rows_per_band (" + std::to_string(bands) + " x " +
                          std::to_string(rows_per_band) + ") must equal num_hashes (" + std::to_string(num_hashes) +
                          ")");
    }
    if (bands > std::numeric_limits<std::uint16_t>::max()) throw ConfigError("dedup.bands must fit in 16 bits");
    if (verify_threshold && !(*verify_threshold >= 0.0 && *verify_threshold <= 1.0)) {
        throw ConfigError("dedup.verify_threshold must be in [0, 1]");
    }
}

std::vector<std::string> shingle(std::string_view input, std::size_t n) {
    if (n < 1) throw ContractError("shingle size must be >= 1");
    auto norm = text::case_fold(text::nfc(input));
    auto words = text::split_whitespace(norm);
    std::vector<std::string> out;
    auto join = [&](std::size_t b, std::size_t e) {
        std::string s;
        for (std::size_t k = b; k < e; ++k) {
            if (k > b) s.push_back(' ');
            s.append(words[k]);
        }
        return s;
    };
    if (words.size() < n) {
        out.push_back(join(0, words.size()));
        return out;
    }
    out.reserve(words.size() - n + 1);
    for (std::size_t i = 0; i + n <= words.size(); ++i) out.push_back(join(i, i + n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::uint64_t shingle_hash(std::string_view s) { return hashing::hash_string(s); }

MinHashSignature minhash_signature(std::span<const std::uint64_t> hashes, const DedupConfig& cfg, std::string doc_id) {
    if (hashes.empty()) throw ContractError("minhash_signature needs at least one shingle");
    auto co = coefficients(cfg.seed, cfg.num_hashes);
    MinHashSignature sig;
    sig.doc_id = std::move(doc_id);
    sig.values.assign(cfg.num_hashes, std::numeric_limits<std::uint64_t>::max());
    for (std::uint64_t h : hashes) {
        std::uint64_t x = mod_p(h);
        for (std::size_t i = 0; i < cfg.num_hashes; ++i) {
            std::uint64_t v = mod_p(static_cast<u128>(co.a[i]) * x + co.b[i]);
            if (v < sig.values[i]) sig.values[i] = v;
        }
    }
    return sig;
}

MinHashSignature minhash_signature(std::span<const std::string> shingles, const DedupConfig& cfg, std::string doc_id) {
    std::vector<std::uint64_t> hashes;
    hashes.reserve(shingles.size());
    for (const auto& s : shingles) hashes.push_back(shingle_hash(s));
    return minhash_signature(std::span<const std::uint64_t>(hashes), cfg, std::move(doc_id));
}

double estimate_jaccard(const MinHashSignature& a, const MinHashSignature& b) {
    if (a.values.size() != b.values.size()) throw ContractError("signature lengths differ");
    if (a.values.empty()) throw ContractError("empty signatures");
    std::size_t same = 0;
    for (std::size_t i = 0; i < a.values.size(); ++i) same += a.values[i] == b.values[i];
    return static_cast<double>(same) / static_cast<double>(a.values.size());
}

std::uint64_t band_hash(std::span<const std::uint64_t> rows) {
    std::uint64_t h = 0x6a09e667f3bcc908ULL;
    for (auto v : rows) h = hashing::combine(h, v);
    return h;
}

std::vector<IndexPair> lsh_candidates(std::span<const MinHashSignature> sigs, const DedupConfig& cfg) {
    if (cfg.bands * cfg.rows_per_band != cfg.num_hashes) {
        throw ContractError("bands x rows_per_band must equal num_hashes");
    }
    for (const auto& s : sigs) {
        if (s.values.size() != cfg.num_hashes) throw ContractError("signature length does not match the config");
    }
    std::vector<IndexPair> pairs;
    std::vector<std::pair<std::uint64_t, std::size_t>> keyed(sigs.size());
    for (std::size_t b = 0; b < cfg.bands; ++b) {
        auto rows_of = [&](std::size_t i) {
            return std::span<const std::uint64_t>(sigs[i].values).subspan(b * cfg.rows_per_band, cfg.rows_per_band);
        };
        for (std::size_t i = 0; i < sigs.size(); ++i) keyed[i] = {band_hash(rows_of(i)), i};
        std::sort(keyed.begin(), keyed.end());
        for (std::size_t s = 0; s < keyed.size();) {
            std::size_t e = s;
            while (e < keyed.size() && keyed[e].first == keyed[s].first) ++e;
            for (std::size_t x = s; x < e; ++x) {
                for (std::size_t y = x + 1; y < e; ++y) {
                    auto rx = rows_of(keyed[x].second);
                    auto ry = rows_of(keyed[y].second);
                    if (std::equal(rx.begin(), rx.end(), ry.begin())) pairs.emplace_back(keyed[x].second, keyed[y].second);
                }
            }
            s = e;
        }
    }
    std::sort(pairs.begin(), pairs.end());
    pairs.erase(std::unique(pairs.begin(), pairs.end()), pairs.end());
    return pairs;
}

std::vector<DuplicateCluster> cluster_and_select(std::span<const IndexPair> pairs, std::span<const DocMeta> docs,
                                                 SurvivorPolicy policy) {
    UnionFind uf(docs.size());
    for (auto [a, b] : pairs) {
        if (a >= docs.size() || b >= docs.size()) throw ContractError("pair index out of range");
        uf.unite(a, b);
    }
    std::unordered_map<std::size_t, std::vector<std::size_t>> comps;
    for (const auto& p : pairs) comps.try_emplace(uf.find(p.first));
    if (comps.empty()) return {};
    for (std::size_t i = 0; i < docs.size(); ++i) {
        auto it = comps.find(uf.find(i));
        if (it != comps.end()) it->second.push_back(i);
    }
    std::vector<DuplicateCluster> out;
    for (auto& [_, members] : comps) {
        if (members.size() < 2) continue;
        std::size_t best = members.front();
        for (auto m : members) {
            const auto& c = docs[m];
            const auto& b = docs[best];
            bool better = policy == SurvivorPolicy::KeepLongest
                              ? (c.tokens > b.tokens || (c.tokens == b.tokens && first_before(c, b)))
                              : first_before(c, b);
            if (better) best = m;
        }
        DuplicateCluster cl;
        for (auto m : members) cl.members.push_back(docs[m].id);
        std::sort(cl.members.begin(), cl.members.end());
        cl.survivor = docs[best].id;
        out.push_back(std::move(cl));
    }
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return x.members.front() < y.members.front(); });
    return out;
}

BandIndexWriter::BandIndexWriter(const std::filesystem::path& path) : out_(path, std::ios::binary | std::ios::trunc) {
    if (!out_) throw DataError("cannot create band index " + path.string());
}

void BandIndexWriter::append(const BandRecord& r) {
    char buf[kBandRecordSize];
    encode(r, buf);
    out_.write(buf, kBandRecordSize);
    ++count_;
}

void BandIndexWriter::close() {
    out_.close();
    if (out_.fail()) throw DataError("failed writing band index");
}

std::vector<BandRecord> read_band_records(const std::filesystem::path& path) {
    RecordReader r(path);
    std::vector<BandRecord> out;
    while (auto rec = r.next()) out.push_back(*rec);
    return out;
}

std::uint64_t sort_band_index(const std::filesystem::path& in, const std::filesystem::path& out,
                              const std::filesystem::path& scratch_dir, std::size_t max_records) {
    max_records = std::max<std::size_t>(max_records, 1);
    std::filesystem::create_directories(scratch_dir);
    RecordReader reader(in);
    std::vector<std::filesystem::path> runs;
    std::uint64_t total = 0;
    std::vector<BandRecord> chunk;
    bool done = false;
    while (!done) {
        chunk.clear();
        while (chunk.size() < max_records) {
            auto r = reader.next();
            if (!r) {
                done = true;
                break;
            }
            chunk.push_back(*r);
        }
        if (chunk.empty()) break;
        std::sort(chunk.begin(), chunk.end());
        auto run = scratch_dir / ("run-" + std::to_string(runs.size()) + ".bin");
        BandIndexWriter w(run);
        for (const auto& r : chunk) w.append(r);
        w.close();
        runs.push_back(run);
        total += chunk.size();
    }

    BandIndexWriter w(out);
    std::vector<RecordReader> readers;
    readers.reserve(runs.size());
    for (const auto& r : runs) readers.emplace_back(r);
    using Item = std::pair<BandRecord, std::size_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    for (std::size_t i = 0; i < readers.size(); ++i) {
        if (auto r = readers[i].next()) heap.emplace(*r, i);
    }
    while (!heap.empty()) {
        auto [rec, i] = heap.top();
        heap.pop();
        w.append(rec);
        if (auto r = readers[i].next()) heap.emplace(*r, i);
    }
    w.close();
    readers.clear();
    for (const auto& r : runs) std::filesystem::remove(r);
    return total;
}

Deduplicator::Deduplicator(DedupConfig cfg, std::filesystem::path work_dir, std::size_t max_records_in_memory)
    : cfg_(std::move(cfg)), work_dir_(std::move(work_dir)), max_records_(max_records_in_memory) {
    cfg_.validate();
    std::filesystem::create_directories(work_dir_);
    writer_.emplace(work_dir_ / "bands.bin");
}

std::uint64_t Deduplicator::add(const DocMeta& meta, const MinHashSignature& sig, std::string_view collection) {
    if (!writer_) throw ContractError("Deduplicator::add after finish");
    if (sig.values.size() != cfg_.num_hashes) throw ContractError("signature length does not match the config");
    const std::uint64_t ordinal = docs_.size();
    const std::uint64_t salt = cfg_.per_collection ? hashing::hash_string(collection) : 0;
    for (std::size_t b = 0; b < cfg_.bands; ++b) {
        auto rows = std::span<const std::uint64_t>(sig.values).subspan(b * cfg_.rows_per_band, cfg_.rows_per_band);
        std::uint64_t h = band_hash(rows);
        if (cfg_.per_collection) h = hashing::combine(h, salt);
        writer_->append({static_cast<std::uint16_t>(b), h, ordinal});
    }
    docs_.push_back(meta);
    if (cfg_.verify_threshold) kept_sigs_.push_back(sig);
    return ordinal;
}

Deduplicator::Result Deduplicator::finish() {
    if (!writer_) throw ContractError("Deduplicator::finish called twice");
    writer_->close();
    writer_.reset();
    const auto sorted = work_dir_ / "bands.sorted.bin";
    sort_band_index(work_dir_ / "bands.bin", sorted, work_dir_ / "runs", max_records_);

    Result res;
    std::vector<IndexPair> links;
    RecordReader reader(sorted);
    std::vector<std::uint64_t> group;
    auto flush = [&] {
        if (group.size() < 2) return;
        if (!cfg_.verify_threshold) {
            // A star over the bucket yields the same components as all pairs.
            for (std::size_t k = 1; k < group.size(); ++k) links.emplace_back(group[0], group[k]);
            return;
        }
        for (std::size_t x = 0; x < group.size(); ++x) {
            for (std::size_t y = x + 1; y < group.size(); ++y) {
                if (estimate_jaccard(kept_sigs_[group[x]], kept_sigs_[group[y]]) >= *cfg_.verify_threshold) {
                    links.emplace_back(group[x], group[y]);
                }
            }
        }
    };
    std::optional<BandRecord> prev;
    while (auto r = reader.next()) {
        if (prev && (prev->band != r->band || prev->hash != r->hash)) {
            flush();
            group.clear();
        }
        if (group.empty() || group.back() != r->doc) group.push_back(r->doc);
        prev = r;
    }
    flush();
    std::sort(links.begin(), links.end());
    links.erase(std::unique(links.begin(), links.end()), links.end());
    res.candidate_links = links.size();

    res.clusters = cluster_and_select(links, docs_, cfg_.survivor_policy);
    res.keep.assign(docs_.size(), true);
    std::unordered_map<std::string_view, std::size_t> ordinal_of;
    for (std::size_t i = 0; i < docs_.size(); ++i) ordinal_of.emplace(docs_[i].id, i);
    for (const auto& c : res.clusters) {
        for (const auto& m : c.members) {
            if (m != c.survivor) res.keep[ordinal_of.at(m)] = false;
        }
    }
    std::filesystem::remove(work_dir_ / "bands.bin");
    std::filesystem::remove(sorted);
    return res;
}

MinHashSignature signature_of(const Document& doc, const DedupConfig& cfg) {
    auto sh = shingle(doc.text, cfg.shingle_n);
    return minhash_signature(std::span<const std::string>(sh), cfg, doc.id);
}

void write_cluster_report(const std::filesystem::path& path, std::span<const DuplicateCluster> clusters) {
    JsonlWriter w(path);
    for (const auto& c : clusters) w.write(Json{{"survivor", c.survivor}, {"members", c.members}});
    w.commit();
}

}  // namespace corpus_forge::dedup
