// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "corpus_forge/dedup.hpp"
#include "corpus_forge/errors.hpp"
#include "corpus_forge/fixtures/generate.hpp"
#include "corpus_forge/fixtures/oracles.hpp"
#include "corpus_forge/io.hpp"
#include "util.hpp"

using namespace corpus_forge;
using namespace corpus_forge::dedup;
namespace fx = corpus_forge::fixtures;
namespace oracle = corpus_forge::fixtures::oracle;

namespace {

MinHashSignature sig_of(const std::vector<std::string>& set, const DedupConfig& cfg, std::string id = {}) {
    return minhash_signature(std::span<const std::string>(set), cfg, std::move(id));
}

// Pairs that agree on all rows of some band, by direct comparison.
std::vector<IndexPair> banded_pairs(const std::vector<MinHashSignature>& sigs, const DedupConfig& cfg) {
    std::vector<IndexPair> out;
    for (std::size_t i = 0; i < sigs.size(); ++i) {
        for (std::size_t j = i + 1; j < sigs.size(); ++j) {
            for (std::size_t b = 0; b < cfg.bands; ++b) {
                auto first = sigs[i].values.begin() + static_cast<std::ptrdiff_t>(b * cfg.rows_per_band);
                if (std::equal(first, first + static_cast<std::ptrdiff_t>(cfg.rows_per_band),
                               sigs[j].values.begin() + static_cast<std::ptrdiff_t>(b * cfg.rows_per_band))) {
                    out.emplace_back(i, j);
                    break;
                }
            }
        }
    }
    return out;
}

}  // namespace

TEST_CASE("shingle examples") {
    CHECK(shingle("a b c d e f", 5) == std::vector<std::string>{"a b c d e", "b c d e f"});
    CHECK(shingle("Olá  Mundo", 5) == std::vector<std::string>{"olá mundo"});
    CHECK(shingle("x x x x x x x", 5) == std::vector<std::string>{"x x x x x"});
    // Composed and decomposed forms agree.
    CHECK(shingle("AÇÃO e mais", 2) == shingle("ac\u0327a\u0303o E MAIS", 2));
    CHECK(shingle("", 3).size() == 1);
    CHECK_THROWS_AS(shingle("a", 0), ContractError);
}

TEST_CASE("shingles agree with the oracle") {
    for (const auto& d : fx::portuguese_paragraphs(40, 6)) {
        for (std::size_t n : {1, 3, 5}) {
            auto got = shingle(d.text, n);
            auto want = oracle::word_shingles(d.text, n);
            CHECK(got == std::vector<std::string>(want.begin(), want.end()));
        }
    }
}

TEST_CASE("minhash signatures are seeded and deterministic") {
    DedupConfig cfg;
    std::vector<std::string> s{"a b", "b c", "c d"};
    auto x = sig_of(s, cfg, "x");
    CHECK(x.values.size() == 112);
    CHECK(x.doc_id == "x");
    CHECK(sig_of(s, cfg).values == x.values);
    auto reordered = std::vector<std::string>{"c d", "a b", "b c", "a b"};
    CHECK(sig_of(reordered, cfg).values == x.values);
    auto other = cfg;
    other.seed = 1;
    CHECK(sig_of(s, other).values != x.values);
    for (auto v : x.values) CHECK(v < (std::uint64_t{1} << 61) - 1);
    CHECK_THROWS_AS(sig_of({}, cfg), ContractError);
}

TEST_CASE("estimate_jaccard") {
    DedupConfig cfg;
    auto a = sig_of({"um", "dois"}, cfg);
    CHECK(estimate_jaccard(a, a) == 1.0);
    auto b = sig_of({"três", "quatro"}, cfg);
    CHECK(estimate_jaccard(a, b) < 0.1);
    DedupConfig small = cfg;
    small.num_hashes = 8;
    small.bands = 2;
    small.rows_per_band = 4;
    CHECK_THROWS_AS(estimate_jaccard(a, sig_of({"um"}, small)), ContractError);
}

TEST_CASE("estimator tracks exact Jaccard") {
    DedupConfig cfg;
    for (double j : {0.3, 0.7}) {
        double sum = 0;
        const int n = 200;
        for (int i = 0; i < n; ++i) {
            auto p = fx::overlap_pair(j, 200, 41, static_cast<std::uint64_t>(i));
            CHECK(oracle::exact_jaccard(p.a, p.b) == doctest::Approx(p.exact));
            sum += estimate_jaccard(sig_of(p.a, cfg), sig_of(p.b, cfg)) - p.exact;
        }
        CHECK(std::abs(sum / n) <= 0.02);
    }
}

TEST_CASE("lsh candidates equal direct band comparison") {
    DedupConfig cfg;
    cfg.num_hashes = 24;
    cfg.bands = 6;
    cfg.rows_per_band = 4;
    std::vector<MinHashSignature> sigs;
    fx::Rng rng(2);
    for (int i = 0; i < 60; ++i) {
        auto p = fx::overlap_pair(0.2 + 0.7 * rng.unit(), 30, 9, static_cast<std::uint64_t>(i % 12));
        sigs.push_back(sig_of(i % 2 ? p.a : p.b, cfg));
    }
    auto got = lsh_candidates(sigs, cfg);
    CHECK(got == banded_pairs(sigs, cfg));
    CHECK(std::is_sorted(got.begin(), got.end()));
    CHECK_FALSE(got.empty());
    auto bad = cfg;
    bad.rows_per_band = 5;
    CHECK_THROWS_AS(lsh_candidates(sigs, bad), ContractError);
}

TEST_CASE("cluster_and_select agrees with graph oracles") {
    fx::Rng rng(13);
    for (int round = 0; round < 60; ++round) {
        std::size_t n = 1 + rng.below(25);
        std::vector<DocMeta> docs;
        for (std::size_t i = 0; i < n; ++i) {
            docs.push_back({"d" + std::to_string(1000 + rng.below(9000)) + "-" + std::to_string(i),
                            static_cast<std::uint32_t>(rng.below(3)), rng.below(100), rng.below(50)});
        }
        std::vector<IndexPair> pairs;
        for (std::size_t k = 0; k < rng.below(2 * n); ++k) {
            auto a = rng.below(n), b = rng.below(n);
            if (a != b) pairs.emplace_back(std::min(a, b), std::max(a, b));
        }
        auto bfs = oracle::components_bfs(n, pairs);
        CHECK(bfs == oracle::components_closure(n, pairs));
        std::vector<std::vector<std::string>> want;
        for (const auto& c : bfs) {
            if (c.size() < 2) continue;
            std::vector<std::string> ids;
            for (auto i : c) ids.push_back(docs[i].id);
            std::sort(ids.begin(), ids.end());
            want.push_back(ids);
        }
        std::sort(want.begin(), want.end());

        for (auto policy : {SurvivorPolicy::KeepFirst, SurvivorPolicy::KeepLongest}) {
            auto got = cluster_and_select(pairs, docs, policy);
            REQUIRE(got.size() == want.size());
            std::map<std::string, const DocMeta*> by_id;
            for (const auto& d : docs) by_id[d.id] = &d;
            for (std::size_t c = 0; c < got.size(); ++c) {
                CHECK(got[c].members == want[c]);
                const DocMeta* best = nullptr;
                for (const auto& id : got[c].members) {
                    const DocMeta* d = by_id[id];
                    auto earlier = [](const DocMeta* x, const DocMeta* y) {
                        return std::tie(x->shard, x->record) < std::tie(y->shard, y->record);
                    };
                    if (!best) {
                        best = d;
                    } else if (policy == SurvivorPolicy::KeepFirst) {
                        if (earlier(d, best)) best = d;
                    } else if (d->tokens > best->tokens || (d->tokens == best->tokens && earlier(d, best))) {
                        best = d;
                    }
                }
                CHECK(got[c].survivor == best->id);
            }
        }
    }
}

TEST_CASE("band index files round trip and sort externally") {
    cf_test::TempDir dir("bands");
    fx::Rng rng(4);
    std::vector<BandRecord> recs;
    {
        BandIndexWriter w(dir / "in.bin");
        for (int i = 0; i < 1000; ++i) {
            BandRecord r{static_cast<std::uint16_t>(rng.below(14)), rng.next() % 50, rng.below(300)};
            recs.push_back(r);
            w.append(r);
        }
        w.close();
        CHECK(w.records() == 1000);
    }
    CHECK(std::filesystem::file_size(dir / "in.bin") == 1000 * kBandRecordSize);
    CHECK(read_band_records(dir / "in.bin") == recs);
    std::sort(recs.begin(), recs.end());
    for (std::size_t mem : {7, 64, 5000}) {
        CHECK(sort_band_index(dir / "in.bin", dir / "out.bin", dir / "scratch", mem) == 1000);
        CHECK(read_band_records(dir / "out.bin") == recs);
    }
}

TEST_CASE("deduplicator finds near-duplicates") {
    cf_test::TempDir dir("dedup");
    DedupConfig cfg;
    auto paras = fx::portuguese_paragraphs(30, 3);
    std::vector<Document> docs;
    for (const auto& p : paras) docs.push_back({.id = p.id, .text = p.text});
    // Near-copies of the first three, one of them longer.
    for (int i = 0; i < 3; ++i) {
        Document d = docs[static_cast<std::size_t>(i)];
        d.id = "copy-" + std::to_string(i);
        auto dot = d.text.rfind('.');
        if (dot != std::string::npos) d.text[dot] = '!';
        if (i == 1) d.text += " Fim.";
        docs.push_back(d);
    }
    for (std::size_t mem : {std::size_t{16}, std::size_t{1} << 20}) {
        Deduplicator dd(cfg, dir / ("w" + std::to_string(mem)), mem);
        for (std::size_t i = 0; i < docs.size(); ++i) {
            CHECK(dd.add({docs[i].id, 0, i, count_tokens(docs[i].text, {})}, signature_of(docs[i], cfg)) == i);
        }
        auto res = dd.finish();
        REQUIRE(res.clusters.size() == 3);
        for (const auto& c : res.clusters) {
            CHECK(c.members.size() == 2);
            CHECK(c.survivor.rfind("pt-", 0) == 0);
        }
        CHECK(std::count(res.keep.begin(), res.keep.end(), false) == 3);
        CHECK_FALSE(res.keep[30]);
        CHECK(res.keep[0]);
        CHECK_THROWS_AS(dd.finish(), ContractError);
    }
}

TEST_CASE("keep_longest and per-collection") {
    cf_test::TempDir dir("dedup2");
    DedupConfig cfg;
    cfg.survivor_policy = SurvivorPolicy::KeepLongest;
    Document a{.id = "a", .text = "o rio corre devagar entre as pedras e os salgueiros da margem esquerda"};
    Document b = a;
    b.id = "b";
    {
        Deduplicator dd(cfg, dir / "x");
        dd.add({"a", 0, 0, 5}, signature_of(a, cfg));
        dd.add({"b", 0, 1, 9}, signature_of(b, cfg));
        auto r = dd.finish();
        REQUIRE(r.clusters.size() == 1);
        CHECK(r.clusters[0].survivor == "b");
    }
    cfg.per_collection = true;
    {
        Deduplicator dd(cfg, dir / "y");
        dd.add({"a", 0, 0, 5}, signature_of(a, cfg), "web");
        dd.add({"b", 0, 1, 9}, signature_of(b, cfg), "news");
        CHECK(dd.finish().clusters.empty());
    }
    {
        Deduplicator dd(cfg, dir / "z");
        dd.add({"a", 0, 0, 5}, signature_of(a, cfg), "web");
        dd.add({"b", 0, 1, 9}, signature_of(b, cfg), "web");
        CHECK(dd.finish().clusters.size() == 1);
    }
}

TEST_CASE("verify threshold prunes weak candidates") {
    cf_test::TempDir dir("dedup3");
    DedupConfig cfg;
    cfg.num_hashes = 4;
    cfg.bands = 4;
    cfg.rows_per_band = 1;
    auto p = fx::overlap_pair(0.3, 40, 5);
    auto sa = sig_of(p.a, cfg, "a");
    auto sb = sig_of(p.b, cfg, "b");
    auto est = estimate_jaccard(sa, sb);
    auto run = [&](std::optional<double> t, const char* sub) {
        auto c = cfg;
        c.verify_threshold = t;
        Deduplicator dd(c, dir / sub);
        dd.add({"a", 0, 0, 1}, sa);
        dd.add({"b", 0, 1, 1}, sb);
        return dd.finish().clusters.size();
    };
    if (est > 0) {
        CHECK(run(std::nullopt, "n") == 1);
        CHECK(run(std::min(1.0, est + 0.01), "t") == (est >= 1.0 ? 1u : 0u));
        CHECK(run(est, "e") == 1);
    }
}

TEST_CASE("dedup config validation names the invariant") {
    DedupConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.bands = 10;
    try {
        cfg.validate();
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("bands x rows_per_band") != std::string::npos);
    }
    cfg = {};
    cfg.shingle_n = 0;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.verify_threshold = 1.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    CHECK(parse_policy("keep_longest") == SurvivorPolicy::KeepLongest);
    CHECK(policy_name(SurvivorPolicy::KeepFirst) == "keep_first");
    CHECK_THROWS_AS(parse_policy("keep_random"), ConfigError);
}

TEST_CASE("cluster report") {
    cf_test::TempDir dir("rep");
    std::vector<DuplicateCluster> cs{{{"a", "b"}, "a"}, {{"c", "d", "e"}, "e"}};
    write_cluster_report(dir / "c.jsonl", cs);
    JsonlReader r(dir / "c.jsonl");
    auto first = r.next();
    REQUIRE(first);
    CHECK((*first)["survivor"] == "a");
    CHECK((*first)["members"].size() == 2);
    REQUIRE(r.next());
    CHECK_FALSE(r.next());
}

TEST_CASE("lsh probability oracle") {
    CHECK(oracle::lsh_probability(1.0, 8, 14) == 1.0);
    CHECK(oracle::lsh_probability(0.0, 8, 14) == 0.0);
    CHECK(oracle::lsh_probability(0.5, 8, 14) == doctest::Approx(1 - std::pow(1 - std::pow(0.5, 8), 14)));
}
