// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "corpus_forge/fixtures/generate.hpp"
#include "corpus_forge/fixtures/oracles.hpp"
#include "corpus_forge/fixtures/pii_cases.hpp"
#include "util.hpp"

using namespace corpus_forge::fixtures;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

}  // namespace

TEST_CASE("fixture spec validation") {
    FixtureSpec s;
    CHECK_NOTHROW(s.validate());
    s.size = 0;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s = {FixtureKind::OverlapPairs, 3, 0, std::nullopt};
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.jaccard = 1.5;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
    s.jaccard = 0.5;
    CHECK_NOTHROW(s.validate());
    s.kind = FixtureKind::SftEntries;
    CHECK_THROWS_AS(s.validate(), std::invalid_argument);
}

TEST_CASE("rng is reproducible and bounded") {
    Rng a(5), b(5), c(6);
    for (int i = 0; i < 100; ++i) {
        auto x = a.next();
        CHECK(x == b.next());
        CHECK(x != c.next());
    }
    Rng r(1);
    std::vector<int> hist(7, 0);
    for (int i = 0; i < 7000; ++i) ++hist[r.below(7)];
    for (int h : hist) CHECK(h > 800);
    for (int i = 0; i < 1000; ++i) {
        auto u = r.unit();
        CHECK(u >= 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("generated files are deterministic per seed") {
    cf_test::TempDir dir("fix");
    for (auto kind : {FixtureKind::WarcMinimal, FixtureKind::PortugueseParagraphs, FixtureKind::RepetitionText,
                      FixtureKind::PiiCases, FixtureKind::SftEntries, FixtureKind::OverlapPairs}) {
        FixtureSpec s{kind, 9, 3, kind == FixtureKind::OverlapPairs ? std::optional<double>(0.5) : std::nullopt};
        auto a = generate_fixture(s, dir / "a");
        auto b = generate_fixture(s, dir / "b");
        REQUIRE(a.size() == b.size());
        REQUIRE_FALSE(a.empty());
        for (std::size_t i = 0; i < a.size(); ++i) {
            CHECK(fs::exists(a[i]));
            CHECK(slurp(a[i]) == slurp(b[i]));
        }
        s.seed = 4;
        if (kind != FixtureKind::PiiCases) {
            auto c = generate_fixture(s, dir / "c");
            CHECK(slurp(c[0]) != slurp(a[0]));
        }
    }
}

TEST_CASE("warc fixtures") {
    auto m = warc_minimal(8, 2);
    CHECK(m.records.size() == 8);
    CHECK(m.complete_records == 8);
    CHECK_FALSE(m.truncated);
    std::set<std::string> types;
    for (const auto& r : m.records) types.insert(r.type);
    CHECK(types == std::set<std::string>{"metadata", "request", "response"});
    auto scan = oracle::scan_warc(m.bytes);
    CHECK(scan.records.size() == 8);
    auto t = warc_truncated(8, 2);
    CHECK(t.truncated);
    CHECK(t.complete_records == 7);
    auto ts = oracle::scan_warc(t.bytes);
    CHECK(ts.truncated);
    CHECK(ts.records.size() == 7);
}

TEST_CASE("paragraphs are Portuguese prose with unique ids") {
    auto ps = portuguese_paragraphs(50, 1);
    std::set<std::string> ids, texts;
    for (const auto& p : ps) {
        ids.insert(p.id);
        texts.insert(p.text);
        CHECK(oracle::whitespace_tokens(p.text) > 10);
    }
    CHECK(ids.size() == 50);
    CHECK(texts.size() == 50);
}

TEST_CASE("overlap pairs hit the requested Jaccard") {
    for (double j : {0.0, 0.2, 0.5, 0.8, 1.0}) {
        auto p = overlap_pair(j, 40, 7, 3);
        CHECK(p.shared + p.only_a + p.only_b == 40);
        CHECK(oracle::exact_jaccard(p.a, p.b) == doctest::Approx(p.exact));
        CHECK(std::abs(p.exact - j) <= 0.5 / 40 + 1e-12);
    }
    CHECK(overlap_pair(0.5, 40, 7, 3).a != overlap_pair(0.5, 40, 7, 4).a);
}

TEST_CASE("sft sources respect token bounds") {
    auto es = sft_source("s", 200, 50, 200, 9);
    for (const auto& e : es) {
        std::size_t t = 0;
        for (const auto& m : e["messages"]) t += oracle::whitespace_tokens(m["content"].get<std::string>());
        CHECK(t >= 50);
        CHECK(t <= 200);
        CHECK(e["tokens"].get<std::size_t>() == t);
    }
    CHECK_THROWS_AS(sft_source("s", 1, 10, 5, 0), std::invalid_argument);
}

TEST_CASE("pii corpus has enough distinct cases") {
    const auto& cases = pii_cases();
    CHECK(cases.size() >= 50);
    std::set<std::string> names;
    std::size_t targets = 0, lookalikes = 0;
    for (const auto& c : cases) {
        CHECK(names.insert(c.name).second);
        (c.emails + c.phones + c.ips > 0 ? targets : lookalikes) += 1;
        if (c.emails + c.phones + c.ips == 0) CHECK(c.input == c.expected);
    }
    CHECK(targets >= 20);
    CHECK(lookalikes >= 20);
}

TEST_CASE("oracle self-checks") {
    CHECK(oracle::exact_jaccard({"a", "b"}, {"b", "c"}) == doctest::Approx(1.0 / 3.0));
    CHECK(oracle::exact_jaccard({}, {}) == 1.0);
    CHECK(oracle::word_shingles("a b c", 2) == std::set<std::string>{"a b", "b c"});
    CHECK(oracle::whitespace_tokens(" a  b\tc ") == 3);
    CHECK(oracle::vocabulary_tokens("abab", {"ab", "a"}) == 2);
    std::vector<std::pair<std::size_t, std::size_t>> edges{{0, 1}, {2, 3}, {1, 4}};
    auto comps = oracle::components_bfs(6, edges);
    CHECK(comps == std::vector<std::vector<std::size_t>>{{0, 1, 4}, {2, 3}, {5}});
    CHECK(comps == oracle::components_closure(6, edges));
}

TEST_CASE("pipeline corpus plan") {
    cf_test::TempDir dir("corpus");
    auto plan = write_pipeline_corpus(dir.path(), 50, 3, 4);
    CHECK(plan.documents == 50);
    CHECK(plan.files == 3);
    CHECK(plan.extra_records >= 3);
    CHECK(fs::exists(dir / "crawl-000.warc.gz"));
    CHECK(fs::exists(dir / "crawl-002.warc"));
    auto scan = oracle::scan_warc(slurp(dir / "crawl-001.warc"));
    CHECK_FALSE(scan.truncated);
    CHECK(scan.records.size() > 10);
}
