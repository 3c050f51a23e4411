// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <string>
#include <vector>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/fixtures/generate.hpp"
#include "corpus_forge/fixtures/oracles.hpp"
#include "corpus_forge/io.hpp"
#include "corpus_forge/model.hpp"
#include "util.hpp"

using namespace corpus_forge;
namespace oracle = corpus_forge::fixtures::oracle;

TEST_CASE("count_tokens whitespace") {
    TokenizerSpec ws;
    CHECK(count_tokens("", ws) == 0);
    CHECK(count_tokens("o comboio chegou", ws) == 3);
    CHECK(count_tokens("  a\t\tb \n c  ", ws) == 3);
    CHECK(count_tokens("a b", ws) == 2);
    CHECK(count_tokens("a b　c", ws) == 3);
}

TEST_CASE("count_tokens vocabulary greedy longest match") {
    TokenizerSpec v{TokenizerKind::Vocabulary, {"ab", "a", "b"}};
    CHECK(count_tokens("abab", v) == 2);
    CHECK(count_tokens("aab", v) == 2);
    CHECK(count_tokens("", v) == 0);
    // Unknown characters count one each, multi-byte ones included.
    CHECK(count_tokens("xçy", v) == 3);
    CHECK(count_tokens("abçab", v) == 3);
}

TEST_CASE("vocabulary kind needs a vocabulary") {
    TokenizerSpec v{TokenizerKind::Vocabulary, {}};
    CHECK_THROWS_AS(Tokenizer{v}, ConfigError);
    CHECK_THROWS_AS(count_tokens("x", v), ConfigError);
}

TEST_CASE("whitespace kind ignores the vocabulary") {
    TokenizerSpec ws{TokenizerKind::Whitespace, {"ab"}};
    CHECK(count_tokens("abab abab", ws) == 2);
}

TEST_CASE("token counts agree with the oracles on random text") {
    fixtures::Rng rng(7);
    const std::vector<std::string> alphabet{"a", "b", "ab", " ", "\n", "ç", "ão", " ", "x"};
    const std::vector<std::string> vocab{"ab", "a", "ão", "b a", "abab"};
    Tokenizer ws;
    Tokenizer vt(TokenizerSpec{TokenizerKind::Vocabulary, vocab});
    for (int i = 0; i < 300; ++i) {
        std::string s;
        for (std::size_t k = 0; k < rng.below(40); ++k) s += rng.pick(alphabet);
        CHECK(ws.count(s) == oracle::whitespace_tokens(s));
        CHECK(vt.count(s) == oracle::vocabulary_tokens(s, vocab));
    }
}

TEST_CASE("whitespace counts are additive over a space") {
    fixtures::Rng rng(11);
    const std::vector<std::string> pieces{"a", "bc", "ção", "9", "-", "é"};
    for (int i = 0; i < 200; ++i) {
        std::string a, b;
        for (std::size_t k = 0; k <= rng.below(5); ++k) a += rng.pick(pieces);
        for (std::size_t k = 0; k <= rng.below(5); ++k) b += rng.pick(pieces);
        CHECK(count_tokens(a + " " + b, {}) == count_tokens(a, {}) + count_tokens(b, {}));
    }
}

namespace {

StageStats random_stats(fixtures::Rng& rng) {
    StageStats s;
    s.stage = "x";
    const std::vector<std::string_view> reasons{reason::url_br_domain, reason::url_malformed, reason::lang_not_target};
    auto n = rng.below(20);
    for (std::size_t i = 0; i < n; ++i) {
        auto t = rng.below(100);
        if (rng.below(2)) {
            s.record_keep(t, t / 2);
        } else {
            s.record_drop(rng.pick(std::vector<std::string_view>(reasons)), t);
        }
    }
    return s;
}

}  // namespace

TEST_CASE("merge_stats examples") {
    CHECK(merge_stats({}, {}) == StageStats{});
    StageStats a;
    a.stage = "s";
    a.seen = 3;
    a.kept = 2;
    StageStats b;
    b.stage = "s";
    b.seen = 5;
    b.kept = 1;
    auto m = merge_stats(a, b);
    CHECK(m.seen == 8);
    CHECK(m.kept == 3);
    StageStats c;
    c.stage = "other";
    CHECK_THROWS_AS(merge_stats(a, c), ContractError);
}

TEST_CASE("merge_stats is a commutative monoid") {
    fixtures::Rng rng(3);
    for (int i = 0; i < 200; ++i) {
        auto a = random_stats(rng), b = random_stats(rng), c = random_stats(rng);
        CHECK(merge_stats(a, merge_stats(b, c)) == merge_stats(merge_stats(a, b), c));
        CHECK(merge_stats(a, b) == merge_stats(b, a));
        CHECK(merge_stats(a, StageStats{}) == a);
        CHECK(merge_stats(StageStats{}, a) == a);
        auto m = merge_stats(a, b);
        CHECK(m.balanced());
        // Fieldwise sum oracle.
        CHECK(m.seen == a.seen + b.seen);
        CHECK(m.tokens_in == a.tokens_in + b.tokens_in);
        CHECK(m.tokens_out == a.tokens_out + b.tokens_out);
        CHECK(m.dropped() == a.dropped() + b.dropped());
    }
}

TEST_CASE("verdicts carry closed reason codes") {
    auto k = Verdict::keep("url");
    CHECK(k.kept());
    CHECK(k.reason.empty());
    auto d = Verdict::drop("url", reason::url_br_domain);
    CHECK_FALSE(d.kept());
    CHECK(d.reason == "url:br_domain");
    CHECK_THROWS_AS(Verdict::drop("url", "url:whatever"), ContractError);
    CHECK_THROWS_AS(Verdict::drop("url", ""), ContractError);
    for (auto code : reason::all()) {
        CHECK(reason::is_known(code));
        CHECK(code.find(':') != std::string_view::npos);
    }
}

TEST_CASE("stats record keeps the balance") {
    StageStats s;
    s.record(Verdict::keep("x"), 10, 8);
    s.record(Verdict::drop("x", reason::extract_empty), 4, 0);
    CHECK(s.seen == 2);
    CHECK(s.kept == 1);
    CHECK(s.dropped_by_reason.at("extract:empty") == 1);
    CHECK(s.tokens_in == 14);
    CHECK(s.tokens_out == 8);
    CHECK(s.balanced());
    CHECK(stats_from_json(stats_to_json(s)) == s);
}

TEST_CASE("ISO dates") {
    auto d = parse_iso_date("2024-02-29");
    REQUIRE(d);
    CHECK(format_iso_date(*d) == "2024-02-29");
    CHECK(parse_iso_date("2023-02-29") == std::nullopt);
    CHECK(parse_iso_date("2023-05-12T10:20:30Z"));
    CHECK(parse_iso_date("12/05/2023") == std::nullopt);
    CHECK(parse_iso_date("") == std::nullopt);
}

TEST_CASE("document JSON field order and omission") {
    Document d;
    d.id = "x1";
    d.text = "olá";
    auto j = document_to_json(d);
    CHECK(j.dump() == R"({"id":"x1","text":"olá"})");
    d.source_url = "https://a.pt/";
    d.capture_date = parse_iso_date("2020-01-02");
    d.language = "por";
    d.language_confidence = 0.9;
    d.annotations["ingest"] = "html";
    j = document_to_json(d);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"id", "url", "date", "text", "lang", "lang_conf", "annotations"});
    CHECK(document_from_json(j) == d);
    CHECK(document_from_jsonl(document_to_jsonl(d)) == d);
}

TEST_CASE("document JSON rejects inconsistent input") {
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"text":"a"})")), DataError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"id":"a"})")), DataError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"id":"a","text":"b","lang":"por"})")), DataError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"id":"a","text":"b","lang_conf":0.5})")), DataError);
    CHECK_THROWS_AS(document_from_json(Json::parse(R"({"id":"a","text":"b","url":null})")), DataError);
    CHECK_THROWS_AS(document_from_jsonl("{not json"), DataError);
}

TEST_CASE("JSONL writer commits atomically") {
    cf_test::TempDir dir("io");
    auto path = dir / "a.jsonl";
    {
        JsonlWriter w(path);
        w.write(Json{{"id", "1"}});
        CHECK_FALSE(std::filesystem::exists(path));
        w.commit();
    }
    CHECK(std::filesystem::exists(path));
    {
        JsonlWriter w(dir / "b.jsonl");
        w.write(Json{{"id", "2"}});
    }
    CHECK_FALSE(std::filesystem::exists(dir / "b.jsonl"));
    JsonlReader r(path);
    auto row = r.next();
    REQUIRE(row);
    CHECK((*row)["id"] == "1");
    CHECK_FALSE(r.next());
}
