// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <set>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/fixtures/generate.hpp"
#include "corpus_forge/fixtures/oracles.hpp"
#include "corpus_forge/mixture.hpp"
#include "corpus_forge/posttrain.hpp"
#include "util.hpp"

using namespace corpus_forge;
using namespace corpus_forge::posttrain;
namespace fx = corpus_forge::fixtures;

namespace {

SftEntry chat(std::string id, std::vector<std::pair<std::string, std::string>> turns,
              std::optional<double> score = std::nullopt) {
    SftEntry e;
    e.id = std::move(id);
    e.source = "t";
    e.language = "por";
    e.quality_score = score;
    for (auto& [r, c] : turns) e.messages.push_back({r, c});
    return e;
}

std::vector<SftEntry> fixture_entries(std::size_t n, std::uint64_t seed) {
    std::vector<SftEntry> out;
    for (const auto& j : fx::sft_entries(n, seed)) out.push_back(entry_from_json(j));
    return out;
}

std::vector<SftEntry> source_entries(const std::string& name, std::size_t n, std::size_t lo, std::size_t hi,
                                     std::uint64_t seed) {
    std::vector<SftEntry> out;
    for (const auto& j : fx::sft_source(name, n, lo, hi, seed)) out.push_back(entry_from_json(j));
    return out;
}

}  // namespace

TEST_CASE("entry JSON round trip and structure checks") {
    auto e = chat("a", {{"system", "s"}, {"user", "u"}, {"assistant", "r"}}, 5.5);
    e.token_count = 3;
    CHECK(entry_from_json(entry_to_json(e)) == e);
    CHECK(check_entry(e).kept());
    CHECK(check_entry(chat("b", {{"assistant", "r"}, {"user", "u"}})).reason == "posttrain:invalid_entry");
    CHECK(check_entry(chat("c", {{"user", "u"}, {"user", "v"}})).reason == "posttrain:invalid_entry");
    CHECK(check_entry(chat("d", {{"user", "u"}, {"assistant", "  "}})).reason == "posttrain:empty_message");
    CHECK(check_entry(chat("e", {{"user", "u"}, {"robot", "r"}})).reason == "posttrain:invalid_entry");
    CHECK(check_entry(chat("f", {})).reason == "posttrain:invalid_entry");
    CHECK_THROWS_AS(entry_from_json(Json::parse(R"({"id":"x"})")), DataError);
    CHECK_THROWS_AS(entry_from_json(Json::parse(R"({"id":"x","source":"s","messages":"no","lang":"por","tokens":1})")),
                    DataError);
}

TEST_CASE("entry tokens are the sum over messages") {
    auto e = chat("a", {{"user", "um dois"}, {"assistant", "três quatro cinco"}});
    CHECK(entry_tokens(e, Tokenizer{}) == 5);
    for (const auto& s : source_entries("s", 50, 10, 30, 1)) {
        auto n = entry_tokens(s, Tokenizer{});
        CHECK(n >= 10);
        CHECK(n <= 30);
        CHECK(n == s.token_count);
    }
}

TEST_CASE("strip_traces examples") {
    auto tags = default_trace_tags();
    CHECK(strip_traces("A<think>x</think>B", tags) == "A\nB");
    CHECK(strip_traces("sem marcas", tags) == "sem marcas");
    CHECK(strip_traces("<think>a<think>b</think>c</think>d", tags) == "d");
    CHECK(strip_traces("resposta <think>sem fecho", tags) == "resposta");
    CHECK(strip_traces("<think>x</think>", tags).empty());
    CHECK(strip_traces("A  \n <think>x</think>\n\n B", tags) == "A\nB");
}

TEST_CASE("strip_reasoning_traces touches assistant messages only and is idempotent") {
    auto e = chat("a", {{"user", "<think>fica</think>"}, {"assistant", "<think>sai</think>Resposta"}});
    auto s = strip_reasoning_traces(e, default_trace_tags());
    CHECK(s.messages[0].content == "<think>fica</think>");
    CHECK(s.messages[1].content == "Resposta");
    for (const auto& f : fixture_entries(80, 3)) {
        auto once = strip_reasoning_traces(f, default_trace_tags());
        CHECK(strip_reasoning_traces(once, default_trace_tags()) == once);
        for (const auto& m : once.messages) {
            if (m.role == "assistant") CHECK(m.content.find("<think>") == std::string::npos);
        }
    }
    std::vector<TagPair> custom{{"[[", "]]"}};
    CHECK(strip_traces("a [[b [[c]] d]] e", custom) == "a\ne");
}

TEST_CASE("self-referential filter") {
    auto pats = default_self_ref_patterns();
    CHECK(filter_self_referential(chat("a", {{"user", "Olá"}, {"assistant", "Eu sou o ChatGPT"}}), pats).reason ==
          "posttrain:self_ref");
    CHECK(filter_self_referential(chat("b", {{"user", "Conheces o ChatGPT?"}, {"assistant", "Sim."}}), pats).kept());
    CHECK_FALSE(filter_self_referential(chat("c", {{"user", "x"}, {"assistant", "chatgpt"}}), pats).kept());
    CHECK_FALSE(
        filter_self_referential(chat("d", {{"user", "x"}, {"assistant", "As an AI Language Model, I"}}), pats).kept());
    CHECK_THROWS_AS(filter_self_referential(chat("e", {}), std::vector<std::string>{}), ConfigError);
}

TEST_CASE("quality score filter") {
    CHECK(quality_verdict(chat("a", {}, 5.0), 5.0).kept());
    CHECK(quality_verdict(chat("a", {}, 4.9), 5.0).reason == "posttrain:low_quality");
    CHECK(quality_verdict(chat("a", {}), 5.0).kept());
    CHECK(quality_verdict(chat("a", {}, 7.0), 5.0).reason == "posttrain:score_out_of_range");
    CHECK(quality_verdict(chat("a", {}, 0.5), 5.0).reason == "posttrain:score_out_of_range");

    auto all = fixture_entries(90, 4);
    auto res = filter_quality_score(all, 5.0);
    std::size_t unscored = 0, out_of_range = 0, kept = 0;
    for (const auto& e : all) {
        if (!e.quality_score) {
            ++unscored;
            ++kept;
        } else if (*e.quality_score < 1.0 || *e.quality_score > 6.0) {
            ++out_of_range;
        } else if (*e.quality_score >= 5.0) {
            ++kept;
        }
    }
    CHECK(res.kept.size() == kept);
    CHECK(res.quarantined.size() == out_of_range);
    CHECK(res.unscored == unscored);
    CHECK(res.stats.seen == all.size());
    CHECK(res.stats.kept == kept);
    CHECK(res.stats.balanced());
    for (const auto& e : res.kept) {
        if (e.quality_score) CHECK(*e.quality_score >= 5.0);
    }
    CHECK_THROWS_AS(filter_quality_score(all, 0.5), ConfigError);
    CHECK_THROWS_AS(filter_quality_score(all, 6.5), ConfigError);
}

TEST_CASE("dedup_by_prompt") {
    std::vector<SftEntry> es{
        chat("1", {{"user", "Qual é a capital?"}, {"assistant", "Lisboa."}}),
        chat("2", {{"user", "  Qual  é a capital?   "}, {"assistant", "É Lisboa."}}),
        chat("3", {{"user", "Qual é o rio?"}, {"assistant", "Tejo."}}),
        chat("4", {{"system", "s"}, {"user", "Qual é a capital?"}, {"assistant", "Lisboa!"}}),
        chat("5", {{"user", "Qual é a capital?"}, {"assistant", "Lisboa."}, {"user", "E do Porto?"}, {"assistant", "?"}}),
    };
    StageStats st;
    auto out = dedup_by_prompt(es, &st);
    REQUIRE(out.size() == 3);
    CHECK(out[0].id == "1");
    CHECK(out[1].id == "3");
    CHECK(out[2].id == "5");
    CHECK(st.seen == 5);
    CHECK(st.kept == 3);
    CHECK(prompt_key(es[4]) == std::string("Qual é a capital?") + '\x1f' + "E do Porto?");
    CHECK(prompt_key(chat("n", {{"user", "ação"}})) == prompt_key(chat("m", {{"user", "ac\u0327a\u0303o"}})));

    auto fixtures = fixture_entries(120, 9);
    auto once = dedup_by_prompt(fixtures);
    CHECK(dedup_by_prompt(once) == once);
    std::set<std::string> keys;
    for (const auto& e : once) CHECK(keys.insert(prompt_key(e)).second);
}

TEST_CASE("unbox examples") {
    CHECK(unbox_text("A resposta é \\boxed{42}.") == "A resposta é 42.");
    CHECK(unbox_text("\\boxed{\\frac{1}{2}} e \\boxed{x}") == "\\frac{1}{2} e x");
    CHECK(unbox_text("sem caixa") == "sem caixa");
    CHECK_FALSE(unbox_text("\\boxed{aberto"));

    auto e = chat("m1", {{"user", "Quanto é?"}, {"assistant", "…é \\boxed{42}."}});
    auto on = unbox_math(e, 1.0, 7);
    CHECK(on.selected);
    CHECK(on.changed);
    CHECK(on.entry.messages[1].content == "…é 42.");
    auto off = unbox_math(e, 0.0, 7);
    CHECK_FALSE(off.selected);
    CHECK(off.entry == e);
    auto bad = unbox_math(chat("m2", {{"user", "?"}, {"assistant", "\\boxed{1"}}), 1.0, 7);
    CHECK(bad.unbalanced);
    CHECK_FALSE(bad.changed);
    CHECK_THROWS_AS(unbox_math(e, 1.5, 7), ContractError);
}

TEST_CASE("unbox selection is seeded per id") {
    std::size_t selected = 0;
    for (int i = 0; i < 10000; ++i) {
        auto id = "entry-" + std::to_string(i);
        bool s = unbox_selected(id, 0.5, 42);
        CHECK(s == unbox_selected(id, 0.5, 42));
        selected += s;
        // Monotone in p.
        if (unbox_selected(id, 0.3, 42)) CHECK(s);
    }
    CHECK(selected >= 4800);
    CHECK(selected <= 5200);
}

TEST_CASE("long-context and repository filters") {
    auto e = chat("x", {});
    e.token_count = 32768;
    CHECK(filter_long_context(e).kept());
    e.token_count = 32769;
    CHECK(filter_long_context(e).reason == "posttrain:too_long");
    e.token_count = 100;
    CHECK(filter_long_context(e).kept());
    CHECK(filter_code_repos({"a/b", 500, 100}).kept());
    CHECK(filter_code_repos({"a/b", 499, 1000}).reason == "posttrain:repo_stars");
    CHECK(filter_code_repos({"a/b", 10000, 99}).reason == "posttrain:repo_forks");
}

TEST_CASE("source adapters") {
    cf_test::TempDir dir("adapt");
    {
        std::ofstream(dir / "a.toml") << R"([[adapter]]
name = "pares"
prompt_field = "pergunta"
response_field = "resposta"
score_field = "nota"

[[adapter]]
name = "sharegpt"
messages_field = "conversations"
role_field = "from"
content_field = "value"
)";
    }
    auto ads = load_adapters(dir / "a.toml");
    REQUIRE(ads.size() == 2);
    Tokenizer tok;
    auto p = adapt_row(Json::parse(R"({"pergunta":"Olá tudo","resposta":"Bem obrigado sim","nota":5.5})"), ads[0], tok,
                       "pares-0");
    CHECK(p.id == "pares-0");
    CHECK(p.source == "pares");
    REQUIRE(p.messages.size() == 2);
    CHECK(p.messages[0] == Message{"user", "Olá tudo"});
    CHECK(p.quality_score == 5.5);
    CHECK(p.token_count == 5);
    auto s = adapt_row(
        Json::parse(R"({"id":"q","conversations":[{"from":"human","value":"Oi"},{"from":"gpt","value":"Olá"}]})"),
        ads[1], tok, "f");
    CHECK(s.id == "q");
    CHECK(s.messages[1].role == "assistant");
    CHECK_THROWS_AS(adapt_row(Json::parse(R"({"conversations":3})"), ads[1], tok, "f"), DataError);
}

TEST_CASE("entries file round trip") {
    cf_test::TempDir dir("entries");
    auto es = source_entries("s", 20, 5, 9, 2);
    write_entries(dir / "e.jsonl", es);
    CHECK(read_entries(dir / "e.jsonl") == es);
}

// ---- mixture ------------------------------------------------------------------

TEST_CASE("two sources at 75/25") {
    std::vector<MixtureInput> in{{"a", 0.75, source_entries("a", 400, 20, 60, 1)},
                                 {"b", 0.25, source_entries("b", 400, 20, 60, 2)}};
    std::vector<std::pair<std::string, std::size_t>> order;
    auto rep = compose_entries(in, 0.01, 5, 10000, Tokenizer{}, [&](const SftEntry& e, std::size_t s) {
        order.emplace_back(e.id, s);
    });
    CHECK(rep.within_tolerance);
    CHECK(std::abs(rep.sources[0].achieved - 0.75) <= 0.01);
    CHECK(std::abs(rep.sources[1].achieved - 0.25) <= 0.01);
    CHECK(rep.sources[0].achieved + rep.sources[1].achieved == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(rep.tokens >= 10000);
    CHECK(order.size() == rep.entries);
    for (const auto& [id, s] : order) CHECK(id.rfind(s == 0 ? "a-" : "b-", 0) == 0);

    std::vector<std::pair<std::string, std::size_t>> again;
    compose_entries(in, 0.01, 5, 10000, Tokenizer{}, [&](const SftEntry& e, std::size_t s) {
        again.emplace_back(e.id, s);
    });
    CHECK(again == order);
}

TEST_CASE("single source is emitted verbatim") {
    auto es = source_entries("so", 30, 5, 15, 3);
    std::vector<SftEntry> got;
    auto rep = compose_entries({{"so", 1.0, es}}, 0.01, 0, std::nullopt, Tokenizer{},
                               [&](const SftEntry& e, std::size_t) { got.push_back(e); });
    CHECK(got == es);
    CHECK(rep.sources[0].achieved == 1.0);
}

TEST_CASE("an exhausted source triggers a rescale") {
    std::vector<MixtureInput> in{{"small", 0.5, source_entries("small", 5, 10, 10, 1)},
                                 {"big", 0.5, source_entries("big", 500, 10, 10, 2)}};
    auto rep = compose_entries(in, 0.01, 0, 2000, Tokenizer{}, [](const SftEntry&, std::size_t) {});
    CHECK(rep.sources[0].tokens == 50);
    CHECK(std::find(rep.sources[0].flags.begin(), rep.sources[0].flags.end(), "exhausted") !=
          rep.sources[0].flags.end());
    CHECK(std::find(rep.sources[1].flags.begin(), rep.sources[1].flags.end(), "rescaled") !=
          rep.sources[1].flags.end());
    CHECK(rep.sources[0].effective_target + rep.sources[1].effective_target == doctest::Approx(1.0));
    CHECK(rep.within_tolerance);
}

TEST_CASE("mixture errors") {
    CHECK_THROWS_AS(compose_entries({{"a", 0.5, {}}, {"b", 0.5, source_entries("b", 3, 5, 5, 1)}}, 0.01, 0, 100,
                                    Tokenizer{}, [](const SftEntry&, std::size_t) { FAIL("emitted"); }),
                    ConfigError);
    MixtureSpec s;
    s.sources = {{"a", 0.6, {}}, {"b", 0.6, {}}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.sources = {{"a", 0.5, {}}, {"a", 0.5, {}}};
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s.sources = {{"a", 1.256, {}}, {"b", 18.540, {}}};
    normalize_proportions(s);
    CHECK_NOTHROW(s.validate());
    CHECK(s.sources[0].proportion / s.sources[1].proportion == doctest::Approx(1.256 / 18.540));
}

TEST_CASE("mixture spec file") {
    cf_test::TempDir dir("mix");
    write_entries(dir / "a.jsonl", source_entries("a", 100, 20, 40, 1));
    write_entries(dir / "b.jsonl", source_entries("b", 100, 20, 40, 2));
    {
        std::ofstream(dir / "m.toml") << R"(seed = 3
tolerance = 0.02
token_budget = 2000
normalize = true

[[source]]
name = "a"
proportion = 30
path = "a.jsonl"

[[source]]
name = "b"
proportion = 70
path = "b.jsonl"
)";
    }
    auto spec = load_mixture_spec(dir / "m.toml");
    CHECK(spec.seed == 3);
    CHECK(spec.token_budget == 2000);
    CHECK(spec.sources[0].proportion == doctest::Approx(0.3));
    CHECK(spec.sources[1].path == dir / "b.jsonl");
    auto rep = compose_mixture(spec, Tokenizer{}, [](const SftEntry&, std::size_t) {});
    CHECK(rep.within_tolerance);
    auto j = mixture_report_to_json(rep);
    CHECK(j["sources"].size() == 2);
    spec.sources[0].path = dir / "missing.jsonl";
    CHECK_THROWS_AS(compose_mixture(spec, Tokenizer{}, [](const SftEntry&, std::size_t) {}), ConfigError);
}
