// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <fstream>
#include <limits>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/filters/fineweb.hpp"
#include "corpus_forge/filters/gopher.hpp"
#include "corpus_forge/filters/language.hpp"
#include "corpus_forge/filters/url.hpp"
#include "corpus_forge/filters/variant.hpp"
#include "corpus_forge/fixtures/generate.hpp"
#include "corpus_forge/fixtures/oracles.hpp"
#include "corpus_forge/text.hpp"
#include "util.hpp"

using namespace corpus_forge;
using namespace corpus_forge::filters;
namespace fx = corpus_forge::fixtures;
namespace oracle = corpus_forge::fixtures::oracle;

namespace {

Document doc_of(std::string text) {
    Document d;
    d.id = "d";
    d.text = std::move(text);
    return d;
}

std::string repeat_line(const std::string& line, int n) {
    std::string s;
    for (int i = 0; i < n; ++i) s += (i ? "\n" : "") + line;
    return s;
}

}  // namespace

// ---- url ----------------------------------------------------------------------

TEST_CASE("url filter examples") {
    UrlRules rules;
    CHECK(url_filter("https://exemplo.com.br/noticia", rules).reason == "url:br_domain");
    CHECK(url_filter("https://arquivo.pt/page", rules).kept());
    CHECK(url_filter("https://brasil.example.pt/", rules).kept());
    CHECK(url_filter("HTTP://WWW.GOV.BR.", rules).reason == "url:br_domain");
    CHECK(url_filter("not a url", rules).reason == "url:malformed");
    CHECK(url_filter("", rules).reason == "url:malformed");
    CHECK(url_filter("https:///path", rules).reason == "url:malformed");
}

TEST_CASE("url host parsing") {
    CHECK(url_host("https://user:pw@Sub.Exemplo.PT:8080/a?b#c") == "sub.exemplo.pt");
    CHECK(url_host("http://exemplo.pt./") == "exemplo.pt");
    CHECK(url_host("ftp://x.pt") == "x.pt");
    CHECK_FALSE(url_host("exemplo.pt/sem-esquema"));
}

TEST_CASE("blocklist matches hosts, subdomains and suffixes") {
    cf_test::TempDir dir("url");
    {
        std::ofstream(dir / "block.txt") << "# comentário\nmau.pt\n\n  .xxx  \nOUTRO.com # inline\n";
    }
    UrlRules rules;
    rules.blocklist = load_blocklist(dir / "block.txt");
    CHECK(rules.blocklist.count("mau.pt"));
    CHECK(url_filter("https://mau.pt/", rules).reason == "url:blocklist");
    CHECK(url_filter("https://www.mau.pt/", rules).reason == "url:blocklist");
    CHECK(url_filter("https://nadamau.pt/", rules).kept());
    CHECK(url_filter("https://site.xxx/", rules).reason == "url:blocklist");
    CHECK(url_filter("https://outro.com/", rules).reason == "url:blocklist");
    CHECK_THROWS_AS(load_blocklist(dir / "missing.txt"), ConfigError);
}

TEST_CASE("url rules validation") {
    UrlRules r;
    r.blocked_tlds = {"br"};
    CHECK_THROWS_AS(r.validate(), ConfigError);
    r.blocked_tlds = {".br", ".ao"};
    CHECK_NOTHROW(r.validate());
    CHECK(url_filter("https://jornal.co.ao/", r).reason == "url:br_domain");
}

// ---- language -------------------------------------------------------------------

TEST_CASE("profile probabilities normalize per order") {
    std::vector<LabeledText> corpus{{"O comboio chegou cedo à estação.", "por"}, {"A menina comeu pão.", "por"}};
    auto profiles = train_lang_profiles(corpus);
    REQUIRE(profiles.size() == 1);
    const auto& p = profiles[0];
    std::array<double, kMaxNgram> mass{};
    for (const auto& [g, lp] : p.ngram_log_probs) {
        auto n = text::code_point_count(g);
        REQUIRE(n >= 1);
        REQUIRE(n <= kMaxNgram);
        mass[n - 1] += std::exp(lp);
    }
    for (std::size_t n = 0; n < kMaxNgram; ++n) CHECK(mass[n] + std::exp(p.unseen_log_prob[n]) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(train_lang_profiles(corpus)[0].ngram_log_probs == p.ngram_log_probs);
    CHECK_THROWS_AS(train_lang_profiles(std::vector<LabeledText>{}), ConfigError);
    CHECK_THROWS_AS(train_lang_profiles(corpus, 0.0), ConfigError);
}

TEST_CASE("held-out sentences prefer their own language") {
    auto all = builtin_language_corpus();
    std::vector<LabeledText> train, held;
    std::size_t i = 0;
    for (const auto& t : all) {
        if (t.language == "spa") continue;
        (i++ % 5 == 0 ? held : train).push_back(t);
    }
    auto profiles = train_lang_profiles(train);
    REQUIRE(profiles.size() == 2);
    std::size_t right = 0;
    for (const auto& t : held) right += identify_language(t.text, profiles).language == t.language;
    CHECK(static_cast<double>(right) >= 0.95 * static_cast<double>(held.size()));
}

TEST_CASE("identify_language examples") {
    const auto& builtin = builtin_profiles();
    std::vector<LangProfile> por_eng;
    for (const auto& p : builtin) {
        if (p.language == "por" || p.language == "eng") por_eng.push_back(p);
    }
    auto pt = identify_language("O comboio chegou à estação de Lisboa esta manhã.", por_eng);
    CHECK(pt.language == "por");
    CHECK(pt.confidence > 0.5);
    CHECK_FALSE(pt.too_short);
    auto en = identify_language("The train arrived at the station this morning.", por_eng);
    CHECK(en.language == "eng");
    CHECK(en.confidence > 0.5);
    std::vector<LangProfile> one{por_eng[0]};
    auto single = identify_language("qualquer coisa escrita aqui mesmo", one);
    CHECK(single.language == one[0].language);
    CHECK(single.confidence == 1.0);
    CHECK(identify_language("curto", por_eng).too_short);
    CHECK_THROWS_AS(identify_language("texto", std::vector<LangProfile>{}), ContractError);
}

TEST_CASE("language filter records and decides") {
    const auto& profiles = builtin_profiles();
    LanguageRule rule;
    auto d = doc_of("A câmara municipal aprovou ontem o orçamento para o próximo ano.");
    CHECK(language_filter(d, profiles, rule).kept());
    CHECK(d.language == "por");
    REQUIRE(d.language_confidence);
    CHECK(*d.language_confidence >= 0.65);
    auto e = doc_of("The council approved the budget for next year yesterday afternoon.");
    CHECK(language_filter(e, profiles, rule).reason == "lang:not_target");
    CHECK(e.language == "eng");
    auto s = doc_of("olá");
    CHECK(language_filter(s, profiles, rule).reason == "lang:too_short");
    rule.min_confidence = 1.0;
    auto h = doc_of("A câmara municipal aprovou ontem o orçamento para o próximo ano.");
    auto v = language_filter(h, profiles, rule);
    if (!v.kept()) CHECK(v.reason == "lang:low_confidence");
}

TEST_CASE("profile store round trip") {
    cf_test::TempDir dir("lang");
    const auto& profiles = builtin_profiles();
    save_profiles(dir / "p.json", profiles);
    auto back = load_profiles(dir / "p.json");
    REQUIRE(back.size() == profiles.size());
    for (std::size_t i = 0; i < back.size(); ++i) {
        CHECK(back[i].language == profiles[i].language);
        CHECK(back[i].ngram_log_probs == profiles[i].ngram_log_probs);
        CHECK(back[i].unseen_log_prob == profiles[i].unseen_log_prob);
    }
}

// ---- gopher repetition --------------------------------------------------------

TEST_CASE("gopher repetition examples") {
    GopherRepetitionConfig cfg;
    auto rep = repeat_line("Esta linha repete-se sem parar no documento.", 10);
    auto st = gopher_repetition_stats(rep, cfg);
    CHECK(st.dup_line_frac == doctest::Approx(0.9));
    CHECK(gopher_repetition(doc_of(rep), cfg).reason == "gopher_rep:dup_line_frac");

    fx::Rng rng(1);
    auto clean = fx::portuguese_paragraph(rng, 6);
    auto cs = gopher_repetition_stats(clean, cfg);
    CHECK(cs.dup_line_frac == 0.0);
    CHECK(cs.dup_para_frac == 0.0);
    CHECK(gopher_repetition(doc_of(clean), cfg).kept());

    auto spam = gopher_repetition_stats("um dois um dois um dois um", cfg);
    CHECK(spam.top_ngram_char_frac.at(2) == doctest::Approx(21.0 / 26.0));
    CHECK(gopher_repetition(doc_of("um dois um dois um dois um"), cfg).reason == "gopher_rep:top_2_gram");
    CHECK(gopher_repetition(doc_of(""), cfg).kept());
}

TEST_CASE("all-unique text has zero repetition statistics") {
    GopherRepetitionConfig cfg;
    std::string s;
    for (int i = 0; i < 40; ++i) s += "w" + std::to_string(i) + (i % 7 == 6 ? "\n" : " ");
    auto st = gopher_repetition_stats(s, cfg);
    CHECK(st.dup_para_frac == 0.0);
    CHECK(st.dup_line_frac == 0.0);
    for (auto [n, v] : st.top_ngram_char_frac) CHECK(v == 0.0);
    for (auto [n, v] : st.dup_ngram_char_frac) CHECK(v == 0.0);
}

TEST_CASE("gopher repetition statistics match the oracle") {
    GopherRepetitionConfig cfg;
    for (const auto& t : fx::repetition_texts(84, 17)) {
        auto a = gopher_repetition_stats(t, cfg);
        auto b = oracle::repetition_stats(t);
        CHECK(a.dup_para_frac == doctest::Approx(b.dup_para_frac).epsilon(1e-12));
        CHECK(a.dup_para_char_frac == doctest::Approx(b.dup_para_char_frac).epsilon(1e-12));
        CHECK(a.dup_line_frac == doctest::Approx(b.dup_line_frac).epsilon(1e-12));
        CHECK(a.dup_line_char_frac == doctest::Approx(b.dup_line_char_frac).epsilon(1e-12));
        for (int n = 2; n <= 4; ++n) CHECK(std::abs(a.top_ngram_char_frac.at(n) - b.top_ngram_char_frac.at(n)) <= 1e-12);
        for (int n = 5; n <= 10; ++n) CHECK(std::abs(a.dup_ngram_char_frac.at(n) - b.dup_ngram_char_frac.at(n)) <= 1e-12);
        auto v = gopher_repetition(doc_of(t), cfg);
        CHECK(v.reason == oracle::repetition_decision(b));
    }
}

TEST_CASE("paragraph and line splitting edge cases") {
    GopherRepetitionConfig cfg;
    auto st = gopher_repetition_stats("\n\nA\n\n\nB\n\nA\n\n", cfg);
    // Paragraphs after stripping: A, B, A.
    CHECK(st.dup_para_frac == doctest::Approx(1.0 / 3.0));
    auto o = oracle::repetition_stats("\n\nA\n\n\nB\n\nA\n\n");
    CHECK(st.dup_para_frac == doctest::Approx(o.dup_para_frac));
    CHECK(st.dup_line_frac == doctest::Approx(o.dup_line_frac));
    CHECK(st.dup_line_char_frac == doctest::Approx(o.dup_line_char_frac));
}

TEST_CASE("repetition config validation") {
    GopherRepetitionConfig cfg;
    cfg.dup_line_frac_max = 1.2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.top_ngram_char_frac_max[7] = 0.1;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.dup_ngram_char_frac_max[5] = -0.5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

// ---- gopher quality -----------------------------------------------------------

TEST_CASE("gopher quality examples") {
    GopherQualityConfig cfg;
    CHECK(gopher_quality(doc_of("um dois três quatro cinco seis sete oito nove dez onze doze"), cfg).reason ==
          "gopher_quality:word_count");
    CHECK(gopher_quality(doc_of("#### #### ####"), cfg).reason == "gopher_quality:word_count");
    cfg.min_words = 0;
    CHECK(gopher_quality(doc_of("#### #### ####"), cfg).reason == "gopher_quality:symbol_ratio");
    auto st = gopher_quality_stats("#### #### ####", cfg);
    CHECK(st.symbol_ratio == doctest::Approx(4.0));
    CHECK(st.non_symbol_words == 0);
    CHECK(std::isnan(st.mean_word_length));
}

TEST_CASE("200-word Portuguese text is kept and matches the oracle") {
    fx::Rng rng(99);
    std::string t;
    while (text::split_whitespace(t).size() < 200) t += (t.empty() ? "" : "\n") + fx::portuguese_paragraph(rng, 1);
    GopherQualityConfig cfg;
    CHECK(gopher_quality(doc_of(t), cfg).kept());
    auto a = gopher_quality_stats(t, cfg);
    auto b = oracle::quality_stats(t, cfg.stop_words);
    CHECK(a.words == b.words);
    CHECK(a.non_symbol_words == b.non_symbol_words);
    CHECK(std::abs(a.mean_word_length - b.mean_word_length) <= 1e-9);
    CHECK(std::abs(a.symbol_ratio - b.symbol_ratio) <= 1e-9);
    CHECK(std::abs(a.alpha_word_frac - b.alpha_word_frac) <= 1e-9);
    CHECK(a.stop_word_hits == b.stop_word_hits);
}

TEST_CASE("gopher quality individual checks") {
    GopherQualityConfig cfg;
    cfg.min_words = 1;
    cfg.min_stop_word_hits = 0;
    CHECK(gopher_quality(doc_of("aa bb cc"), cfg).reason == "gopher_quality:mean_word_length");
    CHECK(gopher_quality(doc_of("extraordinariamente inconstitucionalmente"), cfg).reason ==
          "gopher_quality:mean_word_length");
    CHECK(gopher_quality(doc_of("• casa amarela\n• porta verde\n- janela azul"), cfg).reason ==
          "gopher_quality:bullet_lines");
    CHECK(gopher_quality(doc_of("então pois foi assim que tudo começou naquela tarde...\nmais tarde voltámos para casa pelo caminho do rio…\ncerto sim"), cfg).reason ==
          "gopher_quality:ellipsis_lines");
    CHECK(gopher_quality(doc_of("1234 5678 abcd 9012 3456"), cfg).reason == "gopher_quality:alpha_words");
    cfg.min_stop_word_hits = 2;
    CHECK(gopher_quality(doc_of("casas amarelas bonitas"), cfg).reason == "gopher_quality:stop_words");
    CHECK(gopher_quality(doc_of("casas \"De\" bonitas, (que) sim"), cfg).kept());
    cfg.max_words = 2;
    CHECK(gopher_quality(doc_of("casa de pedra"), cfg).reason == "gopher_quality:word_count");
}

TEST_CASE("gopher quality statistics match the oracle") {
    GopherQualityConfig cfg;
    oracle::QualityLimits lim;
    for (const auto& t : fx::repetition_texts(84, 5)) {
        auto a = gopher_quality_stats(t, cfg);
        auto b = oracle::quality_stats(t, cfg.stop_words);
        CHECK(a.words == b.words);
        CHECK(a.non_symbol_words == b.non_symbol_words);
        if (b.non_symbol_words) CHECK(std::abs(a.mean_word_length - b.mean_word_length) <= 1e-9);
        CHECK(std::abs(a.symbol_ratio - b.symbol_ratio) <= 1e-9);
        CHECK(std::abs(a.bullet_line_frac - b.bullet_line_frac) <= 1e-9);
        CHECK(std::abs(a.ellipsis_line_frac - b.ellipsis_line_frac) <= 1e-9);
        CHECK(std::abs(a.alpha_word_frac - b.alpha_word_frac) <= 1e-9);
        CHECK(a.stop_word_hits == b.stop_word_hits);
        CHECK(gopher_quality(doc_of(t), cfg).reason == oracle::quality_decision(b, lim));
    }
}

TEST_CASE("quality config validation") {
    GopherQualityConfig cfg;
    cfg.min_words = 10;
    cfg.max_words = 5;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.mean_word_len_min = 11;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
    cfg = {};
    cfg.alpha_word_frac_min = 2;
    CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

// ---- fineweb --------------------------------------------------------------------

TEST_CASE("fineweb examples") {
    FineWebQualityConfig cfg;
    std::string shorts;
    for (int i = 0; i < 10; ++i) shorts += "linha curta " + std::to_string(i) + ".\n";
    CHECK(fineweb_quality(doc_of(shorts), cfg).reason == "fineweb:short_line_frac");

    fx::Rng rng(4);
    auto three = fx::portuguese_paragraph(rng, 3) + "\n\n" + fx::portuguese_paragraph(rng, 3) + "\n\n" +
                 fx::portuguese_paragraph(rng, 3);
    CHECK(fineweb_quality(doc_of(three), cfg).kept());
    auto st = fineweb_quality_stats(three, cfg);
    CHECK(st.lines == 9);
    CHECK(st.short_line_frac == 0.0);
    CHECK(st.line_punct_frac == 1.0);
    CHECK(st.char_dup_frac == 0.0);

    std::string one = "Uma única linha bastante comprida que termina com um ponto final como manda a regra.";
    auto os = fineweb_quality_stats(one, cfg);
    CHECK(os.line_punct_frac == 1.0);
    CHECK(fineweb_quality(doc_of(one), cfg).kept());
    CHECK(fineweb_quality(doc_of("  \n \n"), cfg).reason == "fineweb:empty");
}

TEST_CASE("fineweb remaining checks") {
    FineWebQualityConfig cfg;
    std::string nopunct;
    for (int i = 0; i < 10; ++i) nopunct += "uma linha bastante longa sem pontuação no final " + std::to_string(i) + "\n";
    CHECK(fineweb_quality(doc_of(nopunct), cfg).reason == "fineweb:line_punct_frac");
    std::string dup = "Esta linha é longa e termina com um ponto final.\nEsta linha é longa e termina com um ponto final.";
    CHECK(fineweb_quality(doc_of(dup), cfg).reason == "fineweb:char_dup_frac");
    std::string tall;
    for (int i = 0; i < 10; ++i) tall += "Palavra número " + std::to_string(i) + " longa demais.\n\n\n";
    cfg.short_line_frac_max = 1.0;
    CHECK(fineweb_quality(doc_of(tall), cfg).reason == "fineweb:newline_ratio");
}

TEST_CASE("fineweb statistics match the oracle") {
    FineWebQualityConfig cfg;
    for (const auto& t : fx::repetition_texts(84, 23)) {
        auto a = fineweb_quality_stats(t, cfg);
        auto b = oracle::fineweb_stats(t);
        CHECK(a.lines == b.lines);
        CHECK(std::abs(a.short_line_frac - b.short_line_frac) <= 1e-9);
        CHECK(std::abs(a.line_punct_frac - b.line_punct_frac) <= 1e-9);
        CHECK(std::abs(a.char_dup_frac - b.char_dup_frac) <= 1e-9);
        CHECK(std::abs(a.new_line_ratio - b.new_line_ratio) <= 1e-9);
        CHECK(fineweb_quality(doc_of(t), cfg).reason == oracle::fineweb_decision(b));
    }
}

// ---- monotonicity -------------------------------------------------------------

TEST_CASE("relaxing maxima never turns keep into drop") {
    auto texts = fx::repetition_texts(70, 31);
    for (double scale : {1.1, 1.5, 3.0}) {
        GopherRepetitionConfig base, loose;
        loose.dup_line_frac_max = std::min(1.0, base.dup_line_frac_max * scale);
        loose.dup_paragraph_frac_max = std::min(1.0, base.dup_paragraph_frac_max * scale);
        loose.dup_line_char_frac_max = std::min(1.0, base.dup_line_char_frac_max * scale);
        loose.dup_paragraph_char_frac_max = std::min(1.0, base.dup_paragraph_char_frac_max * scale);
        for (auto& [n, v] : loose.top_ngram_char_frac_max) v = std::min(1.0, v * scale);
        for (auto& [n, v] : loose.dup_ngram_char_frac_max) v = std::min(1.0, v * scale);
        FineWebQualityConfig fb, fl;
        fl.short_line_frac_max = std::min(1.0, fb.short_line_frac_max * scale);
        fl.char_dup_frac_max = std::min(1.0, fb.char_dup_frac_max * scale);
        fl.new_line_ratio_max = std::min(1.0, fb.new_line_ratio_max * scale);
        GopherQualityConfig qb, ql;
        ql.symbol_word_ratio_max = std::min(1.0, qb.symbol_word_ratio_max * scale);
        ql.bullet_line_frac_max = std::min(1.0, qb.bullet_line_frac_max * scale);
        ql.ellipsis_line_frac_max = std::min(1.0, qb.ellipsis_line_frac_max * scale);
        for (const auto& t : texts) {
            auto d = doc_of(t);
            if (gopher_repetition(d, base).kept()) CHECK(gopher_repetition(d, loose).kept());
            if (fineweb_quality(d, fb).kept()) CHECK(fineweb_quality(d, fl).kept());
            if (gopher_quality(d, qb).kept()) CHECK(gopher_quality(d, ql).kept());
        }
    }
}

TEST_CASE("tightening a maximum never rescues a drop for that reason") {
    GopherRepetitionConfig base, tight;
    tight.dup_line_frac_max = 0.1;
    for (const auto& t : fx::repetition_texts(70, 8)) {
        auto v = gopher_repetition(doc_of(t), base);
        if (v.reason == "gopher_rep:dup_line_frac") CHECK_FALSE(gopher_repetition(doc_of(t), tight).kept());
    }
}

// ---- variant --------------------------------------------------------------------

TEST_CASE("variant score examples") {
    auto lex = default_variant_lexicon();
    CHECK(variant_score("Vou à estação de comboios.", lex) == 1.0);
    CHECK(variant_score("Peguei o trem e o ônibus.", lex) == -1.0);
    CHECK(variant_score("Hoje está sol.", lex) == 0.0);
    CHECK(variant_score("", lex) == 0.0);
    CHECK(variant_score("O COMBOIO e o Trem.", lex) == 0.0);
    CHECK(variant_score("Tomei o café da manhã no comboio e no autocarro.", lex) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("variant matching is whole-word") {
    auto lex = default_variant_lexicon();
    auto h = variant_hits("comboiozinho trem-bala tremendo 2trem equipa", lex);
    CHECK(h.pt_pt == 1);
    CHECK(h.pt_br == 0);
    auto g = variant_hits("celular, celulares; (trem)", lex);
    CHECK(g.pt_br == 3);
}

TEST_CASE("variant score is antisymmetric under swapping") {
    auto lex = default_variant_lexicon();
    auto swapped = lex.swapped();
    fx::Rng rng(12);
    std::vector<std::string> words;
    for (const auto& [a, b] : lex.pairs) {
        words.push_back(a);
        words.push_back(b);
    }
    words.insert(words.end(), {"casa", "de", "o", "a", "rio", "luz"});
    for (int i = 0; i < 300; ++i) {
        std::string t;
        for (std::size_t k = 0; k < rng.below(15); ++k) t += rng.pick(words) + (rng.below(4) ? " " : ", ");
        CHECK(variant_score(t, swapped) == -variant_score(t, lex));
        auto s = variant_score(t, lex);
        CHECK(s >= -1.0);
        CHECK(s <= 1.0);
    }
}

TEST_CASE("variant lexicon validation and loading") {
    CHECK_THROWS_AS(make_variant_lexicon({{"trem", "trem"}}), ConfigError);
    CHECK_THROWS_AS(make_variant_lexicon({{"", "trem"}}), ConfigError);
    auto l = make_variant_lexicon({{"  Pequeno-Almoço ", "café  da manhã"}});
    CHECK(l.pairs[0].first == "pequeno-almoço");
    CHECK(l.pairs[0].second == "café da manhã");
    cf_test::TempDir dir("lex");
    {
        std::ofstream(dir / "lex.tsv") << "# pt\tbr\nautocarro\tônibus\n\ncomboio\ttrem\n";
        std::ofstream(dir / "bad.tsv") << "sem tabulação\n";
    }
    auto loaded = load_variant_lexicon(dir / "lex.tsv");
    CHECK(loaded.pairs.size() == 2);
    CHECK_THROWS_AS(load_variant_lexicon(dir / "bad.tsv"), ConfigError);
}

TEST_CASE("variant filter annotates and optionally drops") {
    VariantRule rule;
    auto d = doc_of("Apanhei o trem.");
    CHECK(variant_filter(d, rule).kept());
    CHECK(d.annotations.count("variant"));
    rule.drop_below = 0.0;
    auto e = doc_of("Apanhei o trem.");
    CHECK(variant_filter(e, rule).reason == "variant:pt_br");
    auto f = doc_of("Apanhei o comboio.");
    CHECK(variant_filter(f, rule).kept());
}
