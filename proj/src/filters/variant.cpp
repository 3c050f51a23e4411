// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/filters/variant.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::filters {
namespace {

constexpr std::string_view kStage = "variant";

std::u32string normalize(std::string_view s) {
    return text::to_u32(text::collapse_whitespace(text::case_fold(text::nfc(s))));
}

bool is_word_char(char32_t c) { return c == U'-' || text::is_alphanumeric(c); }

std::size_t count_term(const std::u32string& hay, const std::u32string& term) {
    std::size_t n = 0;
    std::size_t pos = hay.find(term);
    while (pos != std::u32string::npos) {
        std::size_t end = pos + term.size();
        bool left_ok = pos == 0 || !is_word_char(hay[pos - 1]);
        bool right_ok = end == hay.size() || !is_word_char(hay[end]);
        if (left_ok && right_ok) {
            ++n;
            pos = hay.find(term, end);
        } else {
            pos = hay.find(term, pos + 1);
        }
    }
    return n;
}

}  // namespace

void VariantLexicon::validate() const {
    for (const auto& [pt, br] : pairs) {
        if (pt.empty() || br.empty()) throw ConfigError("variant lexicon has an empty term");
        if (pt == br) throw ConfigError("variant lexicon pair has identical sides: '" + pt + "'");
    }
}

VariantLexicon VariantLexicon::swapped() const {
    VariantLexicon out;
    out.pairs.reserve(pairs.size());
    for (const auto& [pt, br] : pairs) out.pairs.emplace_back(br, pt);
    return out;
}

VariantLexicon make_variant_lexicon(std::vector<std::pair<std::string, std::string>> pairs) {
    VariantLexicon lex;
    for (auto& [pt, br] : pairs) {
        lex.pairs.emplace_back(text::to_utf8(normalize(pt)), text::to_utf8(normalize(br)));
    }
    lex.validate();
    return lex;
}

VariantLexicon default_variant_lexicon() {
    return make_variant_lexicon({
        {"comboio", "trem"},
        {"comboios", "trens"},
        {"autocarro", "ônibus"},
        {"pequeno-almoço", "café da manhã"},
        {"telemóvel", "celular"},
        {"telemóveis", "celulares"},
        {"casa de banho", "banheiro"},
        {"frigorífico", "geladeira"},
        {"ecrã", "tela"},
        {"sumo", "suco"},
        {"rapariga", "moça"},
        {"equipa", "equipe"},
        {"talho", "açougue"},
        {"passadeira", "faixa de pedestres"},
        {"utente", "usuário"},
        {"registo", "registro"},
        {"guarda-redes", "goleiro"},
        {"relvado", "gramado"},
        {"contacto", "contato"},
        {"receção", "recepção"},
        {"económico", "econômico"},
        {"género", "gênero"},
        {"bebé", "bebê"},
        {"camião", "caminhão"},
    });
}

VariantLexicon load_variant_lexicon(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open variant lexicon " + path.string());
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos || line.find('\t', tab + 1) != std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected pt_pt<TAB>pt_br");
        }
        pairs.emplace_back(line.substr(0, tab), line.substr(tab + 1));
    }
    return make_variant_lexicon(std::move(pairs));
}

VariantHits variant_hits(std::string_view input, const VariantLexicon& lex) {
    VariantHits h;
    auto hay = normalize(input);
    // A term listed in several pairs still counts once per occurrence.
    std::set<std::string> pt_terms;
    std::set<std::string> br_terms;
    for (const auto& [pt, br] : lex.pairs) {
        pt_terms.insert(pt);
        br_terms.insert(br);
    }
    for (const auto& t : pt_terms) h.pt_pt += count_term(hay, text::to_u32(t));
    for (const auto& t : br_terms) h.pt_br += count_term(hay, text::to_u32(t));
    return h;
}

double variant_score(std::string_view input, const VariantLexicon& lex) {
    auto h = variant_hits(input, lex);
    auto pt = static_cast<double>(h.pt_pt);
    auto br = static_cast<double>(h.pt_br);
    return (pt - br) / std::max(1.0, pt + br);
}

Verdict variant_filter(Document& doc, const VariantRule& rule) {
    double score = variant_score(doc.text, rule.lexicon);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", score);
    doc.annotations[std::string(kStage)] = buf;
    if (rule.drop_below && score < *rule.drop_below) return Verdict::drop(kStage, reason::variant_pt_br);
    return Verdict::keep(kStage);
}

}  // namespace corpus_forge::filters
