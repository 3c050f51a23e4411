// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/filters/language.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::filters {
namespace {

constexpr std::string_view kStage = "language";
constexpr std::size_t kMinChars = 20;

template <typename F>
void for_each_ngram(const std::u32string& s, F&& f) {
    for (std::size_t n = 1; n <= kMaxNgram; ++n) {
        if (s.size() < n) break;
        for (std::size_t i = 0; i + n <= s.size(); ++i) {
            f(text::to_utf8(std::u32string_view(s).substr(i, n)), n);
        }
    }
}

}  // namespace

double LangProfile::log_prob(const std::string& ngram, std::size_t order) const {
    auto it = ngram_log_probs.find(ngram);
    if (it != ngram_log_probs.end()) return it->second;
    return unseen_log_prob.at(order - 1);
}

std::u32string ngram_normalize(std::string_view input) {
    auto folded = text::to_u32(text::case_fold(text::nfc(input)));
    std::u32string out = U" ";
    for (char32_t cp : folded) {
        if (text::is_alphabetic(cp)) {
            out.push_back(cp);
        } else if (out.back() != U' ') {
            out.push_back(U' ');
        }
    }
    if (out.back() != U' ') out.push_back(U' ');
    if (out.size() == 1) out.clear();
    return out;
}

std::vector<LangProfile> train_lang_profiles(std::span<const LabeledText> corpus, double smoothing) {
    if (corpus.empty()) throw ConfigError("language corpus is empty");
    if (!(smoothing > 0.0)) throw ConfigError("language smoothing must be positive");

    struct Counts {
        std::array<std::map<std::string, std::uint64_t>, kMaxNgram> by_order;
        std::array<std::uint64_t, kMaxNgram> totals{};
    };
    std::map<std::string, Counts> per_lang;
    for (const auto& item : corpus) {
        if (item.language.empty()) throw ConfigError("language corpus entry without a language code");
        auto& counts = per_lang[item.language];
        for_each_ngram(ngram_normalize(item.text), [&](std::string g, std::size_t n) {
            ++counts.by_order[n - 1][std::move(g)];
            ++counts.totals[n - 1];
        });
    }

    std::vector<LangProfile> out;
    for (const auto& [lang, counts] : per_lang) {
        LangProfile p;
        p.language = lang;
        p.smoothing = smoothing;
        for (std::size_t o = 0; o < kMaxNgram; ++o) {
            const double vocab = static_cast<double>(counts.by_order[o].size() + 1);
            const double denom = static_cast<double>(counts.totals[o]) + smoothing * vocab;
            for (const auto& [g, c] : counts.by_order[o]) {
                p.ngram_log_probs[g] = std::log((static_cast<double>(c) + smoothing) / denom);
            }
            p.unseen_log_prob[o] = std::log(smoothing / denom);
        }
        if (p.ngram_log_probs.empty()) throw ConfigError("language corpus for '" + lang + "' has no letters");
        out.push_back(std::move(p));
    }
    return out;
}

LanguageResult identify_language(std::string_view input, std::span<const LangProfile> profiles) {
    if (profiles.empty()) throw ContractError("identify_language needs at least one profile");
    LanguageResult result;
    result.too_short = text::code_point_count(text::trim(input)) < kMinChars;

    auto s = ngram_normalize(input);
    std::vector<double> scores(profiles.size(), 0.0);
    if (!s.empty()) {
        for_each_ngram(s, [&](const std::string& g, std::size_t n) {
            for (std::size_t i = 0; i < profiles.size(); ++i) scores[i] += profiles[i].log_prob(g, n);
        });
        auto words = static_cast<double>(std::count(s.begin(), s.end(), U' ') - 1);
        for (auto& sc : scores) sc /= std::max(1.0, words);
    }

    // Ties go to the first profile in the given order.
    std::size_t best = 0;
    for (std::size_t i = 1; i < scores.size(); ++i) {
        if (scores[i] > scores[best]) best = i;
    }
    double denom = 0.0;
    for (double sc : scores) denom += std::exp(sc - scores[best]);
    result.language = profiles[best].language;
    result.confidence = 1.0 / denom;
    return result;
}

Verdict language_filter(Document& doc, std::span<const LangProfile> profiles, const LanguageRule& rule) {
    auto r = identify_language(doc.text, profiles);
    doc.language = r.language;
    doc.language_confidence = r.confidence;
    if (r.too_short) return Verdict::drop(kStage, reason::lang_too_short);
    if (r.language != rule.accept) return Verdict::drop(kStage, reason::lang_not_target);
    if (r.confidence < rule.min_confidence) return Verdict::drop(kStage, reason::lang_low_confidence);
    return Verdict::keep(kStage);
}

Json profiles_to_json(std::span<const LangProfile> profiles) {
    Json arr = Json::array();
    for (const auto& p : profiles) {
        // Sorted keys keep the store byte-stable.
        std::map<std::string, double> sorted(p.ngram_log_probs.begin(), p.ngram_log_probs.end());
        Json grams = Json::object();
        for (const auto& [g, lp] : sorted) grams[g] = lp;
        arr.push_back(Json{{"language", p.language},
                           {"smoothing", p.smoothing},
                           {"unseen_log_prob", p.unseen_log_prob},
                           {"ngram_log_probs", std::move(grams)}});
    }
    return Json{{"profiles", std::move(arr)}};
}

std::vector<LangProfile> profiles_from_json(const Json& j) {
    std::vector<LangProfile> out;
    try {
        for (const auto& e : j.at("profiles")) {
            LangProfile p;
            p.language = e.at("language").get<std::string>();
            p.smoothing = e.at("smoothing").get<double>();
            p.unseen_log_prob = e.at("unseen_log_prob").get<std::array<double, kMaxNgram>>();
            for (const auto& [g, lp] : e.at("ngram_log_probs").items()) p.ngram_log_probs[g] = lp.get<double>();
            if (p.ngram_log_probs.empty()) throw ConfigError("profile '" + p.language + "' is empty");
            if (!(p.smoothing > 0.0)) throw ConfigError("profile '" + p.language + "' has non-positive smoothing");
            out.push_back(std::move(p));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed language profile store: ") + e.what());
    }
    if (out.empty()) throw ConfigError("language profile store has no profiles");
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.language < b.language; });
    return out;
}

void save_profiles(const std::filesystem::path& path, std::span<const LangProfile> profiles) {
    write_file(path, profiles_to_json(profiles).dump() + "\n");
}

std::vector<LangProfile> load_profiles(const std::filesystem::path& path) {
    Json j;
    try {
        j = Json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("cannot parse language profiles " + path.string() + ": " + e.what());
    }
    return profiles_from_json(j);
}

}  // namespace corpus_forge::filters
