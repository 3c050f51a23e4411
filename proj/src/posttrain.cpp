// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/posttrain.hpp"

#include <algorithm>

#include <toml.hpp>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/hash.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::posttrain {
namespace {

constexpr std::string_view kStage = "posttrain";

bool is_blank(std::string_view s) { return text::trim(s).empty(); }

std::string strip_one(std::string_view s, const TagPair& tag) {
    if (tag.open.empty() || tag.close.empty()) throw ConfigError("trace tags must be non-empty");
    std::vector<std::string> pieces;
    std::string cur;
    int depth = 0;
    bool removed = false;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s.substr(i).starts_with(tag.open)) {
            if (depth == 0) {
                pieces.push_back(std::move(cur));
                cur.clear();
                removed = true;
            }
            ++depth;
            i += tag.open.size();
        } else if (depth > 0 && s.substr(i).starts_with(tag.close)) {
            --depth;
            i += tag.close.size();
        } else {
            if (depth == 0) cur.push_back(s[i]);
            ++i;
        }
    }
    if (!removed) return std::string(s);
    pieces.push_back(depth == 0 ? std::move(cur) : std::string());

    std::string out;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
        std::string_view p = pieces[k];
        if (k > 0) p = text::trim_left(p);
        if (k + 1 < pieces.size()) p = text::trim_right(p);
        if (p.empty()) continue;
        if (!out.empty()) out.push_back('\n');
        out.append(p);
    }
    return out;
}

std::string json_string(const Json& j, std::string_view field, bool required) {
    auto it = j.find(std::string(field));
    if (it == j.end() || it->is_null()) {
        if (required) throw DataError("missing field '" + std::string(field) + "'");
        return {};
    }
    if (!it->is_string()) throw DataError("field '" + std::string(field) + "' must be a string");
    return it->get<std::string>();
}

}  // namespace

Json entry_to_json(const SftEntry& e) {
    Json msgs = Json::array();
    for (const auto& m : e.messages) msgs.push_back(Json{{"role", m.role}, {"content", m.content}});
    Json j{{"id", e.id}, {"source", e.source}, {"messages", std::move(msgs)}, {"lang", e.language}};
    if (e.quality_score) j["quality_score"] = *e.quality_score;
    j["tokens"] = e.token_count;
    return j;
}

SftEntry entry_from_json(const Json& j) {
    if (!j.is_object()) throw DataError("SFT entry must be a JSON object");
    SftEntry e;
    e.id = json_string(j, "id", true);
    e.source = json_string(j, "source", false);
    e.language = json_string(j, "lang", false);
    auto msgs = j.find("messages");
    if (msgs == j.end() || !msgs->is_array()) throw DataError("entry '" + e.id + "': messages must be an array");
    for (const auto& m : *msgs) {
        if (!m.is_object()) throw DataError("entry '" + e.id + "': message must be an object");
        e.messages.push_back({json_string(m, "role", true), json_string(m, "content", true)});
    }
    if (auto q = j.find("quality_score"); q != j.end() && !q->is_null()) {
        if (!q->is_number()) throw DataError("entry '" + e.id + "': quality_score must be a number");
        e.quality_score = q->get<double>();
    }
    if (auto t = j.find("tokens"); t != j.end() && !t->is_null()) {
        if (!t->is_number_unsigned() && !(t->is_number_integer() && t->get<std::int64_t>() >= 0)) {
            throw DataError("entry '" + e.id + "': tokens must be a non-negative integer");
        }
        e.token_count = t->get<std::uint64_t>();
    }
    return e;
}

Verdict check_entry(const SftEntry& e) {
    std::size_t i = 0;
    if (!e.messages.empty() && e.messages[0].role == "system") i = 1;
    if (i >= e.messages.size()) return Verdict::drop(kStage, reason::posttrain_invalid_entry);
    for (std::size_t k = i; k < e.messages.size(); ++k) {
        const char* want = (k - i) % 2 == 0 ? "user" : "assistant";
        if (e.messages[k].role != want) return Verdict::drop(kStage, reason::posttrain_invalid_entry);
    }
    for (const auto& m : e.messages) {
        if (is_blank(m.content)) return Verdict::drop(kStage, reason::posttrain_empty_message);
    }
    return Verdict::keep(kStage);
}

std::uint64_t entry_tokens(const SftEntry& e, const Tokenizer& tok) {
    std::uint64_t n = 0;
    for (const auto& m : e.messages) n += tok.count(m.content);
    return n;
}

std::vector<TagPair> default_trace_tags() { return {{"<think>", "</think>"}}; }

std::string strip_traces(std::string_view content, std::span<const TagPair> tags) {
    std::string s(content);
    for (const auto& t : tags) s = strip_one(s, t);
    return s;
}

SftEntry strip_reasoning_traces(SftEntry e, std::span<const TagPair> tags) {
    for (auto& m : e.messages) {
        if (m.role == "assistant") m.content = strip_traces(m.content, tags);
    }
    return e;
}

std::vector<std::string> default_self_ref_patterns() {
    return {"as an AI language model", "ChatGPT", "GPT-4", "Claude", "Gemini", "LLaMA", "Qwen", "DeepSeek"};
}

Verdict filter_self_referential(const SftEntry& e, std::span<const std::string> patterns) {
    if (patterns.empty()) throw ConfigError("self-reference pattern list must not be empty");
    std::vector<std::string> folded;
    for (const auto& p : patterns) {
        if (p.empty()) throw ConfigError("self-reference patterns must be non-empty");
        folded.push_back(text::case_fold(text::nfc(p)));
    }
    for (const auto& m : e.messages) {
        if (m.role != "assistant") continue;
        auto c = text::case_fold(text::nfc(m.content));
        for (const auto& p : folded) {
            if (c.find(p) != std::string::npos) return Verdict::drop(kStage, reason::posttrain_self_ref);
        }
    }
    return Verdict::keep(kStage);
}

Verdict quality_verdict(const SftEntry& e, double min_score) {
    if (!e.quality_score) return Verdict::keep(kStage);
    double s = *e.quality_score;
    if (!(s >= 1.0 && s <= 6.0)) return Verdict::drop(kStage, reason::posttrain_score_out_of_range);
    if (s < min_score) return Verdict::drop(kStage, reason::posttrain_low_quality);
    return Verdict::keep(kStage);
}

QualityFilterResult filter_quality_score(std::vector<SftEntry> entries, double min_score) {
    if (!(min_score >= 1.0 && min_score <= 6.0)) throw ConfigError("min quality score must be in [1, 6]");
    QualityFilterResult r;
    r.stats.stage = "quality_score";
    for (auto& e : entries) {
        auto v = quality_verdict(e, min_score);
        r.stats.record(v, e.token_count, e.token_count);
        if (v.kept()) {
            if (!e.quality_score) ++r.unscored;
            r.kept.push_back(std::move(e));
        } else if (v.reason == reason::posttrain_score_out_of_range) {
            r.quarantined.push_back(std::move(e));
        }
    }
    return r;
}

std::string prompt_key(const SftEntry& e) {
    std::string key;
    bool first = true;
    for (const auto& m : e.messages) {
        if (m.role != "user") continue;
        if (!first) key.push_back('\x1f');
        first = false;
        key += text::collapse_whitespace(text::nfc(m.content));
    }
    return key;
}

bool PromptDeduper::admit(const SftEntry& e) { return seen_.insert(prompt_key(e)).second; }

std::vector<SftEntry> dedup_by_prompt(std::vector<SftEntry> entries, StageStats* stats) {
    PromptDeduper d;
    if (stats && stats->stage.empty()) stats->stage = "prompt_dedup";
    std::vector<SftEntry> out;
    for (auto& e : entries) {
        bool keep = d.admit(e);
        if (stats) {
            if (keep) {
                stats->record_keep(e.token_count, e.token_count);
            } else {
                stats->record_drop(reason::posttrain_duplicate_prompt, e.token_count);
            }
        }
        if (keep) out.push_back(std::move(e));
    }
    return out;
}

bool unbox_selected(std::string_view id, double p, std::uint64_t seed) {
    return hashing::to_unit_interval(hashing::combine(seed, hashing::hash_string(id))) < p;
}

std::optional<std::string> unbox_text(std::string_view s) {
    static constexpr std::string_view kBoxed = "\\boxed{";
    std::string out;
    std::size_t i = 0;
    while (true) {
        auto pos = s.find(kBoxed, i);
        if (pos == std::string_view::npos) break;
        out.append(s.substr(i, pos - i));
        std::size_t k = pos + kBoxed.size();
        int depth = 1;
        while (k < s.size() && depth > 0) {
            if (s[k] == '\\' && k + 1 < s.size() && (s[k + 1] == '{' || s[k + 1] == '}')) {
                k += 2;
                continue;
            }
            if (s[k] == '{') ++depth;
            if (s[k] == '}') --depth;
            ++k;
        }
        if (depth != 0) return std::nullopt;
        auto inner = unbox_text(s.substr(pos + kBoxed.size(), k - 1 - (pos + kBoxed.size())));
        if (!inner) return std::nullopt;
        out += *inner;
        i = k;
    }
    out.append(s.substr(i));
    return out;
}

UnboxResult unbox_math(SftEntry e, double p, std::uint64_t seed) {
    if (!(p >= 0.0 && p <= 1.0)) throw ContractError("unbox probability must be in [0, 1]");
    UnboxResult r;
    r.selected = unbox_selected(e.id, p, seed);
    if (r.selected) {
        auto last = std::find_if(e.messages.rbegin(), e.messages.rend(), [](const Message& m) { return m.role == "assistant"; });
        if (last != e.messages.rend()) {
            if (auto t = unbox_text(last->content)) {
                r.changed = *t != last->content;
                last->content = std::move(*t);
            } else {
                r.unbalanced = true;
            }
        }
    }
    r.entry = std::move(e);
    return r;
}

Verdict filter_long_context(const SftEntry& e, std::uint64_t max_tokens) {
    if (e.token_count > max_tokens) return Verdict::drop(kStage, reason::posttrain_too_long);
    return Verdict::keep(kStage);
}

Verdict filter_code_repos(const RepoMeta& m, std::uint64_t min_stars, std::uint64_t min_forks) {
    if (m.stars < min_stars) return Verdict::drop(kStage, reason::posttrain_repo_stars);
    if (m.forks < min_forks) return Verdict::drop(kStage, reason::posttrain_repo_forks);
    return Verdict::keep(kStage);
}

std::vector<SourceAdapter> load_adapters(const std::filesystem::path& path) {
    toml::table tbl;
    try {
        tbl = toml::parse_file(path.string());
    } catch (const toml::parse_error& e) {
        throw ConfigError("cannot parse adapters " + path.string() + ": " + std::string(e.description()));
    }
    std::vector<SourceAdapter> out;
    auto* arr = tbl["adapter"].as_array();
    if (!arr) throw ConfigError(path.string() + ": expected [[adapter]] tables");
    for (auto& node : *arr) {
        auto* t = node.as_table();
        if (!t) throw ConfigError(path.string() + ": [[adapter]] entries must be tables");
        SourceAdapter a;
        auto str = [&](std::string_view key, std::string& dst) {
            if (auto v = (*t)[key].value<std::string>()) dst = *v;
        };
        auto opt = [&](std::string_view key, std::optional<std::string>& dst) {
            if (auto v = (*t)[key].value<std::string>()) dst = v->empty() ? std::nullopt : std::optional(*v);
        };
        str("name", a.name);
        if (a.name.empty()) throw ConfigError(path.string() + ": adapter without a name");
        str("id_field", a.id_field);
        str("messages_field", a.messages_field);
        str("role_field", a.role_field);
        str("content_field", a.content_field);
        str("default_lang", a.default_lang);
        opt("system_field", a.system_field);
        opt("prompt_field", a.prompt_field);
        opt("response_field", a.response_field);
        opt("score_field", a.score_field);
        opt("lang_field", a.lang_field);
        if (a.prompt_field.has_value() != a.response_field.has_value()) {
            throw ConfigError("adapter '" + a.name + "': prompt_field and response_field go together");
        }
        if (auto* rm = (*t)["role_map"].as_table()) {
            for (auto& [k, v] : *rm) {
                auto s = v.value<std::string>();
                if (!s) throw ConfigError("adapter '" + a.name + "': role_map values must be strings");
                a.role_map[std::string(k.str())] = *s;
            }
        }
        out.push_back(std::move(a));
    }
    return out;
}

SftEntry adapt_row(const Json& row, const SourceAdapter& a, const Tokenizer& tok, std::string_view fallback_id) {
    if (!row.is_object()) throw DataError("adapter '" + a.name + "': row is not an object");
    SftEntry e;
    e.source = a.name;
    e.id = row.contains(a.id_field) && row[a.id_field].is_string() ? row[a.id_field].get<std::string>()
                                                                   : std::string(fallback_id);
    if (row.contains(a.id_field) && row[a.id_field].is_number_integer()) e.id = row[a.id_field].dump();
    if (a.system_field) {
        auto s = json_string(row, *a.system_field, false);
        if (!s.empty()) e.messages.push_back({"system", std::move(s)});
    }
    if (a.prompt_field) {
        e.messages.push_back({"user", json_string(row, *a.prompt_field, true)});
        e.messages.push_back({"assistant", json_string(row, *a.response_field, true)});
    } else {
        auto it = row.find(a.messages_field);
        if (it == row.end() || !it->is_array()) throw DataError("adapter '" + a.name + "': missing message list");
        for (const auto& m : *it) {
            auto role = json_string(m, a.role_field, true);
            if (auto r = a.role_map.find(role); r != a.role_map.end()) role = r->second;
            e.messages.push_back({std::move(role), json_string(m, a.content_field, true)});
        }
    }
    e.language = a.default_lang;
    if (a.lang_field) {
        auto l = json_string(row, *a.lang_field, false);
        if (!l.empty()) e.language = std::move(l);
    }
    if (a.score_field) {
        if (auto it = row.find(*a.score_field); it != row.end() && !it->is_null()) {
            if (!it->is_number()) throw DataError("adapter '" + a.name + "': score must be numeric");
            e.quality_score = it->get<double>();
        }
    }
    e.token_count = entry_tokens(e, tok);
    return e;
}

std::vector<SftEntry> read_entries(const std::filesystem::path& path) {
    JsonlReader r(path);
    std::vector<SftEntry> out;
    while (auto j = r.next()) {
        try {
            out.push_back(entry_from_json(*j));
        } catch (const DataError& e) {
            throw DataError(path.string() + ":" + std::to_string(r.line_number()) + ": " + e.what());
        }
    }
    return out;
}

void write_entries(const std::filesystem::path& path, std::span<const SftEntry> entries) {
    JsonlWriter w(path);
    for (const auto& e : entries) w.write(entry_to_json(e));
    w.commit();
}

}  // namespace corpus_forge::posttrain
