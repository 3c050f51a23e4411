// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/model.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdio>
#include <map>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge {

std::optional<Date> parse_iso_date(std::string_view s) {
    if (s.size() < 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0;
    unsigned d = 0;
    auto ok = [](std::string_view part, auto& value) {
        auto res = std::from_chars(part.data(), part.data() + part.size(), value);
        return res.ec == std::errc{} && res.ptr == part.data() + part.size();
    };
    if (!ok(s.substr(0, 4), y) || !ok(s.substr(5, 2), m) || !ok(s.substr(8, 2), d)) return std::nullopt;
    if (s.size() > 10 && s[10] != 'T' && s[10] != ' ') return std::nullopt;
    Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!date.ok()) return std::nullopt;
    return date;
}

std::string format_iso_date(Date d) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(d.year()), static_cast<unsigned>(d.month()),
                  static_cast<unsigned>(d.day()));
    return buf;
}

namespace reason {

std::span<const std::string_view> all() {
    static constexpr std::array codes{
        ingest_not_document,
        embargo_too_recent,
        embargo_missing_date,
        url_malformed,
        url_br_domain,
        url_blocklist,
        extract_empty,
        lang_too_short,
        lang_not_target,
        lang_low_confidence,
        gopher_rep_dup_para_frac,
        gopher_rep_dup_para_char_frac,
        gopher_rep_dup_line_frac,
        gopher_rep_dup_line_char_frac,
        gopher_rep_top_2_gram,
        gopher_rep_top_3_gram,
        gopher_rep_top_4_gram,
        gopher_rep_dup_5_gram,
        gopher_rep_dup_6_gram,
        gopher_rep_dup_7_gram,
        gopher_rep_dup_8_gram,
        gopher_rep_dup_9_gram,
        gopher_rep_dup_10_gram,
        gopher_quality_word_count,
        gopher_quality_mean_word_length,
        gopher_quality_symbol_ratio,
        gopher_quality_bullet_lines,
        gopher_quality_ellipsis_lines,
        gopher_quality_alpha_words,
        gopher_quality_stop_words,
        fineweb_empty,
        fineweb_short_line_frac,
        fineweb_line_punct_frac,
        fineweb_char_dup_frac,
        fineweb_newline_ratio,
        variant_pt_br,
        dedup_near_duplicate,
        split_high,
        split_medium,
        split_low,
        split_unscored,
        posttrain_invalid_entry,
        posttrain_empty_message,
        posttrain_self_ref,
        posttrain_low_quality,
        posttrain_score_out_of_range,
        posttrain_duplicate_prompt,
        posttrain_too_long,
        posttrain_repo_stars,
        posttrain_repo_forks,
    };
    return codes;
}

bool is_known(std::string_view code) {
    auto codes = all();
    return std::find(codes.begin(), codes.end(), code) != codes.end();
}

}  // namespace reason

Verdict Verdict::keep(std::string_view stage) { return Verdict{Decision::Keep, {}, std::string(stage)}; }

Verdict Verdict::drop(std::string_view stage, std::string_view reason_code) {
    if (!reason::is_known(reason_code)) {
        throw ContractError("unknown drop reason code: " + std::string(reason_code));
    }
    return Verdict{Decision::Drop, std::string(reason_code), std::string(stage)};
}

void StageStats::record_keep(std::uint64_t tokens_before, std::uint64_t tokens_after) {
    ++seen;
    ++kept;
    tokens_in += tokens_before;
    tokens_out += tokens_after;
}

void StageStats::record_drop(std::string_view reason_code, std::uint64_t tokens_before) {
    ++seen;
    ++dropped_by_reason[std::string(reason_code)];
    tokens_in += tokens_before;
}

void StageStats::record(const Verdict& v, std::uint64_t tokens_before, std::uint64_t tokens_after) {
    if (v.kept()) {
        record_keep(tokens_before, tokens_after);
    } else {
        record_drop(v.reason, tokens_before);
    }
}

std::uint64_t StageStats::dropped() const {
    std::uint64_t total = 0;
    for (const auto& [_, n] : dropped_by_reason) total += n;
    return total;
}

StageStats merge_stats(const StageStats& a, const StageStats& b) {
    if (!a.stage.empty() && !b.stage.empty() && a.stage != b.stage) {
        throw ContractError("cannot merge stats of stage '" + a.stage + "' with stage '" + b.stage + "'");
    }
    StageStats out;
    out.stage = a.stage.empty() ? b.stage : a.stage;
    out.seen = a.seen + b.seen;
    out.kept = a.kept + b.kept;
    out.tokens_in = a.tokens_in + b.tokens_in;
    out.tokens_out = a.tokens_out + b.tokens_out;
    out.dropped_by_reason = a.dropped_by_reason;
    for (const auto& [code, n] : b.dropped_by_reason) out.dropped_by_reason[code] += n;
    return out;
}

struct Tokenizer::Trie {
    struct Node {
        std::map<unsigned char, std::uint32_t> next;
        bool terminal = false;
    };
    std::vector<Node> nodes{Node{}};

    void insert(std::string_view word) {
        std::uint32_t at = 0;
        for (unsigned char c : word) {
            auto it = nodes[at].next.find(c);
            if (it == nodes[at].next.end()) {
                nodes.push_back(Node{});
                auto fresh = static_cast<std::uint32_t>(nodes.size() - 1);
                nodes[at].next.emplace(c, fresh);
                at = fresh;
            } else {
                at = it->second;
            }
        }
        nodes[at].terminal = true;
    }

    // Length in bytes of the longest entry that prefixes `s`, or 0.
    [[nodiscard]] std::size_t longest_prefix(std::string_view s) const {
        std::uint32_t at = 0;
        std::size_t best = 0;
        for (std::size_t i = 0; i < s.size(); ++i) {
            auto it = nodes[at].next.find(static_cast<unsigned char>(s[i]));
            if (it == nodes[at].next.end()) break;
            at = it->second;
            if (nodes[at].terminal) best = i + 1;
        }
        return best;
    }
};

Tokenizer::Tokenizer() = default;

Tokenizer::Tokenizer(const TokenizerSpec& spec) : spec_(spec) {
    if (spec_.kind != TokenizerKind::Vocabulary) return;
    auto trie = std::make_shared<Trie>();
    for (const auto& entry : spec_.vocabulary) {
        if (!entry.empty()) trie->insert(entry);
    }
    if (trie->nodes.size() == 1) throw ConfigError("vocabulary tokenizer requires a non-empty vocabulary");
    trie_ = std::move(trie);
}

std::uint64_t Tokenizer::count(std::string_view text) const {
    if (spec_.kind == TokenizerKind::Whitespace) return text::split_whitespace(text).size();
    std::uint64_t n = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t match = trie_->longest_prefix(text.substr(pos));
        if (match == 0) {
            text::next_code_point(text, pos);
        } else {
            pos += match;
        }
        ++n;
    }
    return n;
}

std::uint64_t count_tokens(std::string_view text, const TokenizerSpec& spec) { return Tokenizer(spec).count(text); }

}  // namespace corpus_forge
