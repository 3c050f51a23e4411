// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/filters/url.hpp"

#include <algorithm>
#include <fstream>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::filters {
namespace {

constexpr std::string_view kStage = "url";

bool valid_host_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '-' || c == '.' || c == '_' || u >= 0x80;
}

bool host_matches(std::string_view host, std::string_view entry) {
    if (entry.starts_with('.')) return host.ends_with(entry);
    if (host == entry) return true;
    return host.size() > entry.size() && host.ends_with(entry) && host[host.size() - entry.size() - 1] == '.';
}

}  // namespace

void UrlRules::validate() const {
    for (const auto& tld : blocked_tlds) {
        if (tld.size() < 2 || tld.front() != '.') {
            throw ConfigError("url.blocked_tlds entries must start with '.', got '" + tld + "'");
        }
    }
}

std::set<std::string> load_blocklist(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open blocklist " + path.string());
    std::set<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        auto entry = text::ascii_lower(text::trim(std::string_view(line).substr(0, hash)));
        if (!entry.empty()) out.insert(entry);
    }
    return out;
}

std::optional<std::string> url_host(std::string_view url) {
    url = text::trim(url);
    auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos || scheme_end == 0) return std::nullopt;
    for (char c : url.substr(0, scheme_end)) {
        auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && c != '+' && c != '-' && c != '.') return std::nullopt;
    }
    auto authority = url.substr(scheme_end + 3);
    authority = authority.substr(0, authority.find_first_of("/?#"));
    if (auto at = authority.rfind('@'); at != std::string_view::npos) authority.remove_prefix(at + 1);
    std::string_view host;
    if (authority.starts_with('[')) {
        auto close = authority.find(']');
        if (close == std::string_view::npos) return std::nullopt;
        host = authority.substr(0, close + 1);
    } else {
        host = authority.substr(0, authority.find(':'));
        if (!std::all_of(host.begin(), host.end(), valid_host_char)) return std::nullopt;
    }
    while (host.ends_with('.')) host.remove_suffix(1);
    if (host.empty()) return std::nullopt;
    return text::ascii_lower(host);
}

Verdict url_filter(std::string_view url, const UrlRules& rules) {
    auto host = url_host(url);
    if (!host) return Verdict::drop(kStage, reason::url_malformed);
    for (const auto& tld : rules.blocked_tlds) {
        if (host->ends_with(text::ascii_lower(tld))) return Verdict::drop(kStage, reason::url_br_domain);
    }
    for (const auto& entry : rules.blocklist) {
        if (host_matches(*host, entry)) return Verdict::drop(kStage, reason::url_blocklist);
    }
    return Verdict::keep(kStage);
}

}  // namespace corpus_forge::filters
