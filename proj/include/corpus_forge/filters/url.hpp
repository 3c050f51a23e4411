// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "corpus_forge/model.hpp"

namespace corpus_forge::filters {

struct UrlRules {
    /// Host suffixes, each starting with '.'.
    std::set<std::string> blocked_tlds{".br"};
    /// Hostnames (matching the host or any subdomain of it) or, when the
    /// entry starts with '.', bare suffixes.
    std::set<std::string> blocklist;

    void validate() const;
};

/// One hostname or suffix per line; '#' starts a comment.
std::set<std::string> load_blocklist(const std::filesystem::path& path);

/// Lower-cased host of an absolute URL (`scheme://[user@]host[:port]...`),
/// without a trailing dot. nullopt when the URL has no parseable host.
std::optional<std::string> url_host(std::string_view url);

Verdict url_filter(std::string_view url, const UrlRules& rules);

}  // namespace corpus_forge::filters
