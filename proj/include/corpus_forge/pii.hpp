// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace corpus_forge::pii {

enum class PiiCategory { Email, Phone, Ip };

std::string_view category_name(PiiCategory c);
/// `<EMAIL>`, `<PHONE>` or `<IP>`.
std::string_view replacement_token(PiiCategory c);

/// Byte span [start, end) of the original text.
struct Replacement {
    std::size_t start = 0;
    std::size_t end = 0;
    PiiCategory category = PiiCategory::Email;

    friend bool operator==(const Replacement&, const Replacement&) = default;
};

struct RedactionReport {
    std::size_t emails = 0;
    std::size_t phones = 0;
    std::size_t public_ips = 0;
    /// Sorted, non-overlapping.
    std::vector<Replacement> replacements;

    [[nodiscard]] std::size_t total() const { return replacements.size(); }
};

struct ScrubResult {
    std::string text;
    RedactionReport report;
};

/// Replaces e-mail addresses, phone numbers (international `+CC` / `00351`
/// and Portuguese 9-digit national numbers starting 2, 3 or 9) and public
/// IPv4/IPv6 literals. Text outside the reported spans is untouched.
ScrubResult scrub_pii(std::string_view text);

/// False for private, loopback, link-local, documentation, multicast and
/// other special-purpose ranges.
bool is_public_ipv4(std::uint32_t addr);
/// `bytes` is the 16-byte network-order address.
bool is_public_ipv6(const unsigned char* bytes);
/// Parses a literal and classifies it; false when it does not parse.
bool is_public_ip(std::string_view literal);

/// damaged text -> repaired text.
struct MojibakeTable {
    std::map<std::string, std::string> entries;

    /// Throws ConfigError on empty keys or replacements, or when a
    /// replacement shares a code point with any key. That rule keeps
    /// fix_encoding idempotent.
    void validate() const;
};

/// UTF-8 Portuguese text that was decoded as Latin-1/Windows-1252.
MojibakeTable default_mojibake_table();
/// `damaged<TAB>repaired` per line, UTF-8.
MojibakeTable load_mojibake_table(const std::filesystem::path& path);

/// One left-to-right pass, replacing the longest matching key at each
/// position.
std::string fix_encoding(std::string_view text, const MojibakeTable& table);

}  // namespace corpus_forge::pii
