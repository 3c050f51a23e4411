// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/pii.hpp"

#include <arpa/inet.h>

#include <algorithm>
#include <array>
#include <fstream>
#include <iterator>
#include <set>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::pii {
namespace {

struct Cp {
    char32_t c;
    std::size_t off;
};

struct Candidate {
    std::size_t begin;  // code-point indices
    std::size_t end;
    PiiCategory category;
};

class Scanner {
   public:
    explicit Scanner(std::string_view s) : s_(s) {
        std::size_t pos = 0;
        while (pos < s.size()) {
            std::size_t off = pos;
            char32_t c = text::next_code_point(s, pos);
            cps_.push_back({c, off});
        }
    }

    [[nodiscard]] std::size_t size() const { return cps_.size(); }
    [[nodiscard]] char32_t at(std::size_t i) const { return i < cps_.size() ? cps_[i].c : 0; }
    [[nodiscard]] char32_t before(std::size_t i) const { return i > 0 ? cps_[i - 1].c : 0; }
    [[nodiscard]] std::size_t offset(std::size_t i) const { return i < cps_.size() ? cps_[i].off : s_.size(); }
    [[nodiscard]] std::string_view slice(std::size_t b, std::size_t e) const {
        return s_.substr(offset(b), offset(e) - offset(b));
    }

   private:
    std::string_view s_;
    std::vector<Cp> cps_;
};

bool is_digit(char32_t c) { return c >= U'0' && c <= U'9'; }
bool is_ascii_alpha(char32_t c) { return (c >= U'a' && c <= U'z') || (c >= U'A' && c <= U'Z'); }
bool is_hex(char32_t c) { return is_digit(c) || (c >= U'a' && c <= U'f') || (c >= U'A' && c <= U'F'); }
bool is_alnum(char32_t c) { return c != 0 && (is_digit(c) || is_ascii_alpha(c) || (c >= 0x80 && text::is_alphanumeric(c))); }

// --- e-mail ---------------------------------------------------------------

bool is_local_char(char32_t c) {
    return is_alnum(c) || c == U'.' || c == U'_' || c == U'%' || c == U'+' || c == U'-';
}
bool is_domain_char(char32_t c) { return is_alnum(c) || c == U'.' || c == U'-'; }

bool valid_domain(std::u32string_view d) {
    std::size_t labels = 0;
    std::size_t start = 0;
    std::u32string_view last;
    while (true) {
        auto dot = d.find(U'.', start);
        auto label = d.substr(start, dot == std::u32string_view::npos ? std::u32string_view::npos : dot - start);
        if (label.empty() || label.front() == U'-' || label.back() == U'-') return false;
        ++labels;
        last = label;
        if (dot == std::u32string_view::npos) break;
        start = dot + 1;
    }
    if (labels < 2 || last.size() < 2) return false;
    return std::all_of(last.begin(), last.end(), [](char32_t c) { return is_ascii_alpha(c) || (c >= 0x80 && text::is_alphabetic(c)); });
}

void find_emails(const Scanner& sc, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i < sc.size(); ++i) {
        if (sc.at(i) != U'@') continue;
        std::size_t b = i;
        while (b > 0 && is_local_char(sc.at(b - 1))) --b;
        while (b < i && sc.at(b) == U'.') ++b;
        if (b == i || sc.at(i - 1) == U'.' || sc.before(b) == U'@') continue;
        std::size_t e = i + 1;
        while (e < sc.size() && is_domain_char(sc.at(e))) ++e;
        while (e > i + 1 && (sc.at(e - 1) == U'.' || sc.at(e - 1) == U'-')) --e;
        if (e == i + 1 || sc.at(e) == U'@') continue;
        std::u32string domain;
        for (std::size_t k = i + 1; k < e; ++k) domain.push_back(sc.at(k));
        if (!valid_domain(domain)) continue;
        out.push_back({b, e, PiiCategory::Email});
    }
}

// --- phone ----------------------------------------------------------------

struct Group {
    std::string digits;
    std::size_t end;  // one past the group's last digit
};

bool is_phone_sep(char32_t c) { return c == U' ' || c == U'-' || c == 0xA0; }

// Digit groups starting at `i`, joined by exactly one separator.
std::vector<Group> digit_groups(const Scanner& sc, std::size_t i) {
    std::vector<Group> gs;
    while (is_digit(sc.at(i))) {
        Group g;
        while (is_digit(sc.at(i))) g.digits.push_back(static_cast<char>(sc.at(i++)));
        g.end = i;
        gs.push_back(std::move(g));
        if (is_phone_sep(sc.at(i)) && is_digit(sc.at(i + 1))) {
            ++i;
        } else {
            break;
        }
    }
    return gs;
}

bool glued_after(const Scanner& sc, std::size_t end) {
    char32_t n = sc.at(end);
    if (is_alnum(n)) return true;
    bool sep = n == U'.' || n == U',' || n == U'/' || n == U'-';
    return sep && is_digit(sc.at(end + 1));
}

bool glued_before(const Scanner& sc, std::size_t b) {
    char32_t p = sc.before(b);
    if (is_alnum(p) || p == U'+' || p == U'@') return true;
    bool sep = p == U'.' || p == U',' || p == U'/' || p == U'-' || is_phone_sep(p);
    return sep && b >= 2 && is_digit(sc.at(b - 2));
}

bool pt_national_lead(char d) { return d == '2' || d == '3' || d == '9'; }

// Smallest group prefix whose digit total is exactly `want`; 0 if none.
std::size_t prefix_with_total(const std::vector<Group>& gs, std::size_t want) {
    std::size_t total = 0;
    for (std::size_t k = 0; k < gs.size(); ++k) {
        total += gs[k].digits.size();
        if (total == want) return k + 1;
        if (total > want) return 0;
    }
    return 0;
}

void find_phones(const Scanner& sc, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i < sc.size(); ++i) {
        char32_t c = sc.at(i);
        if (c == U'+' && is_digit(sc.at(i + 1)) && sc.at(i + 1) != U'0' && !glued_before(sc, i)) {
            auto gs = digit_groups(sc, i + 1);
            std::string all;
            for (const auto& g : gs) all += g.digits;
            std::size_t take = 0;
            if (all.starts_with("351")) {
                take = prefix_with_total(gs, 12);
                if (take && !pt_national_lead(all[3])) take = 0;
            } else {
                std::size_t total = 0;
                for (std::size_t k = 0; k < gs.size(); ++k) {
                    total += gs[k].digits.size();
                    if (total > 15) break;
                    if (total >= 8) take = k + 1;
                }
            }
            if (take && !(take == gs.size() && glued_after(sc, gs[take - 1].end))) {
                out.push_back({i, gs[take - 1].end, PiiCategory::Phone});
                i = gs[take - 1].end - 1;
            }
            continue;
        }
        if (!is_digit(c) || is_digit(sc.before(i)) || glued_before(sc, i)) continue;
        auto gs = digit_groups(sc, i);
        if (gs.empty()) continue;
        std::string all;
        for (const auto& g : gs) all += g.digits;
        std::size_t take = 0;
        if (all.starts_with("00351")) {
            take = prefix_with_total(gs, 14);
            if (take && !pt_national_lead(all[5])) take = 0;
        } else if (pt_national_lead(all[0])) {
            auto size = [&](std::size_t k) { return k < gs.size() ? gs[k].digits.size() : 0; };
            if (size(0) == 9) {
                take = 1;
            } else if (size(0) == 3 && size(1) == 3 && size(2) == 3) {
                take = 3;
            } else if (size(0) == 2 && size(1) == 3 && size(2) == 4) {
                take = 3;
            }
        }
        if (!take) {
            i = gs.back().end - 1;
            continue;
        }
        std::size_t end = gs[take - 1].end;
        bool more = take < gs.size();
        // A national number followed by another digit group is part of
        // something longer; a 00351 prefix behaves like '+'.
        if ((!more && glued_after(sc, end)) || (more && !all.starts_with("00351"))) {
            i = gs.back().end - 1;
            continue;
        }
        out.push_back({i, end, PiiCategory::Phone});
        i = end - 1;
    }
}

// --- IP -------------------------------------------------------------------

const std::set<std::string, std::less<>>& version_words() {
    static const std::set<std::string, std::less<>> words{"v", "ver", "versão", "versao", "version", "vers",
                                                          "release", "build", "rev", "revisão", "firmware"};
    return words;
}

bool preceded_by_version_word(const Scanner& sc, std::size_t i) {
    std::size_t e = i;
    while (e > 0 && text::is_white_space(sc.at(e - 1))) --e;
    if (e == i && e > 0) return false;  // glued; handled by the caller
    std::size_t b = e;
    while (b > 0 && !text::is_white_space(sc.at(b - 1))) --b;
    std::string tok = text::case_fold(sc.slice(b, e));
    while (!tok.empty() && (tok.back() == ':' || tok.back() == '.' || tok.back() == ',')) tok.pop_back();
    return version_words().contains(tok);
}

struct V4Range {
    std::uint32_t net;
    int prefix;
};

constexpr std::uint32_t ip4(unsigned a, unsigned b, unsigned c, unsigned d) { return (a << 24) | (b << 16) | (c << 8) | d; }

constexpr std::array kReservedV4{
    V4Range{ip4(0, 0, 0, 0), 8},       V4Range{ip4(10, 0, 0, 0), 8},      V4Range{ip4(100, 64, 0, 0), 10},
    V4Range{ip4(127, 0, 0, 0), 8},     V4Range{ip4(169, 254, 0, 0), 16},  V4Range{ip4(172, 16, 0, 0), 12},
    V4Range{ip4(192, 0, 0, 0), 24},    V4Range{ip4(192, 0, 2, 0), 24},    V4Range{ip4(192, 88, 99, 0), 24},
    V4Range{ip4(192, 168, 0, 0), 16},  V4Range{ip4(198, 18, 0, 0), 15},   V4Range{ip4(198, 51, 100, 0), 24},
    V4Range{ip4(203, 0, 113, 0), 24},  V4Range{ip4(224, 0, 0, 0), 4},     V4Range{ip4(240, 0, 0, 0), 4},
};

void find_ipv4(const Scanner& sc, std::vector<Candidate>& out) {
    for (std::size_t i = 0; i < sc.size(); ++i) {
        if (!is_digit(sc.at(i)) || is_alnum(sc.before(i))) continue;
        if ((sc.before(i) == U'.' || sc.before(i) == U',') && i >= 2 && is_digit(sc.at(i - 2))) continue;
        std::size_t k = i;
        std::uint32_t addr = 0;
        bool ok = true;
        for (int part = 0; part < 4 && ok; ++part) {
            if (part > 0) {
                if (sc.at(k) != U'.') {
                    ok = false;
                    break;
                }
                ++k;
            }
            std::size_t b = k;
            unsigned v = 0;
            while (is_digit(sc.at(k)) && k - b < 4) v = v * 10 + static_cast<unsigned>(sc.at(k++) - U'0');
            std::size_t len = k - b;
            if (len == 0 || len > 3 || v > 255 || (len > 1 && sc.at(b) == U'0')) ok = false;
            addr = (addr << 8) | v;
        }
        if (ok) {
            bool glued = is_alnum(sc.at(k)) || ((sc.at(k) == U'.' || sc.at(k) == U',') && is_digit(sc.at(k + 1)));
            if (!glued && !preceded_by_version_word(sc, i) && is_public_ipv4(addr)) {
                out.push_back({i, k, PiiCategory::Ip});
            }
        }
        while (is_digit(sc.at(i + 1)) || (sc.at(i + 1) == U'.' && is_digit(sc.at(i + 2)))) ++i;
    }
}

bool is_v6_char(char32_t c) { return is_hex(c) || c == U':' || c == U'.'; }

void find_ipv6(const Scanner& sc, std::vector<Candidate>& out) {
    std::size_t i = 0;
    while (i < sc.size()) {
        if (!is_v6_char(sc.at(i)) || is_alnum(sc.before(i)) || sc.before(i) == U':' || sc.before(i) == U'.') {
            ++i;
            continue;
        }
        std::size_t e = i;
        while (e < sc.size() && is_v6_char(sc.at(e))) ++e;
        std::size_t run_end = e;
        while (e > i && sc.at(e - 1) == U'.') --e;
        if (e - i >= 2 && sc.at(e - 1) == U':' && sc.at(e - 2) != U':') --e;
        auto lit = sc.slice(i, e);
        bool glued = is_alnum(sc.at(run_end));
        if (!glued && std::count(lit.begin(), lit.end(), ':') >= 2 && lit.size() <= 45) {
            unsigned char buf[16];
            std::string z(lit);
            if (inet_pton(AF_INET6, z.c_str(), buf) == 1 && is_public_ipv6(buf)) {
                out.push_back({i, e, PiiCategory::Ip});
            }
        }
        i = run_end;
    }
}

bool prefix_match(const unsigned char* a, const std::array<unsigned char, 16>& net, int bits) {
    for (int k = 0; k < bits; ++k) {
        int byte = k / 8;
        int mask = 0x80 >> (k % 8);
        if ((a[byte] & mask) != (net[static_cast<std::size_t>(byte)] & mask)) return false;
    }
    return true;
}

}  // namespace

std::string_view category_name(PiiCategory c) {
    switch (c) {
        case PiiCategory::Email: return "email";
        case PiiCategory::Phone: return "phone";
        case PiiCategory::Ip: return "ip";
    }
    return "unknown";
}

std::string_view replacement_token(PiiCategory c) {
    switch (c) {
        case PiiCategory::Email: return "<EMAIL>";
        case PiiCategory::Phone: return "<PHONE>";
        case PiiCategory::Ip: return "<IP>";
    }
    return "";
}

bool is_public_ipv4(std::uint32_t addr) {
    for (const auto& r : kReservedV4) {
        std::uint32_t mask = r.prefix == 0 ? 0 : ~std::uint32_t{0} << (32 - r.prefix);
        if ((addr & mask) == (r.net & mask)) return false;
    }
    return true;
}

bool is_public_ipv6(const unsigned char* a) {
    using Net = std::array<unsigned char, 16>;
    static const Net zero{};
    // ::/127 covers both the unspecified and the loopback address.
    if (prefix_match(a, zero, 127)) return false;
    static const Net mapped{0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0xff, 0xff};
    static const Net nat64{0, 0x64, 0xff, 0x9b};
    if (prefix_match(a, mapped, 96) || prefix_match(a, nat64, 96)) {
        return is_public_ipv4((std::uint32_t{a[12]} << 24) | (std::uint32_t{a[13]} << 16) | (std::uint32_t{a[14]} << 8) |
                              a[15]);
    }
    static const std::array<std::pair<Net, int>, 5> reserved{{
        {Net{0x01, 0x00}, 64},              // discard-only
        {Net{0x20, 0x01, 0x0d, 0xb8}, 32},  // documentation
        {Net{0xfc}, 7},                     // unique local
        {Net{0xfe, 0x80}, 10},              // link-local
        {Net{0xff}, 8},                     // multicast
    }};
    for (const auto& [net, bits] : reserved) {
        if (prefix_match(a, net, bits)) return false;
    }
    return true;
}

bool is_public_ip(std::string_view literal) {
    std::string z(literal);
    unsigned char buf[16];
    if (inet_pton(AF_INET, z.c_str(), buf) == 1) {
        return is_public_ipv4((std::uint32_t{buf[0]} << 24) | (std::uint32_t{buf[1]} << 16) |
                              (std::uint32_t{buf[2]} << 8) | buf[3]);
    }
    if (inet_pton(AF_INET6, z.c_str(), buf) == 1) return is_public_ipv6(buf);
    return false;
}

namespace {

// One left-to-right pass; spans are in `input` coordinates.
std::vector<Replacement> scrub_pass(std::string_view input) {
    Scanner sc(input);
    std::vector<Candidate> cands;
    find_emails(sc, cands);
    find_phones(sc, cands);
    find_ipv4(sc, cands);
    find_ipv6(sc, cands);
    std::sort(cands.begin(), cands.end(), [](const Candidate& a, const Candidate& b) {
        if (a.begin != b.begin) return a.begin < b.begin;
        return a.end > b.end;
    });
    std::vector<Replacement> out;
    std::size_t last_end = 0;
    for (const auto& c : cands) {
        if (c.begin < last_end) continue;
        out.push_back({sc.offset(c.begin), sc.offset(c.end), c.category});
        last_end = c.end;
    }
    return out;
}

std::string splice(std::string_view input, const std::vector<Replacement>& reps) {
    std::string out;
    std::size_t copied = 0;
    for (const auto& r : reps) {
        out.append(input.substr(copied, r.start - copied));
        out.append(replacement_token(r.category));
        copied = r.end;
    }
    out.append(input.substr(copied));
    return out;
}

}  // namespace

ScrubResult scrub_pii(std::string_view input) {
    // A replacement can change the context of its neighbours (a rejected
    // number glued to a redacted one, an address overlapped by a longer
    // match), so passes repeat until nothing new is found. That keeps
    // scrubbing idempotent.
    ScrubResult r;
    auto& reps = r.report.replacements;
    reps = scrub_pass(input);
    r.text = splice(input, reps);
    for (;;) {
        auto more = scrub_pass(r.text);
        if (more.empty()) break;
        // Map spans of the current text back to the original.
        std::vector<Replacement> mapped;
        std::size_t k = 0;
        std::size_t cur = 0;   // start of the current segment in r.text
        std::size_t orig = 0;  // same point in the input
        bool overlaps_token = false;
        for (const auto& m : more) {
            while (k < reps.size()) {
                std::size_t tok_start = cur + (reps[k].start - orig);
                std::size_t tok_end = tok_start + replacement_token(reps[k].category).size();
                if (tok_start >= m.end) break;
                if (tok_end > m.start) {
                    overlaps_token = true;
                    break;
                }
                cur = tok_end;
                orig = reps[k].end;
                ++k;
            }
            if (overlaps_token) break;
            mapped.push_back({orig + (m.start - cur), orig + (m.end - cur), m.category});
        }
        if (overlaps_token) break;
        std::vector<Replacement> merged;
        std::merge(reps.begin(), reps.end(), mapped.begin(), mapped.end(), std::back_inserter(merged),
                   [](const Replacement& a, const Replacement& b) { return a.start < b.start; });
        reps = std::move(merged);
        r.text = splice(input, reps);
    }
    for (const auto& rep : reps) {
        switch (rep.category) {
            case PiiCategory::Email: ++r.report.emails; break;
            case PiiCategory::Phone: ++r.report.phones; break;
            case PiiCategory::Ip: ++r.report.public_ips; break;
        }
    }
    return r;
}

void MojibakeTable::validate() const {
    std::set<char32_t> key_cps;
    for (const auto& [k, v] : entries) {
        if (k.empty()) throw ConfigError("mojibake table has an empty key");
        if (v.empty()) throw ConfigError("mojibake table entry '" + k + "' has an empty replacement");
        for (char32_t c : text::to_u32(k)) key_cps.insert(c);
    }
    for (const auto& [k, v] : entries) {
        for (char32_t c : text::to_u32(v)) {
            if (key_cps.contains(c)) {
                throw ConfigError("mojibake replacement for '" + k + "' contains a character used in table keys");
            }
        }
    }
}

MojibakeTable default_mojibake_table() {
    MojibakeTable t;
    t.entries = {
        {"Ã¡", "á"}, {"Ã©", "é"}, {"Ã§", "ç"}, {"Ã£", "ã"}, {"Ãµ", "õ"},
        {"Ã³", "ó"}, {"Ãº", "ú"}, {"Ã ", "à"}, {"Ãª", "ê"}, {"Ã¢", "â"},
        {"Ã´", "ô"}, {"Ã­", "í"}, {"Ã‡", "Ç"}, {"Ã‰", "É"},
    };
    t.validate();
    return t;
}

MojibakeTable load_mojibake_table(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open mojibake table " + path.string());
    MojibakeTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        auto tab = line.find('\t');
        if (tab == std::string::npos) {
            throw ConfigError(path.string() + ":" + std::to_string(line_no) + ": expected damaged<TAB>repaired");
        }
        t.entries[line.substr(0, tab)] = line.substr(tab + 1);
    }
    t.validate();
    return t;
}

std::string fix_encoding(std::string_view s, const MojibakeTable& table) {
    std::array<std::vector<const std::pair<const std::string, std::string>*>, 256> by_first;
    for (const auto& e : table.entries) by_first[static_cast<unsigned char>(e.first[0])].push_back(&e);
    for (auto& v : by_first) {
        std::stable_sort(v.begin(), v.end(), [](auto* a, auto* b) { return a->first.size() > b->first.size(); });
    }
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        const auto& cands = by_first[static_cast<unsigned char>(s[i])];
        bool hit = false;
        for (const auto* e : cands) {
            if (s.substr(i).starts_with(e->first)) {
                out += e->second;
                i += e->first.size();
                hit = true;
                break;
            }
        }
        if (!hit) {
            // Copy a whole code point so keys never match mid-sequence.
            std::size_t pos = i;
            text::next_code_point(s, pos);
            out.append(s.substr(i, pos - i));
            i = pos;
        }
    }
    return out;
}

}  // namespace corpus_forge::pii
