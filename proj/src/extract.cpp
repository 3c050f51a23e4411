// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/extract.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::extract {
namespace {

const std::unordered_map<std::string_view, char32_t>& named_entities() {
    static const std::unordered_map<std::string_view, char32_t> table{
        {"amp", U'&'},       {"lt", U'<'},        {"gt", U'>'},        {"quot", U'"'},      {"apos", U'\''},
        {"nbsp", 0xA0},      {"iexcl", 0xA1},     {"cent", 0xA2},      {"pound", 0xA3},     {"curren", 0xA4},
        {"yen", 0xA5},       {"brvbar", 0xA6},    {"sect", 0xA7},      {"uml", 0xA8},       {"copy", 0xA9},
        {"ordf", 0xAA},      {"laquo", 0xAB},     {"not", 0xAC},       {"shy", 0xAD},       {"reg", 0xAE},
        {"macr", 0xAF},      {"deg", 0xB0},       {"plusmn", 0xB1},    {"sup2", 0xB2},      {"sup3", 0xB3},
        {"acute", 0xB4},     {"micro", 0xB5},     {"para", 0xB6},      {"middot", 0xB7},    {"cedil", 0xB8},
        {"sup1", 0xB9},      {"ordm", 0xBA},      {"raquo", 0xBB},     {"frac14", 0xBC},    {"frac12", 0xBD},
        {"frac34", 0xBE},    {"iquest", 0xBF},    {"Agrave", 0xC0},    {"Aacute", 0xC1},    {"Acirc", 0xC2},
        {"Atilde", 0xC3},    {"Auml", 0xC4},      {"Aring", 0xC5},     {"AElig", 0xC6},     {"Ccedil", 0xC7},
        {"Egrave", 0xC8},    {"Eacute", 0xC9},    {"Ecirc", 0xCA},     {"Euml", 0xCB},      {"Igrave", 0xCC},
        {"Iacute", 0xCD},    {"Icirc", 0xCE},     {"Iuml", 0xCF},      {"ETH", 0xD0},       {"Ntilde", 0xD1},
        {"Ograve", 0xD2},    {"Oacute", 0xD3},    {"Ocirc", 0xD4},     {"Otilde", 0xD5},    {"Ouml", 0xD6},
        {"times", 0xD7},     {"Oslash", 0xD8},    {"Ugrave", 0xD9},    {"Uacute", 0xDA},    {"Ucirc", 0xDB},
        {"Uuml", 0xDC},      {"Yacute", 0xDD},    {"THORN", 0xDE},     {"szlig", 0xDF},     {"agrave", 0xE0},
        {"aacute", 0xE1},    {"acirc", 0xE2},     {"atilde", 0xE3},    {"auml", 0xE4},      {"aring", 0xE5},
        {"aelig", 0xE6},     {"ccedil", 0xE7},    {"egrave", 0xE8},    {"eacute", 0xE9},    {"ecirc", 0xEA},
        {"euml", 0xEB},      {"igrave", 0xEC},    {"iacute", 0xED},    {"icirc", 0xEE},     {"iuml", 0xEF},
        {"eth", 0xF0},       {"ntilde", 0xF1},    {"ograve", 0xF2},    {"oacute", 0xF3},    {"ocirc", 0xF4},
        {"otilde", 0xF5},    {"ouml", 0xF6},      {"divide", 0xF7},    {"oslash", 0xF8},    {"ugrave", 0xF9},
        {"uacute", 0xFA},    {"ucirc", 0xFB},     {"uuml", 0xFC},      {"yacute", 0xFD},    {"thorn", 0xFE},
        {"yuml", 0xFF},      {"OElig", 0x152},    {"oelig", 0x153},    {"Scaron", 0x160},   {"scaron", 0x161},
        {"Yuml", 0x178},     {"fnof", 0x192},     {"circ", 0x2C6},     {"tilde", 0x2DC},    {"ensp", 0x2002},
        {"emsp", 0x2003},    {"thinsp", 0x2009},  {"zwnj", 0x200C},    {"zwj", 0x200D},     {"ndash", 0x2013},
        {"mdash", 0x2014},   {"lsquo", 0x2018},   {"rsquo", 0x2019},   {"sbquo", 0x201A},   {"ldquo", 0x201C},
        {"rdquo", 0x201D},   {"bdquo", 0x201E},   {"dagger", 0x2020},  {"Dagger", 0x2021},  {"bull", 0x2022},
        {"hellip", 0x2026},  {"permil", 0x2030},  {"prime", 0x2032},   {"lsaquo", 0x2039},  {"rsaquo", 0x203A},
        {"euro", 0x20AC},    {"trade", 0x2122},   {"larr", 0x2190},    {"rarr", 0x2192},    {"minus", 0x2212},
    };
    return table;
}

// HTML numeric references in 0x80..0x9F name windows-1252 characters.
constexpr std::array<char32_t, 32> kCp1252High{
    0x20AC, 0xFFFD, 0x201A, 0x0192, 0x201E, 0x2026, 0x2020, 0x2021, 0x02C6, 0x2030, 0x0160,
    0x2039, 0x0152, 0xFFFD, 0x017D, 0xFFFD, 0xFFFD, 0x2018, 0x2019, 0x201C, 0x201D, 0x2022,
    0x2013, 0x2014, 0x02DC, 0x2122, 0x0161, 0x203A, 0x0153, 0xFFFD, 0x017E, 0x0178,
};

const std::unordered_set<std::string_view>& block_tags() {
    static const std::unordered_set<std::string_view> tags{
        "address", "article", "aside",   "blockquote", "body",   "br",     "caption", "center", "dd",
        "details", "dialog",  "div",     "dl",         "dt",     "fieldset", "figcaption", "figure", "footer",
        "form",    "h1",      "h2",      "h3",         "h4",     "h5",     "h6",      "header", "hgroup",
        "hr",      "html",    "li",      "main",       "menu",   "nav",    "ol",      "p",      "pre",
        "section", "summary", "table",   "tbody",      "td",     "tfoot",  "th",      "thead",  "title",
        "tr",      "ul",      "option",  "legend",
    };
    return tags;
}

bool is_raw_text(std::string_view tag) { return tag == "script" || tag == "style" || tag == "textarea"; }

bool is_name_char(char c) {
    auto u = static_cast<unsigned char>(c);
    return std::isalnum(u) || c == '-' || c == ':' || c == '_';
}

struct Block {
    std::string text;
    std::size_t chars = 0;
    std::size_t link_chars = 0;
    bool pending_space = false;

    void append(std::string_view decoded, bool in_link) {
        for (std::size_t pos = 0; pos < decoded.size();) {
            std::size_t start = pos;
            char32_t cp = text::next_code_point(decoded, pos);
            if (text::is_white_space(cp)) {
                pending_space = !text.empty();
                continue;
            }
            if (pending_space) {
                text.push_back(' ');
                pending_space = false;
            }
            text.append(decoded.substr(start, pos - start));
            ++chars;
            if (in_link) ++link_chars;
        }
    }
};

class Extractor {
   public:
    Extractor(std::string_view html, const ExtractionConfig& cfg) : html_(html), cfg_(cfg) {}

    std::string run() {
        while (pos_ < html_.size()) {
            auto lt = html_.find('<', pos_);
            if (lt == std::string_view::npos) lt = html_.size();
            if (lt > pos_) on_text(html_.substr(pos_, lt - pos_));
            pos_ = lt;
            if (pos_ < html_.size()) on_markup();
        }
        flush();
        return std::move(out_);
    }

   private:
    void on_text(std::string_view raw) {
        if (skip_depth_ > 0) return;
        block_.append(decode_entities(raw), anchor_depth_ > 0);
    }

    void on_markup() {
        auto rest = html_.substr(pos_);
        if (rest.starts_with("<!--")) {
            auto end = html_.find("-->", pos_ + 4);
            pos_ = end == std::string_view::npos ? html_.size() : end + 3;
            return;
        }
        if (rest.starts_with("<!") || rest.starts_with("<?")) {
            auto end = html_.find('>', pos_);
            pos_ = end == std::string_view::npos ? html_.size() : end + 1;
            return;
        }
        bool closing = rest.size() > 1 && rest[1] == '/';
        std::size_t name_start = pos_ + (closing ? 2 : 1);
        std::size_t name_end = name_start;
        if (name_end < html_.size() && std::isalpha(static_cast<unsigned char>(html_[name_end]))) {
            while (name_end < html_.size() && is_name_char(html_[name_end])) ++name_end;
        }
        if (name_end == name_start) {
            // Not a tag: a literal '<' in text.
            on_text(html_.substr(pos_, 1));
            ++pos_;
            return;
        }
        std::string name = text::ascii_lower(html_.substr(name_start, name_end - name_start));
        bool self_closing = false;
        pos_ = skip_attributes(name_end, self_closing);
        if (closing) {
            on_end(name);
        } else {
            on_start(name, self_closing);
        }
    }

    // Returns the position just past the tag's closing '>'.
    std::size_t skip_attributes(std::size_t at, bool& self_closing) {
        char quote = 0;
        for (; at < html_.size(); ++at) {
            char c = html_[at];
            if (quote) {
                if (c == quote) quote = 0;
            } else if (c == '"' || c == '\'') {
                quote = c;
            } else if (c == '>') {
                self_closing = at > 0 && html_[at - 1] == '/';
                return at + 1;
            }
        }
        return html_.size();
    }

    [[nodiscard]] bool is_skipped_tag(const std::string& name) const {
        return name == "head" || cfg_.boilerplate_tags.contains(name);
    }

    void on_start(const std::string& name, bool self_closing) {
        if (skip_depth_ > 0) {
            if (name == skip_tag_ && !self_closing) ++skip_depth_;
            if (is_raw_text(name) && !self_closing) skip_raw(name);
            return;
        }
        if (block_tags().contains(name)) flush();
        if (is_skipped_tag(name) && !self_closing) {
            skip_tag_ = name;
            skip_depth_ = 1;
            if (is_raw_text(name)) {
                skip_raw(name);
                skip_depth_ = 0;
            }
            return;
        }
        if (is_raw_text(name) && !self_closing) {
            auto end = find_raw_end(name);
            on_text(html_.substr(pos_, end - pos_));
            pos_ = end;
            return;
        }
        if (name == "a" && !self_closing) ++anchor_depth_;
    }

    void on_end(const std::string& name) {
        if (skip_depth_ > 0) {
            if (name == skip_tag_ && --skip_depth_ == 0) skip_tag_.clear();
            return;
        }
        if (name == "a" && anchor_depth_ > 0) --anchor_depth_;
        if (block_tags().contains(name)) flush();
    }

    std::size_t find_raw_end(const std::string& name) const {
        std::string closer = "</" + name;
        for (std::size_t at = pos_; at < html_.size(); ++at) {
            if (html_[at] == '<' && text::starts_with_ci(html_.substr(at), closer)) return at;
        }
        return html_.size();
    }

    // Consumes a raw-text element's body and closing tag.
    void skip_raw(const std::string& name) {
        auto end = find_raw_end(name);
        if (end == html_.size()) {
            pos_ = end;
            return;
        }
        auto gt = html_.find('>', end);
        pos_ = gt == std::string_view::npos ? html_.size() : gt + 1;
    }

    void flush() {
        if (block_.chars > 0) {
            double density = static_cast<double>(block_.link_chars) / static_cast<double>(block_.chars);
            if (density <= cfg_.link_density_max) {
                if (!out_.empty()) out_.push_back('\n');
                out_ += block_.text;
            }
        }
        block_ = Block{};
    }

    std::string_view html_;
    const ExtractionConfig& cfg_;
    std::size_t pos_ = 0;
    std::string out_;
    Block block_;
    std::string skip_tag_;
    int skip_depth_ = 0;
    int anchor_depth_ = 0;
};

// A '<' directly followed by a letter, '!' or '/' would read as markup.
std::string defuse_tag_openers(std::string s) {
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        char c = s[i + 1];
        if (s[i] == '<' && (std::isalpha(static_cast<unsigned char>(c)) || c == '!' || c == '/')) {
            s.insert(i + 1, 1, ' ');
        }
    }
    return s;
}

}  // namespace

void ExtractionConfig::validate() const {
    if (!(link_density_max >= 0.0 && link_density_max <= 1.0)) {
        throw ConfigError("extract.link_density_max must be in [0, 1]");
    }
}

std::string decode_entities(std::string_view s) {
    if (s.find('&') == std::string_view::npos) return std::string(s);
    std::string out;
    out.reserve(s.size());
    std::size_t pos = 0;
    while (pos < s.size()) {
        auto amp = s.find('&', pos);
        if (amp == std::string_view::npos) {
            out.append(s.substr(pos));
            break;
        }
        out.append(s.substr(pos, amp - pos));
        auto semi = s.find(';', amp + 1);
        if (semi == std::string_view::npos || semi - amp > 12) {
            out.push_back('&');
            pos = amp + 1;
            continue;
        }
        auto name = s.substr(amp + 1, semi - amp - 1);
        std::optional<char32_t> cp;
        if (name.size() > 1 && name[0] == '#') {
            bool hex = name[1] == 'x' || name[1] == 'X';
            auto digits = name.substr(hex ? 2 : 1);
            std::uint32_t value = 0;
            auto res = std::from_chars(digits.data(), digits.data() + digits.size(), value, hex ? 16 : 10);
            if (!digits.empty() && res.ec == std::errc{} && res.ptr == digits.data() + digits.size()) {
                if (value >= 0x80 && value <= 0x9F) {
                    cp = kCp1252High[value - 0x80];
                } else if (value == 0 || value > 0x10FFFF || (value >= 0xD800 && value <= 0xDFFF)) {
                    cp = U'�';
                } else {
                    cp = static_cast<char32_t>(value);
                }
            }
        } else if (auto it = named_entities().find(name); it != named_entities().end()) {
            cp = it->second;
        }
        if (cp) {
            text::append_utf8(out, *cp);
            pos = semi + 1;
        } else {
            out.push_back('&');
            pos = amp + 1;
        }
    }
    return out;
}

std::string extract_main_text(std::string_view html, const ExtractionConfig& cfg) {
    return defuse_tag_openers(Extractor(html, cfg).run());
}

std::string clean_lines(std::string_view text, const ExtractionConfig& cfg) {
    std::string out;
    out.reserve(text.size());
    std::unordered_set<std::string_view> seen;
    bool first = true;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        auto line = text::trim_right(text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos));
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;

        std::size_t visible = 0;
        for (std::size_t i = 0; i < line.size() && visible < cfg.min_line_chars;) {
            if (!text::is_white_space(text::next_code_point(line, i))) ++visible;
        }
        if (visible < cfg.min_line_chars) continue;
        if (cfg.drop_duplicate_lines && !seen.insert(line).second) continue;
        if (!first) out.push_back('\n');
        first = false;
        out.append(line);
    }
    return out;
}

}  // namespace corpus_forge::extract
