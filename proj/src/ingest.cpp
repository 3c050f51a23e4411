// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::ingest {
namespace {

constexpr std::size_t kChunk = 1 << 16;

bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() && text::starts_with_ci(a, b);
}

std::string_view strip_cr(std::string_view line) {
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
}

std::string_view trim_ascii(std::string_view s) {
    auto is_ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
    while (!s.empty() && is_ws(s.front())) s.remove_prefix(1);
    while (!s.empty() && is_ws(s.back())) s.remove_suffix(1);
    return s;
}

class IstreamSource final : public ByteSource {
   public:
    explicit IstreamSource(std::istream& in) : in_(in) {}
    std::size_t read(char* buf, std::size_t n) override {
        in_.read(buf, static_cast<std::streamsize>(n));
        return static_cast<std::size_t>(in_.gcount());
    }

   private:
    std::istream& in_;
};

// Replays bytes consumed while sniffing, then continues from `inner`.
class PrefixedSource final : public ByteSource {
   public:
    PrefixedSource(std::string prefix, std::unique_ptr<ByteSource> inner)
        : prefix_(std::move(prefix)), inner_(std::move(inner)) {}
    std::size_t read(char* buf, std::size_t n) override {
        if (pos_ < prefix_.size()) {
            std::size_t k = std::min(n, prefix_.size() - pos_);
            std::memcpy(buf, prefix_.data() + pos_, k);
            pos_ += k;
            return k;
        }
        return inner_->read(buf, n);
    }
    [[nodiscard]] bool truncated() const override { return inner_->truncated(); }

   private:
    std::string prefix_;
    std::size_t pos_ = 0;
    std::unique_ptr<ByteSource> inner_;
};

class GzipSource final : public ByteSource {
   public:
    explicit GzipSource(std::unique_ptr<ByteSource> inner) : inner_(std::move(inner)), in_buf_(kChunk) {
        std::memset(&zs_, 0, sizeof zs_);
        if (inflateInit2(&zs_, 16 + MAX_WBITS) != Z_OK) throw DataError("zlib initialisation failed");
    }
    ~GzipSource() override { inflateEnd(&zs_); }
    GzipSource(const GzipSource&) = delete;
    GzipSource& operator=(const GzipSource&) = delete;

    std::size_t read(char* buf, std::size_t n) override {
        if (finished_ || n == 0) return 0;
        zs_.next_out = reinterpret_cast<Bytef*>(buf);
        zs_.avail_out = static_cast<uInt>(n);
        while (zs_.avail_out == n && !finished_) {
            if (zs_.avail_in < 2 && !inner_eof_) refill();
            if (zs_.avail_in == 0) {
                if (member_open_) truncated_ = true;
                finished_ = true;
                break;
            }
            if (!member_open_) {
                // Between members: anything that is not another gzip header is
                // trailing padding and ends the stream.
                if (zs_.avail_in < 2 || zs_.next_in[0] != 0x1f || zs_.next_in[1] != 0x8b) {
                    finished_ = true;
                    break;
                }
                member_open_ = true;
            }
            int ret = inflate(&zs_, Z_NO_FLUSH);
            if (ret == Z_STREAM_END) {
                member_open_ = false;
                inflateReset(&zs_);
            } else if (ret == Z_BUF_ERROR) {
                if (inner_eof_ && zs_.avail_in == 0) {
                    truncated_ = true;
                    finished_ = true;
                } else if (!inner_eof_) {
                    refill();
                }
            } else if (ret != Z_OK) {
                throw DataError(std::string("corrupt gzip data: ") + (zs_.msg ? zs_.msg : "unknown"));
            }
        }
        return n - zs_.avail_out;
    }

    [[nodiscard]] bool truncated() const override { return truncated_; }

   private:
    void refill() {
        // Preserve unread input at the front of the buffer.
        std::size_t keep = zs_.avail_in;
        if (keep > 0 && reinterpret_cast<char*>(zs_.next_in) != in_buf_.data()) {
            std::memmove(in_buf_.data(), zs_.next_in, keep);
        }
        std::size_t got = inner_->read(in_buf_.data() + keep, in_buf_.size() - keep);
        if (got == 0) inner_eof_ = true;
        zs_.next_in = reinterpret_cast<Bytef*>(in_buf_.data());
        zs_.avail_in = static_cast<uInt>(keep + got);
    }

    std::unique_ptr<ByteSource> inner_;
    std::vector<char> in_buf_;
    z_stream zs_{};
    bool inner_eof_ = false;
    bool member_open_ = false;
    bool finished_ = false;
    bool truncated_ = false;
};

}  // namespace

std::unique_ptr<ByteSource> istream_source(std::istream& in) { return std::make_unique<IstreamSource>(in); }

std::unique_ptr<ByteSource> gzip_source(std::unique_ptr<ByteSource> inner) {
    return std::make_unique<GzipSource>(std::move(inner));
}

std::optional<std::string> WarcRecord::header(std::string_view name) const {
    for (const auto& h : headers) {
        if (iequals(h.name, name)) return h.value;
    }
    return std::nullopt;
}

std::string WarcRecord::record_type() const { return header("WARC-Type").value_or(""); }

std::optional<std::string> WarcRecord::target_uri() const {
    auto uri = header("WARC-Target-URI");
    if (uri && uri->size() >= 2 && uri->front() == '<' && uri->back() == '>') {
        return uri->substr(1, uri->size() - 2);
    }
    return uri;
}

std::optional<std::string> WarcRecord::content_type() const { return header("Content-Type"); }

std::optional<std::chrono::sys_seconds> WarcRecord::warc_date() const {
    auto raw = header("WARC-Date");
    if (!raw) return std::nullopt;
    return parse_warc_date(*raw);
}

std::optional<std::size_t> WarcRecord::declared_length() const {
    auto raw = header("Content-Length");
    if (!raw) return std::nullopt;
    std::size_t n = 0;
    auto v = trim_ascii(*raw);
    auto res = std::from_chars(v.data(), v.data() + v.size(), n);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || v.empty()) return std::nullopt;
    return n;
}

std::optional<std::chrono::sys_seconds> parse_warc_date(std::string_view s) {
    s = trim_ascii(s);
    auto date = parse_iso_date(s);
    if (!date) return std::nullopt;
    std::chrono::sys_seconds t{std::chrono::sys_days{*date}};
    if (s.size() >= 19 && s[10] == 'T') {
        int hh = 0;
        int mm = 0;
        int ss = 0;
        auto num = [&](std::size_t at, int& out) {
            auto r = std::from_chars(s.data() + at, s.data() + at + 2, out);
            return r.ec == std::errc{};
        };
        if (!num(11, hh) || !num(14, mm) || !num(17, ss)) return std::nullopt;
        t += std::chrono::hours{hh} + std::chrono::minutes{mm} + std::chrono::seconds{ss};
    }
    return t;
}

WarcRecord make_record(std::string version, std::vector<WarcHeader> headers, std::string payload) {
    WarcRecord rec{std::move(version), std::move(headers), std::move(payload)};
    auto len = std::to_string(rec.payload.size());
    auto it = std::find_if(rec.headers.begin(), rec.headers.end(),
                           [](const WarcHeader& h) { return iequals(h.name, "Content-Length"); });
    if (it == rec.headers.end()) {
        rec.headers.push_back({"Content-Length", len});
    } else {
        it->value = len;
    }
    return rec;
}

std::string serialize(const WarcRecord& rec) {
    std::string out;
    out.reserve(rec.payload.size() + 512);
    out += rec.version;
    out += "\r\n";
    for (const auto& h : rec.headers) {
        out += h.name;
        out += ": ";
        out += h.value;
        out += "\r\n";
    }
    out += "\r\n";
    out += rec.payload;
    out += "\r\n\r\n";
    return out;
}

struct WarcReader::Impl {
    std::unique_ptr<ByteSource> src;
    std::vector<char> buf = std::vector<char>(kChunk);
    std::size_t head = 0;
    std::size_t tail = 0;
    bool eof = false;
    bool started = false;
    bool done = false;
    std::size_t count = 0;
    std::vector<std::string> warnings;

    explicit Impl(std::unique_ptr<ByteSource> s) {
        // Sniff the gzip magic from the first bytes, then replay them.
        std::string prefix(2, '\0');
        std::size_t got = 0;
        while (got < 2) {
            std::size_t k = s->read(prefix.data() + got, 2 - got);
            if (k == 0) break;
            got += k;
        }
        prefix.resize(got);
        bool gz = got == 2 && static_cast<unsigned char>(prefix[0]) == 0x1f &&
                  static_cast<unsigned char>(prefix[1]) == 0x8b;
        std::unique_ptr<ByteSource> replay = std::make_unique<PrefixedSource>(std::move(prefix), std::move(s));
        src = gz ? gzip_source(std::move(replay)) : std::move(replay);
    }

    bool fill() {
        if (eof) return false;
        if (head > 0) {
            std::memmove(buf.data(), buf.data() + head, tail - head);
            tail -= head;
            head = 0;
        }
        if (tail == buf.size()) buf.resize(buf.size() * 2);
        std::size_t got = src->read(buf.data() + tail, buf.size() - tail);
        if (got == 0) {
            eof = true;
            return false;
        }
        tail += got;
        return true;
    }

    // Returns false at clean end of stream. `complete` is false when the
    // stream ended before a newline.
    bool read_line(std::string& line, bool& complete) {
        line.clear();
        complete = true;
        while (true) {
            auto* begin = buf.data() + head;
            auto* end = buf.data() + tail;
            auto* nl = std::find(begin, end, '\n');
            if (nl != end) {
                line.append(begin, nl);
                head += static_cast<std::size_t>(nl - begin) + 1;
                return true;
            }
            line.append(begin, end);
            head = tail;
            if (!fill()) {
                complete = false;
                return !line.empty();
            }
        }
    }

    std::size_t read_bytes(std::string& out, std::size_t n) {
        out.clear();
        out.reserve(n);
        while (out.size() < n) {
            if (head == tail && !fill()) break;
            std::size_t k = std::min(n - out.size(), tail - head);
            out.append(buf.data() + head, k);
            head += k;
        }
        return out.size();
    }

    [[noreturn]] void truncated(const std::string& what) {
        done = true;
        throw TruncatedStreamError("WARC stream truncated after " + std::to_string(count) + " record(s): " + what);
    }

    static bool supported_version(std::string_view line) { return line == "WARC/1.0" || line == "WARC/1.1"; }

    // Skips forward to the next supported version line; returns false at EOF.
    bool resync(std::string& line) {
        bool complete = true;
        while (read_line(line, complete)) {
            if (supported_version(strip_cr(line))) return true;
        }
        return false;
    }

    std::optional<WarcRecord> next() {
        if (done) return std::nullopt;
        std::string line;
        bool complete = true;
        while (true) {
            if (!read_line(line, complete)) {
                done = true;
                if (src->truncated()) truncated("compressed stream ended mid-member");
                return std::nullopt;
            }
            if (!trim_ascii(line).empty()) break;
        }
        auto version = std::string(strip_cr(line));
        if (!started) {
            started = true;
            if (!version.starts_with("WARC/")) throw FormatError("input is not a WARC stream (first line: '" + version.substr(0, 40) + "')");
        }
        while (!supported_version(version)) {
            warnings.push_back("skipped malformed record: unsupported version line '" + version.substr(0, 40) + "'");
            if (!resync(line)) {
                done = true;
                if (src->truncated()) truncated("compressed stream ended mid-member");
                return std::nullopt;
            }
            version = std::string(strip_cr(line));
        }

        while (true) {
            WarcRecord rec;
            rec.version = version;
            bool header_ok = true;
            while (true) {
                if (!read_line(line, complete) || !complete) truncated("end of stream inside header block");
                auto l = strip_cr(line);
                if (l.empty()) break;
                if ((l.front() == ' ' || l.front() == '\t') && !rec.headers.empty()) {
                    rec.headers.back().value += ' ';
                    rec.headers.back().value += trim_ascii(l);
                    continue;
                }
                auto colon = l.find(':');
                if (colon == std::string_view::npos || colon == 0) {
                    header_ok = false;
                    continue;
                }
                rec.headers.push_back({std::string(trim_ascii(l.substr(0, colon))),
                                       std::string(trim_ascii(l.substr(colon + 1)))});
            }
            auto length = rec.declared_length();
            if (!header_ok || !length) {
                warnings.push_back("skipped malformed record " + std::to_string(count + warnings.size()) +
                                   (length ? ": unparseable header line" : ": missing or invalid Content-Length"));
                if (!resync(line)) {
                    done = true;
                    if (src->truncated()) truncated("compressed stream ended mid-member");
                    return std::nullopt;
                }
                version = std::string(strip_cr(line));
                continue;
            }
            if (read_bytes(rec.payload, *length) < *length) {
                truncated("payload shorter than Content-Length " + std::to_string(*length));
            }
            if (rec.record_type().empty()) {
                warnings.push_back("skipped malformed record: missing WARC-Type");
                return next();
            }
            ++count;
            return rec;
        }
    }
};

WarcReader::WarcReader(std::istream& in) : impl_(std::make_unique<Impl>(istream_source(in))) {}
WarcReader::WarcReader(std::unique_ptr<ByteSource> source) : impl_(std::make_unique<Impl>(std::move(source))) {}
WarcReader::~WarcReader() = default;
WarcReader::WarcReader(WarcReader&&) noexcept = default;
WarcReader& WarcReader::operator=(WarcReader&&) noexcept = default;

std::optional<WarcRecord> WarcReader::next() { return impl_->next(); }
const std::vector<std::string>& WarcReader::warnings() const { return impl_->warnings; }
std::size_t WarcReader::records_read() const { return impl_->count; }

namespace {
std::unique_ptr<std::istream> open_binary(const std::filesystem::path& path) {
    auto in = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*in) throw DataError("cannot open " + path.string());
    return in;
}
}  // namespace

WarcFile::WarcFile(const std::filesystem::path& path) : stream_(open_binary(path)), reader_(*stream_) {}

std::vector<WarcRecord> read_all(std::istream& in) {
    WarcReader reader(in);
    std::vector<WarcRecord> out;
    while (auto rec = reader.next()) out.push_back(std::move(*rec));
    return out;
}

namespace {

struct MediaType {
    std::string mime;
    std::string charset;
};

MediaType parse_media_type(std::string_view ct) {
    MediaType mt;
    auto semi = ct.find(';');
    mt.mime = text::ascii_lower(trim_ascii(ct.substr(0, semi)));
    while (semi != std::string_view::npos) {
        auto rest = ct.substr(semi + 1);
        semi = rest.find(';');
        auto param = trim_ascii(rest.substr(0, semi));
        ct = rest;
        auto eq = param.find('=');
        if (eq == std::string_view::npos) continue;
        if (text::ascii_lower(trim_ascii(param.substr(0, eq))) == "charset") {
            auto v = trim_ascii(param.substr(eq + 1));
            if (v.size() >= 2 && v.front() == '"' && v.back() == '"') v = v.substr(1, v.size() - 2);
            mt.charset = text::ascii_lower(v);
        }
    }
    return mt;
}

bool sniff_html(std::string_view body) {
    if (body.starts_with("\xEF\xBB\xBF")) body.remove_prefix(3);
    body = trim_ascii(body.substr(0, std::min<std::size_t>(body.size(), 1024)));
    return text::starts_with_ci(body, "<!doctype") || text::starts_with_ci(body, "<html");
}

}  // namespace

std::optional<Document> record_to_document(const WarcRecord& rec, std::string_view fallback_id) {
    if (!iequals(rec.record_type(), "response")) return std::nullopt;

    std::string_view body = rec.payload;
    std::string content_type = rec.content_type().value_or("");
    if (body.starts_with("HTTP/")) {
        auto split = body.find("\r\n\r\n");
        std::size_t sep = 4;
        if (split == std::string_view::npos) {
            split = body.find("\n\n");
            sep = 2;
        }
        auto head = body.substr(0, split);
        body = split == std::string_view::npos ? std::string_view{} : body.substr(split + sep);
        content_type.clear();
        std::size_t pos = 0;
        while (pos < head.size()) {
            auto nl = head.find('\n', pos);
            auto line = strip_cr(head.substr(pos, nl == std::string_view::npos ? head.npos : nl - pos));
            pos = nl == std::string_view::npos ? head.size() : nl + 1;
            auto colon = line.find(':');
            if (colon != std::string_view::npos && iequals(trim_ascii(line.substr(0, colon)), "Content-Type")) {
                content_type = std::string(trim_ascii(line.substr(colon + 1)));
            }
        }
    }

    auto mt = parse_media_type(content_type);
    std::string kind;
    if (mt.mime == "text/html" || mt.mime == "application/xhtml+xml") {
        kind = "html";
    } else if (sniff_html(body)) {
        kind = "html";
    } else if (mt.mime == "text/plain") {
        kind = "text";
    } else {
        return std::nullopt;
    }

    Document doc;
    if (auto rid = rec.header("WARC-Record-ID")) {
        std::string_view id = *rid;
        if (id.size() >= 2 && id.front() == '<' && id.back() == '>') id = id.substr(1, id.size() - 2);
        doc.id = std::string(id);
    }
    if (doc.id.empty()) doc.id = std::string(fallback_id);
    doc.source_url = rec.target_uri();
    if (auto when = rec.header("WARC-Date")) doc.capture_date = parse_iso_date(trim_ascii(*when));
    doc.text = mt.charset.empty() ? text::repair_utf8(body) : text::decode_charset(body, mt.charset);
    doc.annotations["ingest"] = kind;
    return doc;
}

Date embargo_cutoff(const EmbargoPolicy& policy) {
    using namespace std::chrono;
    year_month ym = year_month{policy.processing_date.year(), policy.processing_date.month()} - policy.embargo;
    year_month_day cutoff{ym.year(), ym.month(), policy.processing_date.day()};
    if (!cutoff.ok()) cutoff = year_month_day{year_month_day_last{ym.year(), month_day_last{ym.month()}}};
    return cutoff;
}

Verdict embargo_filter(const Document& doc, const EmbargoPolicy& policy) {
    constexpr std::string_view stage = "embargo";
    if (!doc.capture_date) return Verdict::drop(stage, reason::embargo_missing_date);
    if (*doc.capture_date <= embargo_cutoff(policy)) return Verdict::keep(stage);
    return Verdict::drop(stage, reason::embargo_too_recent);
}

}  // namespace corpus_forge::ingest
