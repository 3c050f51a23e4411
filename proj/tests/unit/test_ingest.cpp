// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <zlib.h>

#include <fstream>
#include <sstream>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/fixtures/generate.hpp"
#include "corpus_forge/fixtures/oracles.hpp"
#include "corpus_forge/ingest.hpp"
#include "util.hpp"

using namespace corpus_forge;
using namespace corpus_forge::ingest;
namespace fx = corpus_forge::fixtures;

namespace {

std::string gzip(std::string_view data) {
    z_stream zs{};
    deflateInit2(&zs, Z_BEST_SPEED, Z_DEFLATED, 16 + MAX_WBITS, 8, Z_DEFAULT_STRATEGY);
    std::string out(deflateBound(&zs, static_cast<uLong>(data.size())), '\0');
    zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    zs.avail_in = static_cast<uInt>(data.size());
    zs.next_out = reinterpret_cast<Bytef*>(out.data());
    zs.avail_out = static_cast<uInt>(out.size());
    REQUIRE(deflate(&zs, Z_FINISH) == Z_STREAM_END);
    out.resize(zs.total_out);
    deflateEnd(&zs);
    return out;
}

std::vector<WarcRecord> parse(const std::string& bytes) {
    std::istringstream in(bytes);
    return read_all(in);
}

const char* kResponse =
    "WARC/1.0\r\n"
    "WARC-Type: response\r\n"
    "WARC-Record-ID: <urn:uuid:0001>\r\n"
    "WARC-Date: 2021-03-04T05:06:07Z\r\n"
    "WARC-Target-URI: https://exemplo.pt/a\r\n"
    "Content-Type: text/plain\r\n"
    "Content-Length: 25\r\n"
    "\r\n"
    "Bom dia, caro leitor. Sim"
    "\r\n\r\n";

Date ymd(int y, unsigned m, unsigned d) {
    return std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d};
}

}  // namespace

TEST_CASE("minimal WARC/1.0 response record") {
    auto recs = parse(kResponse);
    REQUIRE(recs.size() == 1);
    const auto& r = recs[0];
    CHECK(r.version == "WARC/1.0");
    CHECK(r.payload.size() == 25);
    CHECK(r.payload == "Bom dia, caro leitor. Sim");
    CHECK(r.record_type() == "response");
    CHECK(r.target_uri() == "https://exemplo.pt/a");
    CHECK(r.content_type() == "text/plain");
    CHECK(r.declared_length() == 25);
    CHECK(r.header("warc-record-id") == "<urn:uuid:0001>");
    REQUIRE(r.warc_date());
    CHECK(serialize(r) == kResponse);
}

TEST_CASE("empty input yields nothing") {
    CHECK(parse("").empty());
    std::istringstream in("");
    WarcReader reader(in);
    CHECK_FALSE(reader.next());
    CHECK(reader.warnings().empty());
}

TEST_CASE("gzip members per record are read in order") {
    auto a = fx::warc_minimal(2, 1);
    auto first = fx::serialize_record(a.records[0]);
    auto second = fx::serialize_record(a.records[1]);
    auto recs = parse(gzip(first) + gzip(second));
    REQUIRE(recs.size() == 2);
    CHECK(serialize(recs[0]) == first);
    CHECK(serialize(recs[1]) == second);
    // Whole-stream compression too.
    CHECK(parse(gzip(first + second)).size() == 2);
}

TEST_CASE("non-WARC input is a format error") {
    CHECK_THROWS_AS(parse("<html>hello</html>\r\n"), FormatError);
}

TEST_CASE("truncated stream delivers complete records first") {
    auto t = fx::warc_truncated(5, 9);
    std::istringstream in(t.bytes);
    WarcReader reader(in);
    std::size_t got = 0;
    bool signalled = false;
    try {
        while (reader.next()) ++got;
    } catch (const TruncatedStreamError&) {
        signalled = true;
    }
    CHECK(signalled);
    CHECK(got == t.complete_records);
    CHECK(reader.records_read() == 4);
    // Truncation inside a gzip member is reported the same way.
    auto z = gzip(fx::warc_minimal(3, 2).bytes);
    z.resize(z.size() - 10);
    CHECK_THROWS_AS(parse(z), TruncatedStreamError);
}

TEST_CASE("malformed records are skipped with a warning") {
    std::string bad =
        "WARC/0.9\r\nWARC-Type: response\r\nContent-Length: 3\r\n\r\nxyz\r\n\r\n"
        "WARC/1.0\r\nWARC-Type: response\r\nContent-Length: abc\r\n\r\nxyz\r\n\r\n"
        "WARC/1.0\r\nContent-Length: 3\r\n\r\nxyz\r\n\r\n";
    std::istringstream in(bad + kResponse);
    WarcReader reader(in);
    std::vector<WarcRecord> recs;
    while (auto r = reader.next()) recs.push_back(*r);
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].payload == "Bom dia, caro leitor. Sim");
    CHECK(reader.warnings().size() == 3);
}

TEST_CASE("fixture WARC round trip and independent boundary scan") {
    for (std::size_t n : {1, 2, 4, 9, 17}) {
        auto f = fx::warc_minimal(n, n * 31);
        auto recs = parse(f.bytes);
        REQUIRE(recs.size() == f.records.size());
        auto scan = fx::oracle::scan_warc(f.bytes);
        CHECK_FALSE(scan.truncated);
        CHECK(scan.records.size() == recs.size());
        std::string re;
        for (std::size_t i = 0; i < recs.size(); ++i) {
            CHECK(recs[i].record_type() == f.records[i].type);
            CHECK(recs[i].payload == f.records[i].payload);
            CHECK(recs[i].target_uri() == f.records[i].target_uri);
            CHECK(recs[i].payload.size() == scan.records[i].content_length);
            re += serialize(recs[i]);
        }
        CHECK(re == f.bytes);
        CHECK(parse(re) == recs);
    }
}

TEST_CASE("record_to_document") {
    auto recs = parse(kResponse);
    auto doc = record_to_document(recs[0]);
    REQUIRE(doc);
    CHECK(doc->id == "urn:uuid:0001");
    CHECK(doc->source_url == "https://exemplo.pt/a");
    CHECK(doc->capture_date == ymd(2021, 3, 4));
    CHECK(doc->annotations.at("ingest") == "text");

    auto html = make_record("WARC/1.1",
                            {{"WARC-Type", "response"},
                             {"WARC-Target-URI", "https://x.pt/"},
                             {"WARC-Date", "2020-01-01T00:00:00Z"},
                             {"Content-Type", "application/http; msgtype=response"}},
                            "HTTP/1.1 200 OK\r\nContent-Type: text/html\r\n\r\n<p>Olá</p>");
    auto hdoc = record_to_document(html, "fallback-7");
    REQUIRE(hdoc);
    CHECK(hdoc->id == "fallback-7");
    CHECK(hdoc->text == "<p>Olá</p>");
    CHECK(hdoc->annotations.at("ingest") == "html");

    auto req = make_record("WARC/1.1", {{"WARC-Type", "request"}}, "GET / HTTP/1.1\r\n\r\n");
    CHECK_FALSE(record_to_document(req));
    auto img = make_record("WARC/1.1", {{"WARC-Type", "response"}, {"Content-Type", "image/png"}}, "\x89PNG");
    CHECK_FALSE(record_to_document(img));
}

TEST_CASE("record_to_document sniffs mislabelled HTML") {
    auto r = make_record("WARC/1.1", {{"WARC-Type", "response"}, {"Content-Type", "application/octet-stream"}},
                         "  <!DOCTYPE html><html><p>x</p></html>");
    auto d = record_to_document(r, "id");
    REQUIRE(d);
    CHECK(d->annotations.at("ingest") == "html");
}

TEST_CASE("invalid UTF-8 becomes U+FFFD at the same position") {
    auto r = make_record("WARC/1.1", {{"WARC-Type", "response"}, {"Content-Type", "text/plain"}},
                         std::string("ab\xFF") + "cd");
    auto d = record_to_document(r, "id");
    REQUIRE(d);
    CHECK(d->text == "ab\xEF\xBF\xBD" "cd");
}

TEST_CASE("declared Latin-1 charset is honored") {
    auto r = make_record("WARC/1.1",
                         {{"WARC-Type", "response"}, {"Content-Type", "text/plain; charset=ISO-8859-1"}},
                         std::string("S\xE3o Jo\xE3o"));
    auto d = record_to_document(r, "id");
    REQUIRE(d);
    CHECK(d->text == "São João");
    auto w = make_record("WARC/1.1",
                         {{"WARC-Type", "response"}, {"Content-Type", "text/plain; charset=\"windows-1252\""}},
                         std::string("\x93" "aspas\x94 \x80"));
    auto dw = record_to_document(w, "id");
    REQUIRE(dw);
    CHECK(dw->text == "“aspas” €");
}

TEST_CASE("make_record sets Content-Length") {
    auto r = make_record("WARC/1.0", {{"WARC-Type", "metadata"}}, "abc");
    CHECK(r.declared_length() == 3);
    auto again = parse(serialize(r));
    REQUIRE(again.size() == 1);
    CHECK(again[0] == r);
}

TEST_CASE("embargo examples") {
    EmbargoPolicy p{ymd(2025, 9, 1), std::chrono::months{12}};
    Document d;
    d.id = "x";
    d.capture_date = ymd(2024, 1, 1);
    CHECK(embargo_filter(d, p).kept());
    d.capture_date = ymd(2025, 6, 1);
    CHECK(embargo_filter(d, p).reason == "embargo:too_recent");
    d.capture_date = ymd(2024, 9, 1);
    CHECK(embargo_filter(d, p).kept());
    d.capture_date = ymd(2024, 9, 2);
    CHECK_FALSE(embargo_filter(d, p).kept());
    d.capture_date.reset();
    CHECK(embargo_filter(d, p).reason == "embargo:missing_date");
    // Month-end clamping.
    EmbargoPolicy leap{ymd(2024, 2, 29), std::chrono::months{12}};
    CHECK(embargo_cutoff(leap) == ymd(2023, 2, 28));
    EmbargoPolicy none{ymd(2024, 2, 29), std::chrono::months{0}};
    CHECK(embargo_cutoff(none) == ymd(2024, 2, 29));
}

TEST_CASE("embargo is monotone in the capture date") {
    EmbargoPolicy p{ymd(2025, 9, 1), std::chrono::months{12}};
    using std::chrono::sys_days;
    Document d;
    d.id = "x";
    bool passed_before = true;
    for (auto day = sys_days{ymd(2023, 1, 1)}; day <= sys_days{ymd(2025, 12, 31)}; day += std::chrono::days{3}) {
        d.capture_date = Date{day};
        bool kept = embargo_filter(d, p).kept();
        if (!passed_before) CHECK_FALSE(kept);
        passed_before = kept;
    }
}

TEST_CASE("WarcFile opens plain and gzipped files") {
    cf_test::TempDir dir("warc");
    auto f = fx::warc_minimal(4, 5);
    {
        std::ofstream(dir / "a.warc", std::ios::binary) << f.bytes;
        std::ofstream(dir / "a.warc.gz", std::ios::binary) << gzip(f.bytes);
    }
    for (auto name : {"a.warc", "a.warc.gz"}) {
        WarcFile file(dir / name);
        std::size_t n = 0;
        while (file.reader().next()) ++n;
        CHECK(n == 4);
    }
    CHECK_THROWS_AS(WarcFile(dir / "missing.warc"), DataError);
}
