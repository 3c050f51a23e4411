// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstddef>
#include <filesystem>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "corpus_forge/model.hpp"

namespace corpus_forge::ingest {

struct WarcHeader {
    std::string name;
    std::string value;
    friend bool operator==(const WarcHeader&, const WarcHeader&) = default;
};

/// One WARC record. Headers keep file order and original spelling so a
/// record re-serializes to the bytes it was parsed from.
struct WarcRecord {
    std::string version;  // "WARC/1.0" or "WARC/1.1"
    std::vector<WarcHeader> headers;
    std::string payload;

    /// Case-insensitive header lookup (first occurrence).
    [[nodiscard]] std::optional<std::string> header(std::string_view name) const;
    [[nodiscard]] std::string record_type() const;
    [[nodiscard]] std::optional<std::string> target_uri() const;
    [[nodiscard]] std::optional<std::string> content_type() const;
    [[nodiscard]] std::optional<std::chrono::sys_seconds> warc_date() const;
    [[nodiscard]] std::optional<std::size_t> declared_length() const;

    friend bool operator==(const WarcRecord&, const WarcRecord&) = default;
};

/// Builds a record with a Content-Length header matching `payload`.
WarcRecord make_record(std::string version, std::vector<WarcHeader> headers, std::string payload);

/// ISO 28500 framing: version line, header lines, CRLF, payload, CRLF CRLF.
std::string serialize(const WarcRecord& rec);

std::optional<std::chrono::sys_seconds> parse_warc_date(std::string_view s);

/// Pull-based byte stream.
class ByteSource {
   public:
    virtual ~ByteSource() = default;
    /// Reads up to `n` bytes; returns 0 only at end of stream.
    virtual std::size_t read(char* buf, std::size_t n) = 0;
    /// True when the underlying container ended before it was complete.
    [[nodiscard]] virtual bool truncated() const { return false; }
};

std::unique_ptr<ByteSource> istream_source(std::istream& in);
/// Inflates concatenated gzip members (member-per-record or whole-stream).
std::unique_ptr<ByteSource> gzip_source(std::unique_ptr<ByteSource> inner);

/// Streams WARC records in file order. Holds at most one payload in memory.
///
/// Malformed records (bad version, missing or non-numeric Content-Length,
/// missing WARC-Type) are skipped and described in warnings(). A stream
/// that does not begin with a `WARC/` line raises FormatError. A stream
/// that ends inside a record raises TruncatedStreamError after every
/// complete record has been returned.
class WarcReader {
   public:
    /// Detects gzip by magic bytes. `in` must outlive the reader.
    explicit WarcReader(std::istream& in);
    explicit WarcReader(std::unique_ptr<ByteSource> source);
    ~WarcReader();
    WarcReader(WarcReader&&) noexcept;
    WarcReader& operator=(WarcReader&&) noexcept;

    std::optional<WarcRecord> next();

    [[nodiscard]] const std::vector<std::string>& warnings() const;
    [[nodiscard]] std::size_t records_read() const;

   private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Opens a `.warc` or `.warc.gz` file (gzip detected by content).
class WarcFile {
   public:
    explicit WarcFile(const std::filesystem::path& path);
    WarcReader& reader() { return reader_; }

   private:
    std::unique_ptr<std::istream> stream_;
    WarcReader reader_;
};

/// Reads everything; convenience for tests and small inputs.
std::vector<WarcRecord> read_all(std::istream& in);

/// Maps `response` records carrying HTML or plain text to a Document.
/// The HTTP header block, when present, is stripped; text is decoded with
/// the declared charset or as UTF-8 with U+FFFD replacement. The kind
/// ("html" or "text") is stored in annotations["ingest"]. `fallback_id` is
/// used when the record has no WARC-Record-ID.
std::optional<Document> record_to_document(const WarcRecord& rec, std::string_view fallback_id = {});

struct EmbargoPolicy {
    Date processing_date;
    std::chrono::months embargo{12};
};

/// Latest capture date the policy admits.
Date embargo_cutoff(const EmbargoPolicy& policy);

/// Keep iff capture_date <= processing_date - embargo.
Verdict embargo_filter(const Document& doc, const EmbargoPolicy& policy);

}  // namespace corpus_forge::ingest
