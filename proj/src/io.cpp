// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/io.hpp"

#include <sstream>

#include "corpus_forge/errors.hpp"

namespace corpus_forge {
namespace fs = std::filesystem;

Json document_to_json(const Document& doc) {
    Json j;
    j["id"] = doc.id;
    if (doc.source_url) j["url"] = *doc.source_url;
    if (doc.capture_date) j["date"] = format_iso_date(*doc.capture_date);
    j["text"] = doc.text;
    if (doc.language) j["lang"] = *doc.language;
    if (doc.language_confidence) j["lang_conf"] = *doc.language_confidence;
    if (!doc.annotations.empty()) {
        Json ann = Json::object();
        for (const auto& [k, v] : doc.annotations) ann[k] = v;
        j["annotations"] = std::move(ann);
    }
    return j;
}

Document document_from_json(const Json& j) {
    if (!j.is_object()) throw DataError("document is not a JSON object");
    Document doc;
    try {
        doc.id = j.at("id").get<std::string>();
        doc.text = j.at("text").get<std::string>();
        if (auto it = j.find("url"); it != j.end()) doc.source_url = it->get<std::string>();
        if (auto it = j.find("date"); it != j.end()) {
            auto raw = it->get<std::string>();
            doc.capture_date = parse_iso_date(raw);
            if (!doc.capture_date) throw DataError("invalid date '" + raw + "'");
        }
        if (auto it = j.find("lang"); it != j.end()) doc.language = it->get<std::string>();
        if (auto it = j.find("lang_conf"); it != j.end()) doc.language_confidence = it->get<double>();
        if (auto it = j.find("annotations"); it != j.end()) {
            for (const auto& [k, v] : it->items()) doc.annotations[k] = v.get<std::string>();
        }
    } catch (const Json::exception& e) {
        throw DataError(std::string("bad document field: ") + e.what());
    }
    if (doc.language.has_value() != doc.language_confidence.has_value()) {
        throw DataError("document '" + doc.id + "': lang and lang_conf must appear together");
    }
    return doc;
}

std::string document_to_jsonl(const Document& doc) {
    return document_to_json(doc).dump(-1, ' ', false, Json::error_handler_t::replace);
}

Document document_from_jsonl(std::string_view line) {
    Json j;
    try {
        j = Json::parse(line);
    } catch (const Json::parse_error& e) {
        throw DataError(std::string("malformed JSON: ") + e.what());
    }
    return document_from_json(j);
}

Json stats_to_json(const StageStats& s) {
    Json j;
    j["stage"] = s.stage;
    j["seen"] = s.seen;
    j["kept"] = s.kept;
    Json dropped = Json::object();
    for (const auto& [k, v] : s.dropped_by_reason) dropped[k] = v;
    j["dropped_by_reason"] = std::move(dropped);
    j["tokens_in"] = s.tokens_in;
    j["tokens_out"] = s.tokens_out;
    return j;
}

StageStats stats_from_json(const Json& j) {
    StageStats s;
    try {
        s.stage = j.at("stage").get<std::string>();
        s.seen = j.at("seen").get<std::uint64_t>();
        s.kept = j.at("kept").get<std::uint64_t>();
        for (const auto& [k, v] : j.at("dropped_by_reason").items()) s.dropped_by_reason[k] = v.get<std::uint64_t>();
        s.tokens_in = j.value("tokens_in", std::uint64_t{0});
        s.tokens_out = j.value("tokens_out", std::uint64_t{0});
    } catch (const Json::exception& e) {
        throw DataError(std::string("bad stage stats: ") + e.what());
    }
    return s;
}

JsonlReader::JsonlReader(const fs::path& path) : path_(path), in_(path, std::ios::binary) {
    if (!in_) throw DataError("cannot open " + path.string());
}

std::optional<Json> JsonlReader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_no_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        try {
            return Json::parse(line);
        } catch (const Json::parse_error& e) {
            throw DataError(path_.string() + ":" + std::to_string(line_no_) + ": " + e.what());
        }
    }
    return std::nullopt;
}

JsonlWriter::JsonlWriter(fs::path path) : path_(std::move(path)) {
    if (path_.has_parent_path()) fs::create_directories(path_.parent_path());
    tmp_ = path_;
    tmp_ += ".tmp";
    out_.open(tmp_, std::ios::binary | std::ios::trunc);
    if (!out_) throw DataError("cannot write " + tmp_.string());
}

JsonlWriter::~JsonlWriter() {
    if (!committed_) {
        out_.close();
        std::error_code ec;
        fs::remove(tmp_, ec);
    }
}

void JsonlWriter::write(const Json& j) { write_line(j.dump(-1, ' ', false, Json::error_handler_t::replace)); }

void JsonlWriter::write_line(std::string_view line) {
    out_.write(line.data(), static_cast<std::streamsize>(line.size()));
    out_.put('\n');
    ++count_;
}

void JsonlWriter::commit() {
    out_.close();
    if (!out_) throw DataError("failed writing " + tmp_.string());
    fs::rename(tmp_, path_);
    committed_ = true;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const fs::path& path, std::string_view contents) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw DataError("cannot write " + tmp.string());
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw DataError("failed writing " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace corpus_forge
