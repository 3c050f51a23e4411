// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/pipeline.hpp"

#include <glob.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <thread>

#include <openssl/evp.h>
#include <toml.hpp>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/ingest.hpp"
#include "corpus_forge/text.hpp"

namespace corpus_forge::pipeline {
namespace fs = std::filesystem;
namespace {

// ---- TOML helpers ---------------------------------------------------------

class Section {
   public:
    Section(const toml::table* t, std::string name) : t_(t), name_(std::move(name)) {}

    [[nodiscard]] bool present() const { return t_ != nullptr; }

    template <typename T>
    std::optional<T> get(std::string_view key) {
        used_.emplace(key);
        if (!t_) return std::nullopt;
        const toml::node* n = t_->get(key);
        if (!n) return std::nullopt;
        if constexpr (std::is_same_v<T, bool>) {
            if (auto v = n->value_exact<bool>()) return *v;
        } else if constexpr (std::is_same_v<T, std::string>) {
            if (auto v = n->value_exact<std::string>()) return *v;
        } else if constexpr (std::is_same_v<T, double>) {
            if (n->is_integer() || n->is_floating_point()) return n->value<double>();
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
            if (auto v = n->value_exact<std::int64_t>()) return *v;
        }
        throw ConfigError(where(key) + " has the wrong type");
    }

    std::optional<std::size_t> count(std::string_view key) {
        auto v = get<std::int64_t>(key);
        if (!v) return std::nullopt;
        if (*v < 0) throw ConfigError(where(key) + " must be >= 0");
        return static_cast<std::size_t>(*v);
    }

    std::optional<std::vector<std::string>> strings(std::string_view key) {
        used_.emplace(key);
        if (!t_) return std::nullopt;
        const toml::node* n = t_->get(key);
        if (!n) return std::nullopt;
        std::vector<std::string> out;
        if (auto s = n->value_exact<std::string>()) {
            out.push_back(*s);
            return out;
        }
        const auto* arr = n->as_array();
        if (!arr) throw ConfigError(where(key) + " must be a string or a list of strings");
        for (const auto& e : *arr) {
            auto s = e.value_exact<std::string>();
            if (!s) throw ConfigError(where(key) + " must contain only strings");
            out.push_back(*s);
        }
        return out;
    }

    const toml::table* table(std::string_view key) {
        used_.emplace(key);
        if (!t_) return nullptr;
        const toml::node* n = t_->get(key);
        if (!n) return nullptr;
        if (!n->is_table()) throw ConfigError(where(key) + " must be a table");
        return n->as_table();
    }

    const toml::node* raw(std::string_view key) {
        used_.emplace(key);
        return t_ ? t_->get(key) : nullptr;
    }

    /// Rejects keys nobody asked for.
    void finish() const {
        if (!t_) return;
        for (const auto& [k, _] : *t_) {
            if (!used_.contains(std::string(k.str()))) throw ConfigError("unknown config key " + where(k.str()));
        }
    }

    [[nodiscard]] std::string where(std::string_view key) const {
        return name_.empty() ? "'" + std::string(key) + "'" : "'" + name_ + "." + std::string(key) + "'";
    }

   private:
    const toml::table* t_;
    std::string name_;
    std::set<std::string> used_;
};

fs::path resolve(const fs::path& base, const std::string& p) {
    fs::path q(p);
    return q.is_absolute() ? q : base / q;
}

std::vector<std::string> read_lines(const fs::path& path) {
    if (!fs::exists(path)) throw ConfigError("file not found: " + path.string());
    std::ifstream in(path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;
        out.emplace_back(t);
    }
    return out;
}

std::map<int, double> ngram_limits(const toml::table* t, const std::string& where) {
    std::map<int, double> out;
    for (const auto& [k, v] : *t) {
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(std::string(k.str()), &used);
            if (used != k.str().size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ConfigError("'" + where + "' keys must be n-gram sizes");
        }
        if (!(v.is_integer() || v.is_floating_point())) throw ConfigError("'" + where + "' values must be numbers");
        out[n] = *v.value<double>();
    }
    return out;
}

Json ngram_json(const std::map<int, double>& m) {
    Json j = Json::object();
    for (const auto& [k, v] : m) j[std::to_string(k)] = v;
    return j;
}

StageStats named_stats(std::string name) {
    StageStats s;
    s.stage = std::move(name);
    return s;
}

std::string digest_of(const Json& j) { return sha256_hex(j.dump()); }

bool is_warc(const fs::path& p) {
    auto name = p.filename().string();
    for (std::string_view ext : {".warc", ".warc.gz", ".arc", ".arc.gz"}) {
        if (name.size() >= ext.size() && name.ends_with(ext)) return true;
    }
    return false;
}

// ---- parallel helpers -------------------------------------------------------

template <typename F>
void parallel_for(std::size_t n, std::size_t workers, F&& fn) {
    std::vector<std::exception_ptr> errors(n);
    std::atomic<std::size_t> next{0};
    auto body = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::size_t threads = std::min(workers, n);
    if (threads <= 1) {
        body();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(body);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
}

std::string stage_dir_name(const PipelineConfig& cfg, std::string_view stage) {
    auto it = std::find(cfg.stages.begin(), cfg.stages.end(), stage);
    char buf[8];
    std::snprintf(buf, sizeof buf, "%02zu", static_cast<std::size_t>(it - cfg.stages.begin()) + 1);
    return std::string(buf) + "-" + std::string(stage);
}

struct ShardResult {
    std::vector<StageStats> stats;  // one per document stage
    std::vector<std::string> warnings;
};

Json shard_result_to_json(const ShardResult& r, const std::string& hash) {
    Json stats = Json::array();
    for (const auto& s : r.stats) stats.push_back(stats_to_json(s));
    return Json{{"config_hash", hash}, {"stats", stats}, {"warnings", r.warnings}};
}

}  // namespace

// ---- stage registry ---------------------------------------------------------

const std::vector<std::string>& registered_stages() {
    static const std::vector<std::string> s{"ingest",         "embargo",         "url",     "extract",
                                            "language",       "gopher_repetition", "gopher_quality",
                                            "fineweb_quality", "variant",         "pii",     "dedup",
                                            "split"};
    return s;
}

const std::vector<std::string>& default_stages() {
    static const std::vector<std::string> s{"ingest",         "url",             "extract", "language",
                                            "gopher_repetition", "gopher_quality", "fineweb_quality",
                                            "variant",        "pii",             "dedup",   "split"};
    return s;
}

bool is_document_stage(std::string_view name) {
    return name != "dedup" && name != "split" &&
           std::find(registered_stages().begin(), registered_stages().end(), name) != registered_stages().end();
}

void PipelineConfig::validate() const {
    if (run_id.empty()) throw ConfigError("run_id must be non-empty");
    if (workers < 1) throw ConfigError("workers must be >= 1");
    if (stages.empty() || stages.front() != "ingest") throw ConfigError("stages must start with 'ingest'");
    const auto& reg = registered_stages();
    std::size_t last = 0;
    std::set<std::string> seen;
    for (const auto& s : stages) {
        auto it = std::find(reg.begin(), reg.end(), s);
        if (it == reg.end()) throw ConfigError("unknown stage '" + s + "'");
        if (!seen.insert(s).second) throw ConfigError("stage '" + s + "' listed twice");
        auto idx = static_cast<std::size_t>(it - reg.begin());
        if (idx < last) throw ConfigError("stage '" + s + "' is out of order");
        last = idx;
    }
    if (tokenizer.kind == TokenizerKind::Vocabulary && tokenizer.vocabulary.empty()) {
        throw ConfigError("tokenizer: vocabulary kind needs a non-empty vocabulary");
    }
    auto has = [&](std::string_view s) { return seen.contains(std::string(s)); };
    if (has("embargo")) {
        if (!processing_date) throw ConfigError("embargo: processing_date is required");
        if (embargo_months < 0) throw ConfigError("embargo: months must be >= 0");
    }
    url.validate();
    extract.validate();
    if (language.accept.empty()) throw ConfigError("language: accept must be non-empty");
    if (!(language.min_confidence >= 0.0 && language.min_confidence <= 1.0)) {
        throw ConfigError("language: min_confidence must be in [0, 1]");
    }
    gopher_repetition.validate();
    gopher_quality.validate();
    fineweb.validate();
    variant.lexicon.validate();
    mojibake.validate();
    dedup.validate();
    if (dedup_max_records < 2) throw ConfigError("dedup: max_records_in_memory must be >= 2");
    split_thresholds.validate();
    if (split_selection.empty()) throw ConfigError("split: select must name at least one split");
}

PipelineConfig load_pipeline_config(const fs::path& path) {
    if (!fs::exists(path)) throw ConfigError("config not found: " + path.string());
    toml::table root;
    try {
        root = toml::parse_file(path.string());
    } catch (const toml::parse_error& e) {
        throw ConfigError("cannot parse " + path.string() + ": " + std::string(e.description()));
    }
    PipelineConfig cfg;
    cfg.base_dir = fs::absolute(path).parent_path();
    const fs::path& base = cfg.base_dir;

    Section top(&root, "");
    if (auto v = top.get<std::string>("run_id")) cfg.run_id = *v;
    if (auto v = top.strings("input")) cfg.input = *v;
    if (auto v = top.get<std::string>("output_dir")) cfg.output_dir = resolve(base, *v);
    else cfg.output_dir = base / "out";
    if (auto v = top.count("workers")) cfg.workers = *v;
    if (auto v = top.get<std::int64_t>("seed")) cfg.seed = static_cast<std::uint64_t>(*v);
    if (auto v = top.strings("stages")) cfg.stages = *v;
    if (auto v = top.get<bool>("fused")) cfg.fused = *v;

    Section tok(top.table("tokenizer"), "tokenizer");
    if (auto k = tok.get<std::string>("kind")) {
        if (*k == "whitespace") {
            cfg.tokenizer.kind = TokenizerKind::Whitespace;
        } else if (*k == "vocabulary") {
            cfg.tokenizer.kind = TokenizerKind::Vocabulary;
        } else {
            throw ConfigError("tokenizer.kind must be 'whitespace' or 'vocabulary'");
        }
    }
    if (auto v = tok.strings("vocabulary")) cfg.tokenizer.vocabulary = *v;
    if (auto f = tok.get<std::string>("vocabulary_file")) cfg.tokenizer.vocabulary = read_lines(resolve(base, *f));
    tok.finish();

    Section emb(top.table("embargo"), "embargo");
    if (const auto* n = emb.raw("processing_date")) {
        if (auto d = n->value_exact<toml::date>()) {
            cfg.processing_date = Date{std::chrono::year{d->year}, std::chrono::month{d->month},
                                       std::chrono::day{d->day}};
        } else if (auto s = n->value_exact<std::string>()) {
            cfg.processing_date = parse_iso_date(*s);
            if (!cfg.processing_date) throw ConfigError("embargo.processing_date must be YYYY-MM-DD");
        } else {
            throw ConfigError("embargo.processing_date must be a date");
        }
    }
    if (auto v = emb.get<std::int64_t>("months")) cfg.embargo_months = static_cast<int>(*v);
    emb.finish();

    Section url(top.table("url"), "url");
    if (auto v = url.strings("blocked_tlds")) cfg.url.blocked_tlds = {v->begin(), v->end()};
    if (auto v = url.strings("blocklist")) cfg.url.blocklist.insert(v->begin(), v->end());
    if (auto f = url.get<std::string>("blocklist_file")) {
        auto p = resolve(base, *f);
        if (!fs::exists(p)) throw ConfigError("url.blocklist_file not found: " + p.string());
        auto b = filters::load_blocklist(p);
        cfg.url.blocklist.insert(b.begin(), b.end());
    }
    url.finish();

    Section ex(top.table("extract"), "extract");
    if (auto v = ex.count("min_line_chars")) cfg.extract.min_line_chars = *v;
    if (auto v = ex.get<bool>("drop_duplicate_lines")) cfg.extract.drop_duplicate_lines = *v;
    if (auto v = ex.get<double>("link_density_max")) cfg.extract.link_density_max = *v;
    if (auto v = ex.strings("boilerplate_tags")) cfg.extract.boilerplate_tags = {v->begin(), v->end()};
    ex.finish();

    Section lang(top.table("language"), "language");
    if (auto v = lang.get<std::string>("accept")) cfg.language.accept = *v;
    if (auto v = lang.get<double>("min_confidence")) cfg.language.min_confidence = *v;
    if (auto f = lang.get<std::string>("profiles_file")) {
        auto p = resolve(base, *f);
        if (!fs::exists(p)) throw ConfigError("language.profiles_file not found: " + p.string());
        cfg.language_profiles = filters::load_profiles(p);
    }
    lang.finish();

    Section rep(top.table("gopher_repetition"), "gopher_repetition");
    auto& gr = cfg.gopher_repetition;
    if (auto v = rep.get<double>("dup_line_frac_max")) gr.dup_line_frac_max = *v;
    if (auto v = rep.get<double>("dup_paragraph_frac_max")) gr.dup_paragraph_frac_max = *v;
    if (auto v = rep.get<double>("dup_line_char_frac_max")) gr.dup_line_char_frac_max = *v;
    if (auto v = rep.get<double>("dup_paragraph_char_frac_max")) gr.dup_paragraph_char_frac_max = *v;
    if (auto* t = rep.table("top_ngram_char_frac_max")) gr.top_ngram_char_frac_max = ngram_limits(t, "top_ngram_char_frac_max");
    if (auto* t = rep.table("dup_ngram_char_frac_max")) gr.dup_ngram_char_frac_max = ngram_limits(t, "dup_ngram_char_frac_max");
    rep.finish();

    Section gq(top.table("gopher_quality"), "gopher_quality");
    auto& q = cfg.gopher_quality;
    if (auto v = gq.count("min_words")) q.min_words = *v;
    if (auto v = gq.count("max_words")) q.max_words = *v;
    if (auto v = gq.get<double>("mean_word_len_min")) q.mean_word_len_min = *v;
    if (auto v = gq.get<double>("mean_word_len_max")) q.mean_word_len_max = *v;
    if (auto v = gq.get<double>("symbol_word_ratio_max")) q.symbol_word_ratio_max = *v;
    if (auto v = gq.get<double>("bullet_line_frac_max")) q.bullet_line_frac_max = *v;
    if (auto v = gq.get<double>("ellipsis_line_frac_max")) q.ellipsis_line_frac_max = *v;
    if (auto v = gq.get<double>("alpha_word_frac_min")) q.alpha_word_frac_min = *v;
    if (auto v = gq.count("min_stop_word_hits")) q.min_stop_word_hits = *v;
    if (auto v = gq.strings("stop_words")) q.stop_words = {v->begin(), v->end()};
    if (auto f = gq.get<std::string>("stop_words_file")) {
        auto w = read_lines(resolve(base, *f));
        q.stop_words = {w.begin(), w.end()};
    }
    gq.finish();

    Section fw(top.table("fineweb_quality"), "fineweb_quality");
    auto& f = cfg.fineweb;
    if (auto v = fw.get<double>("short_line_frac_max")) f.short_line_frac_max = *v;
    if (auto v = fw.count("short_line_chars")) f.short_line_chars = *v;
    if (auto v = fw.get<double>("char_dup_frac_max")) f.char_dup_frac_max = *v;
    if (auto v = fw.get<double>("line_punct_frac_min")) f.line_punct_frac_min = *v;
    if (auto v = fw.get<double>("new_line_ratio_max")) f.new_line_ratio_max = *v;
    if (auto v = fw.get<std::string>("terminal_punctuation")) f.terminal_punctuation = text::to_u32(*v);
    fw.finish();

    Section var(top.table("variant"), "variant");
    if (auto p = var.get<std::string>("lexicon_file")) {
        auto lp = resolve(base, *p);
        if (!fs::exists(lp)) throw ConfigError("variant.lexicon_file not found: " + lp.string());
        cfg.variant.lexicon = filters::load_variant_lexicon(lp);
    }
    if (auto v = var.get<double>("drop_below")) cfg.variant.drop_below = *v;
    var.finish();

    Section pii(top.table("pii"), "pii");
    if (auto v = pii.get<bool>("fix_encoding")) cfg.pii_fix_encoding = *v;
    if (auto p = pii.get<std::string>("mojibake_file")) {
        auto mp = resolve(base, *p);
        if (!fs::exists(mp)) throw ConfigError("pii.mojibake_file not found: " + mp.string());
        cfg.mojibake = pii::load_mojibake_table(mp);
    }
    pii.finish();

    Section dd(top.table("dedup"), "dedup");
    auto& d = cfg.dedup;
    if (auto v = dd.count("shingle_n")) d.shingle_n = *v;
    if (auto v = dd.count("num_hashes")) d.num_hashes = *v;
    if (auto v = dd.count("bands")) d.bands = *v;
    if (auto v = dd.count("rows_per_band")) d.rows_per_band = *v;
    if (auto v = dd.get<std::string>("survivor_policy")) d.survivor_policy = dedup::parse_policy(*v);
    if (auto v = dd.get<std::int64_t>("seed")) d.seed = static_cast<std::uint64_t>(*v);
    if (auto v = dd.get<double>("verify_threshold")) d.verify_threshold = *v;
    if (auto v = dd.get<bool>("per_collection")) d.per_collection = *v;
    if (auto v = dd.count("max_records_in_memory")) cfg.dedup_max_records = *v;
    dd.finish();

    Section sp(top.table("split"), "split");
    if (auto v = sp.get<double>("high_min")) cfg.split_thresholds.high_min = *v;
    if (auto v = sp.get<double>("medium_min")) cfg.split_thresholds.medium_min = *v;
    if (auto v = sp.strings("select")) cfg.split_selection = split::parse_split_set(*v);
    if (auto v = sp.get<bool>("fallback_scorer")) cfg.fallback_scorer = *v;
    if (auto p = sp.get<std::string>("scores_file")) {
        auto spth = resolve(base, *p);
        if (!fs::exists(spth)) throw ConfigError("split.scores_file not found: " + spth.string());
        try {
            cfg.scores = split::load_score_table(spth);
        } catch (const DataError& e) {
            throw ConfigError(std::string("split.scores_file: ") + e.what());
        }
    }
    sp.finish();

    top.finish();
    cfg.validate();
    return cfg;
}

std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 failed");
    }
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(kHex[md[i] >> 4]);
        out.push_back(kHex[md[i] & 15]);
    }
    return out;
}

Json config_to_json(const PipelineConfig& cfg) {
    Json j;
    j["run_id"] = cfg.run_id;
    j["input"] = cfg.input;
    j["seed"] = cfg.seed;
    j["stages"] = cfg.stages;
    j["tokenizer"] = Json{{"kind", cfg.tokenizer.kind == TokenizerKind::Whitespace ? "whitespace" : "vocabulary"},
                          {"vocabulary_sha256", digest_of(Json(cfg.tokenizer.vocabulary))}};
    j["embargo"] = Json{{"processing_date", cfg.processing_date ? format_iso_date(*cfg.processing_date) : ""},
                        {"months", cfg.embargo_months}};
    j["url"] = Json{{"blocked_tlds", cfg.url.blocked_tlds}, {"blocklist_sha256", digest_of(Json(cfg.url.blocklist))}};
    j["extract"] = Json{{"min_line_chars", cfg.extract.min_line_chars},
                        {"drop_duplicate_lines", cfg.extract.drop_duplicate_lines},
                        {"link_density_max", cfg.extract.link_density_max},
                        {"boilerplate_tags", cfg.extract.boilerplate_tags}};
    j["language"] = Json{{"accept", cfg.language.accept},
                         {"min_confidence", cfg.language.min_confidence},
                         {"profiles_sha256", cfg.language_profiles.empty()
                                                 ? std::string("builtin")
                                                 : digest_of(filters::profiles_to_json(cfg.language_profiles))}};
    const auto& gr = cfg.gopher_repetition;
    j["gopher_repetition"] = Json{{"dup_line_frac_max", gr.dup_line_frac_max},
                                  {"dup_paragraph_frac_max", gr.dup_paragraph_frac_max},
                                  {"dup_line_char_frac_max", gr.dup_line_char_frac_max},
                                  {"dup_paragraph_char_frac_max", gr.dup_paragraph_char_frac_max},
                                  {"top_ngram_char_frac_max", ngram_json(gr.top_ngram_char_frac_max)},
                                  {"dup_ngram_char_frac_max", ngram_json(gr.dup_ngram_char_frac_max)}};
    const auto& q = cfg.gopher_quality;
    j["gopher_quality"] = Json{{"min_words", q.min_words},
                               {"max_words", q.max_words},
                               {"mean_word_len_min", q.mean_word_len_min},
                               {"mean_word_len_max", q.mean_word_len_max},
                               {"symbol_word_ratio_max", q.symbol_word_ratio_max},
                               {"bullet_line_frac_max", q.bullet_line_frac_max},
                               {"ellipsis_line_frac_max", q.ellipsis_line_frac_max},
                               {"alpha_word_frac_min", q.alpha_word_frac_min},
                               {"min_stop_word_hits", q.min_stop_word_hits},
                               {"stop_words_sha256", digest_of(Json(q.stop_words))}};
    const auto& f = cfg.fineweb;
    j["fineweb_quality"] = Json{{"short_line_frac_max", f.short_line_frac_max},
                                {"short_line_chars", f.short_line_chars},
                                {"char_dup_frac_max", f.char_dup_frac_max},
                                {"line_punct_frac_min", f.line_punct_frac_min},
                                {"new_line_ratio_max", f.new_line_ratio_max},
                                {"terminal_punctuation", text::to_utf8(f.terminal_punctuation)}};
    Json lex = Json::array();
    for (const auto& [a, b] : cfg.variant.lexicon.pairs) lex.push_back(Json::array({a, b}));
    j["variant"] = Json{{"lexicon_sha256", digest_of(lex)},
                        {"drop_below", cfg.variant.drop_below ? Json(*cfg.variant.drop_below) : Json()}};
    j["pii"] = Json{{"fix_encoding", cfg.pii_fix_encoding}, {"mojibake_sha256", digest_of(Json(cfg.mojibake.entries))}};
    const auto& d = cfg.dedup;
    j["dedup"] = Json{{"shingle_n", d.shingle_n},
                      {"num_hashes", d.num_hashes},
                      {"bands", d.bands},
                      {"rows_per_band", d.rows_per_band},
                      {"survivor_policy", dedup::policy_name(d.survivor_policy)},
                      {"seed", d.seed},
                      {"verify_threshold", d.verify_threshold ? Json(*d.verify_threshold) : Json()},
                      {"per_collection", d.per_collection}};
    Json sel = Json::array();
    for (auto s : cfg.split_selection) sel.push_back(split::split_name(s));
    std::string scores = "none";
    if (cfg.scores) {
        Json t = Json::object();
        std::map<std::string, Json> sorted;
        for (const auto& [id, s] : cfg.scores->scores) sorted[id] = s;
        for (const auto& [id, l] : cfg.scores->labels) sorted[id] = split::split_name(l);
        for (auto& [id, v] : sorted) t[id] = std::move(v);
        scores = digest_of(t);
    }
    j["split"] = Json{{"high_min", cfg.split_thresholds.high_min},
                      {"medium_min", cfg.split_thresholds.medium_min},
                      {"select", sel},
                      {"fallback_scorer", cfg.fallback_scorer},
                      {"scores_sha256", scores}};
    return j;
}

std::string config_hash(const PipelineConfig& cfg) { return sha256_hex(config_to_json(cfg).dump()); }

std::vector<fs::path> resolve_inputs(const PipelineConfig& cfg) {
    std::set<fs::path> found;
    for (const auto& pat : cfg.input) {
        auto full = resolve(cfg.base_dir.empty() ? fs::current_path() : cfg.base_dir, pat).string();
        glob_t g{};
        int rc = ::glob(full.c_str(), 0, nullptr, &g);
        if (rc == 0) {
            for (std::size_t i = 0; i < g.gl_pathc; ++i) {
                fs::path p(g.gl_pathv[i]);
                if (fs::is_regular_file(p)) found.insert(fs::weakly_canonical(p));
            }
        }
        globfree(&g);
        if (rc == GLOB_NOMATCH) throw ConfigError("input pattern '" + pat + "' matches no files");
        if (rc != 0) throw ConfigError("cannot expand input pattern '" + pat + "'");
    }
    return {found.begin(), found.end()};
}

std::string shard_name(std::size_t index, const fs::path& input) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%05zu-", index);
    std::string out(buf);
    for (char c : input.filename().string()) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_' || c == '-';
        out.push_back(ok ? c : '_');
    }
    return out;
}

Json run_report_to_json(const RunReport& r) {
    Json stages = Json::array();
    for (const auto& s : r.stages) stages.push_back(stats_to_json(s));
    Json outputs = Json::object();
    for (const auto& [k, v] : r.outputs) outputs[k] = Json{{"docs", v.docs}, {"tokens", v.tokens}};
    return Json{{"run_id", r.run_id},   {"config_hash", r.config_hash}, {"shards", r.shards},
                {"stages", stages},     {"outputs", outputs},           {"warnings", r.warnings},
                {"wall_time_s", r.wall_time_s}};
}

RunReport run_report_from_json(const Json& j) {
    RunReport r;
    try {
        r.run_id = j.at("run_id").get<std::string>();
        r.config_hash = j.at("config_hash").get<std::string>();
        r.shards = j.value("shards", std::size_t{0});
        for (const auto& s : j.at("stages")) r.stages.push_back(stats_from_json(s));
        if (j.contains("outputs")) {
            for (const auto& [k, v] : j["outputs"].items()) {
                r.outputs[k] = {v.at("docs").get<std::uint64_t>(), v.at("tokens").get<std::uint64_t>()};
            }
        }
        if (j.contains("warnings")) r.warnings = j["warnings"].get<std::vector<std::string>>();
        r.wall_time_s = j.value("wall_time_s", 0.0);
    } catch (const Json::exception& e) {
        throw DataError(std::string("bad run report: ") + e.what());
    }
    return r;
}

// ---- document stages --------------------------------------------------------

DocumentStages::DocumentStages(const PipelineConfig& cfg)
    : cfg_(cfg), profiles_(cfg.language_profiles.empty() ? &filters::builtin_profiles() : &cfg.language_profiles) {}

Verdict DocumentStages::apply(std::string_view stage, Document& doc) const {
    if (stage == "ingest") return Verdict::keep("ingest");
    if (stage == "embargo") {
        ingest::EmbargoPolicy p{*cfg_.processing_date, std::chrono::months{cfg_.embargo_months}};
        return ingest::embargo_filter(doc, p);
    }
    if (stage == "url") {
        // Non-web sources carry no URL and are not subject to URL rules.
        if (!doc.source_url) return Verdict::keep("url");
        return filters::url_filter(*doc.source_url, cfg_.url);
    }
    if (stage == "extract") {
        auto it = doc.annotations.find("ingest");
        std::string body = it != doc.annotations.end() && it->second == "html"
                               ? extract::extract_main_text(doc.text, cfg_.extract)
                               : doc.text;
        doc.text = extract::clean_lines(body, cfg_.extract);
        if (text::trim(doc.text).empty()) return Verdict::drop("extract", reason::extract_empty);
        return Verdict::keep("extract");
    }
    if (stage == "language") return filters::language_filter(doc, *profiles_, cfg_.language);
    if (stage == "gopher_repetition") return filters::gopher_repetition(doc, cfg_.gopher_repetition);
    if (stage == "gopher_quality") return filters::gopher_quality(doc, cfg_.gopher_quality);
    if (stage == "fineweb_quality") return filters::fineweb_quality(doc, cfg_.fineweb);
    if (stage == "variant") return filters::variant_filter(doc, cfg_.variant);
    if (stage == "pii") {
        if (cfg_.pii_fix_encoding) doc.text = pii::fix_encoding(doc.text, cfg_.mojibake);
        auto r = pii::scrub_pii(doc.text);
        doc.text = std::move(r.text);
        doc.annotations["pii"] = std::to_string(r.report.total());
        return Verdict::keep("pii");
    }
    throw ContractError("not a document stage: " + std::string(stage));
}

// ---- run --------------------------------------------------------------------

namespace {

class Runner {
   public:
    Runner(const PipelineConfig& cfg, const RunOptions& opts)
        : cfg_(cfg), opts_(opts), tok_(cfg.tokenizer), stages_(cfg), hash_(config_hash(cfg)) {
        for (const auto& s : cfg.stages) {
            if (is_document_stage(s)) doc_stages_.push_back(s);
        }
        has_dedup_ = std::find(cfg.stages.begin(), cfg.stages.end(), "dedup") != cfg.stages.end();
        has_split_ = std::find(cfg.stages.begin(), cfg.stages.end(), "split") != cfg.stages.end();
    }

    RunReport run() {
        auto t0 = std::chrono::steady_clock::now();
        inputs_ = resolve_inputs(cfg_);
        for (std::size_t i = 0; i < inputs_.size(); ++i) shards_.push_back(shard_name(i, inputs_[i]));

        RunReport rep;
        rep.run_id = cfg_.run_id;
        rep.config_hash = hash_;
        rep.shards = shards_.size();
        fs::create_directories(cfg_.output_dir);

        std::vector<ShardResult> results(shards_.size());
        parallel_for(shards_.size(), cfg_.workers, [&](std::size_t i) { results[i] = document_phase(i); });

        std::map<std::string, StageStats> merged;
        for (const auto& s : cfg_.stages) merged[s].stage = s;
        for (const auto& r : results) {
            for (const auto& s : r.stats) merged[s.stage] = merge_stats(merged[s.stage], s);
            rep.warnings.insert(rep.warnings.end(), r.warnings.begin(), r.warnings.end());
        }

        auto final_dir = cfg_.output_dir / "stages" / stage_dir_name(cfg_, doc_stages_.back());
        if (has_dedup_) {
            merged["dedup"] = dedup_phase(final_dir);
            final_dir = cfg_.output_dir / "stages" / stage_dir_name(cfg_, "dedup");
        }
        if (has_split_) {
            auto [stats, totals] = split_phase(final_dir);
            merged["split"] = stats;
            rep.outputs = std::move(totals);
            if (cfg_.fallback_scorer) {
                rep.warnings.push_back(std::string("split scores from ") + std::string(split::kFallbackScorerName));
            }
        } else {
            auto& tot = rep.outputs["output"];
            for (const auto& sh : shards_) {
                auto p = final_dir / (sh + ".jsonl");
                if (!fs::exists(p)) continue;
                JsonlReader r(p);
                while (auto j = r.next()) {
                    ++tot.docs;
                    tot.tokens += tok_.count(document_from_json(*j).text);
                }
            }
        }
        for (const auto& s : cfg_.stages) rep.stages.push_back(merged[s]);
        rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        write_file(cfg_.output_dir / "run_report.json", run_report_to_json(rep).dump(2) + "\n");
        return rep;
    }

   private:
    fs::path stage_file(std::string_view stage, const std::string& shard) const {
        return cfg_.output_dir / "stages" / stage_dir_name(cfg_, stage) / (shard + ".jsonl");
    }
    fs::path done_marker(const std::string& shard) const {
        return cfg_.output_dir / "work" / "done" / (shard + ".json");
    }

    std::optional<ShardResult> resumed(const std::string& shard) const {
        auto m = done_marker(shard);
        if (!opts_.resume || !fs::exists(m) || !fs::exists(stage_file(doc_stages_.back(), shard))) return std::nullopt;
        try {
            auto j = Json::parse(read_file(m));
            if (j.at("config_hash").get<std::string>() != hash_) return std::nullopt;
            ShardResult r;
            for (const auto& s : j.at("stats")) r.stats.push_back(stats_from_json(s));
            r.warnings = j.at("warnings").get<std::vector<std::string>>();
            if (r.stats.size() != doc_stages_.size()) return std::nullopt;
            return r;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }

    /// Calls `emit` for every raw item of an input file: a document, or
    /// nullopt for a WARC record that is not one.
    template <typename Emit>
    void read_input(std::size_t i, ShardResult& res, Emit&& emit) const {
        const auto& path = inputs_[i];
        std::uint64_t record = 0;
        auto fallback = [&] { return shards_[i] + ":" + std::to_string(record); };
        if (is_warc(path)) {
            ingest::WarcFile wf(path);
            try {
                while (auto rec = wf.reader().next()) {
                    auto doc = ingest::record_to_document(*rec, fallback());
                    ++record;
                    emit(std::move(doc));
                }
            } catch (const TruncatedStreamError& e) {
                res.warnings.push_back(shards_[i] + ": " + e.what());
            }
            for (const auto& w : wf.reader().warnings()) res.warnings.push_back(shards_[i] + ": " + w);
        } else {
            JsonlReader r(path);
            while (auto j = r.next()) {
                Document d;
                try {
                    d = document_from_json(*j);
                } catch (const DataError& e) {
                    throw DataError(path.string() + ":" + std::to_string(r.line_number()) + ": " + e.what());
                }
                ++record;
                emit(std::optional<Document>(std::move(d)));
            }
        }
    }

    /// Ingest bookkeeping shared by both modes; returns the document when it
    /// enters the chain.
    std::optional<Document> admit(std::optional<Document> doc, StageStats& st) const {
        if (!doc) {
            st.record_drop(reason::ingest_not_document, 0);
            return std::nullopt;
        }
        doc->annotations["config_hash"] = hash_;
        auto t = tok_.count(doc->text);
        st.record_keep(t, t);
        return doc;
    }

    void run_stage(std::size_t k, Document& doc, bool& alive, std::vector<StageStats>& stats) const {
        auto before = tok_.count(doc.text);
        auto v = stages_.apply(doc_stages_[k], doc);
        if (v.kept()) {
            stats[k].record_keep(before, tok_.count(doc.text));
        } else {
            stats[k].record_drop(v.reason, before);
            alive = false;
        }
    }

    ShardResult document_phase(std::size_t i) const {
        const auto& shard = shards_[i];
        if (auto r = resumed(shard)) return *r;
        ShardResult res;
        for (const auto& s : doc_stages_) res.stats.push_back(named_stats(s));

        if (cfg_.fused) {
            auto out = stage_file(doc_stages_.back(), shard);
            fs::create_directories(out.parent_path());
            JsonlWriter w(out);
            read_input(i, res, [&](std::optional<Document> d) {
                auto doc = admit(std::move(d), res.stats[0]);
                if (!doc) return;
                bool alive = true;
                for (std::size_t k = 1; k < doc_stages_.size() && alive; ++k) run_stage(k, *doc, alive, res.stats);
                if (alive) w.write(document_to_json(*doc));
            });
            w.commit();
        } else {
            auto first = stage_file(doc_stages_[0], shard);
            fs::create_directories(first.parent_path());
            {
                JsonlWriter w(first);
                read_input(i, res, [&](std::optional<Document> d) {
                    if (auto doc = admit(std::move(d), res.stats[0])) w.write(document_to_json(*doc));
                });
                w.commit();
            }
            for (std::size_t k = 1; k < doc_stages_.size(); ++k) {
                auto in = stage_file(doc_stages_[k - 1], shard);
                auto out = stage_file(doc_stages_[k], shard);
                fs::create_directories(out.parent_path());
                JsonlReader r(in);
                JsonlWriter w(out);
                while (auto j = r.next()) {
                    auto doc = document_from_json(*j);
                    bool alive = true;
                    run_stage(k, doc, alive, res.stats);
                    if (alive) w.write(document_to_json(doc));
                }
                w.commit();
            }
        }
        fs::create_directories(done_marker(shard).parent_path());
        write_file(done_marker(shard), shard_result_to_json(res, hash_).dump() + "\n");
        return res;
    }

    StageStats dedup_phase(const fs::path& in_dir) const {
        auto work = cfg_.output_dir / "work" / "dedup";
        fs::remove_all(work);
        dedup::Deduplicator dd(cfg_.dedup, work, cfg_.dedup_max_records);
        struct Item {
            dedup::DocMeta meta;
            dedup::MinHashSignature sig;
            std::string collection;
        };
        std::vector<std::uint64_t> offsets(shards_.size() + 1, 0);
        std::size_t batch = std::max<std::size_t>(1, cfg_.workers);
        for (std::size_t b = 0; b < shards_.size(); b += batch) {
            std::size_t e = std::min(shards_.size(), b + batch);
            std::vector<std::vector<Item>> items(e - b);
            parallel_for(e - b, cfg_.workers, [&](std::size_t k) {
                auto p = in_dir / (shards_[b + k] + ".jsonl");
                JsonlReader r(p);
                std::uint64_t rec = 0;
                while (auto j = r.next()) {
                    auto doc = document_from_json(*j);
                    Item it;
                    it.meta = {doc.id, static_cast<std::uint32_t>(b + k), rec++, tok_.count(doc.text)};
                    it.sig = dedup::signature_of(doc, cfg_.dedup);
                    if (auto c = doc.annotations.find("collection"); c != doc.annotations.end()) it.collection = c->second;
                    items[k].push_back(std::move(it));
                }
            });
            for (std::size_t k = 0; k < items.size(); ++k) {
                for (const auto& it : items[k]) dd.add(it.meta, it.sig, it.collection);
                offsets[b + k + 1] = offsets[b + k] + items[k].size();
            }
        }
        auto result = dd.finish();
        fs::create_directories(cfg_.output_dir / "reports");
        dedup::write_cluster_report(cfg_.output_dir / "reports" / "dedup_clusters.jsonl", result.clusters);

        std::vector<StageStats> per(shards_.size(), named_stats("dedup"));
        parallel_for(shards_.size(), cfg_.workers, [&](std::size_t s) {
            auto out = stage_file("dedup", shards_[s]);
            fs::create_directories(out.parent_path());
            JsonlReader r(in_dir / (shards_[s] + ".jsonl"));
            JsonlWriter w(out);
            std::uint64_t ord = offsets[s];
            while (auto j = r.next()) {
                auto doc = document_from_json(*j);
                auto t = tok_.count(doc.text);
                if (result.keep[ord++]) {
                    per[s].record_keep(t, t);
                    w.write(*j);
                } else {
                    per[s].record_drop(reason::dedup_near_duplicate, t);
                }
            }
            w.commit();
        });
        StageStats total = named_stats("dedup");
        for (const auto& p : per) total = merge_stats(total, p);
        return total;
    }

    std::pair<StageStats, std::map<std::string, split::SplitTotals>> split_phase(const fs::path& in_dir) const {
        auto out_dir = cfg_.output_dir / "splits";
        std::vector<split::SplitOutcome> outcomes(shards_.size());
        parallel_for(shards_.size(), cfg_.workers, [&](std::size_t s) {
            split::SplitRouter router(out_dir, shards_[s], cfg_.split_selection, tok_);
            JsonlReader r(in_dir / (shards_[s] + ".jsonl"));
            while (auto j = r.next()) {
                auto doc = document_from_json(*j);
                auto q = split::QualitySplit::Unscored;
                if (cfg_.scores) q = split::assign_quality(doc.id, *cfg_.scores, cfg_.split_thresholds);
                if (q == split::QualitySplit::Unscored && cfg_.fallback_scorer) {
                    double sc = split::fallback_score(doc.text);
                    char buf[32];
                    std::snprintf(buf, sizeof buf, "%.6f", sc);
                    doc.annotations["quality_score"] = buf;
                    doc.annotations["quality_scorer"] = std::string(split::kFallbackScorerName);
                    q = split::assign_quality(sc, cfg_.split_thresholds);
                } else if (q != split::QualitySplit::Unscored) {
                    doc.annotations["quality_scorer"] = cfg_.scores->source_name;
                }
                router.route(std::move(doc), q);
            }
            outcomes[s] = router.finish();
        });
        StageStats stats = named_stats("split");
        std::map<std::string, split::SplitTotals> totals;
        for (auto q : {split::QualitySplit::High, split::QualitySplit::Medium, split::QualitySplit::Low,
                       split::QualitySplit::Unscored}) {
            totals[std::string(split::split_name(q))] = {};
        }
        for (const auto& o : outcomes) {
            stats = merge_stats(stats, o.stats);
            for (const auto& [q, t] : o.totals) {
                auto& dst = totals[std::string(split::split_name(q))];
                dst.docs += t.docs;
                dst.tokens += t.tokens;
            }
        }
        return {stats, totals};
    }

    const PipelineConfig& cfg_;
    RunOptions opts_;
    Tokenizer tok_;
    DocumentStages stages_;
    std::string hash_;
    std::vector<std::string> doc_stages_;
    bool has_dedup_ = false;
    bool has_split_ = false;
    std::vector<fs::path> inputs_;
    std::vector<std::string> shards_;
};

}  // namespace

RunReport run_pipeline(const PipelineConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    return Runner(cfg, opts).run();
}

}  // namespace corpus_forge::pipeline
