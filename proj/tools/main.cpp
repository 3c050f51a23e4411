// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

// corpus-forge: command-line front end. Every subcommand reads and writes the
// JSONL interchange, so stages compose through files.

#include <cstdio>
#include <cstdlib>
#include <unistd.h>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corpus_forge/dedup.hpp"
#include "corpus_forge/errors.hpp"
#include "corpus_forge/ingest.hpp"
#include "corpus_forge/io.hpp"
#include "corpus_forge/mixture.hpp"
#include "corpus_forge/pipeline.hpp"
#include "corpus_forge/pii.hpp"
#include "corpus_forge/posttrain.hpp"
#include "corpus_forge/split.hpp"

namespace fs = std::filesystem;
using namespace corpus_forge;

namespace {

constexpr int kExitData = 1;
constexpr int kExitUsage = 2;

pipeline::PipelineConfig config_or_default(const std::string& path) {
    if (path.empty()) return pipeline::PipelineConfig{};
    return pipeline::load_pipeline_config(path);
}

void write_stage_report(const std::string& path, const std::vector<StageStats>& stats) {
    if (path.empty()) return;
    Json stages = Json::array();
    for (const auto& s : stats) stages.push_back(stats_to_json(s));
    write_file(path, Json{{"stages", stages}}.dump(2) + "\n");
}

void print_summary(const std::vector<StageStats>& stats) {
    for (const auto& s : stats) {
        std::cerr << s.stage << ": seen " << s.seen << ", kept " << s.kept << ", dropped " << s.dropped() << "\n";
    }
}

std::vector<std::string> split_csv(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto c = s.find(',', pos);
        if (c == std::string::npos) c = s.size();
        if (c > pos) out.push_back(s.substr(pos, c - pos));
        pos = c + 1;
    }
    return out;
}

// ---- ingest -----------------------------------------------------------------

struct IngestArgs {
    std::vector<std::string> inputs;
    std::string output;
    std::string report;
    std::string config;
};

int cmd_ingest(const IngestArgs& a) {
    auto cfg = config_or_default(a.config);
    Tokenizer tok(cfg.tokenizer);
    StageStats st;
    st.stage = "ingest";
    JsonlWriter w(a.output);
    std::vector<std::string> warnings;
    for (const auto& in : a.inputs) {
        ingest::WarcFile wf(in);
        std::uint64_t rec = 0;
        try {
            while (auto r = wf.reader().next()) {
                auto doc = ingest::record_to_document(*r, fs::path(in).filename().string() + ":" + std::to_string(rec++));
                if (!doc) {
                    st.record_drop(reason::ingest_not_document, 0);
                    continue;
                }
                auto t = tok.count(doc->text);
                st.record_keep(t, t);
                w.write(document_to_json(*doc));
            }
        } catch (const TruncatedStreamError& e) {
            warnings.push_back(in + ": " + e.what());
        }
        for (const auto& m : wf.reader().warnings()) warnings.push_back(in + ": " + m);
    }
    w.commit();
    for (const auto& m : warnings) std::cerr << "warning: " << m << "\n";
    write_stage_report(a.report, {st});
    print_summary({st});
    return 0;
}

// ---- document stages (filter, pii) -----------------------------------------

struct ChainArgs {
    std::string input;
    std::string output;
    std::string report;
    std::string config;
    std::string stages;
};

int run_chain(const ChainArgs& a, std::vector<std::string> stages, const pipeline::PipelineConfig& cfg) {
    pipeline::DocumentStages runner(cfg);
    Tokenizer tok(cfg.tokenizer);
    std::vector<StageStats> stats(stages.size());
    for (std::size_t k = 0; k < stages.size(); ++k) stats[k].stage = stages[k];
    JsonlReader r(a.input);
    JsonlWriter w(a.output);
    while (auto j = r.next()) {
        Document doc;
        try {
            doc = document_from_json(*j);
        } catch (const DataError& e) {
            throw DataError(a.input + ":" + std::to_string(r.line_number()) + ": " + e.what());
        }
        bool alive = true;
        for (std::size_t k = 0; k < stages.size() && alive; ++k) {
            auto before = tok.count(doc.text);
            auto v = runner.apply(stages[k], doc);
            if (v.kept()) {
                stats[k].record_keep(before, tok.count(doc.text));
            } else {
                stats[k].record_drop(v.reason, before);
                alive = false;
            }
        }
        if (alive) w.write(document_to_json(doc));
    }
    w.commit();
    write_stage_report(a.report, stats);
    print_summary(stats);
    return 0;
}

int cmd_filter(const ChainArgs& a) {
    auto cfg = config_or_default(a.config);
    std::vector<std::string> stages;
    if (!a.stages.empty()) {
        stages = split_csv(a.stages);
    } else {
        for (const auto& s : cfg.stages) {
            if (pipeline::is_document_stage(s) && s != "ingest" && s != "pii") stages.push_back(s);
        }
    }
    for (const auto& s : stages) {
        if (!pipeline::is_document_stage(s) || s == "ingest") throw ConfigError("filter: unknown stage '" + s + "'");
        if (s == "embargo" && !cfg.processing_date) throw ConfigError("embargo: processing_date is required");
    }
    return run_chain(a, stages, cfg);
}

int cmd_pii(const ChainArgs& a, bool no_fix, const std::string& mojibake) {
    auto cfg = config_or_default(a.config);
    if (no_fix) cfg.pii_fix_encoding = false;
    if (!mojibake.empty()) cfg.mojibake = pii::load_mojibake_table(mojibake);
    return run_chain(a, {"pii"}, cfg);
}

// ---- dedup ------------------------------------------------------------------

struct DedupArgs {
    std::vector<std::string> inputs;
    std::string output;
    std::string clusters;
    std::string report;
    std::string config;
    std::string work_dir;
    bool dry_run = false;
};

int cmd_dedup(const DedupArgs& a) {
    auto cfg = config_or_default(a.config);
    if (!a.dry_run && a.output.empty()) throw ConfigError("dedup: --output is required unless --dry-run");
    Tokenizer tok(cfg.tokenizer);
    fs::path work = a.work_dir.empty() ? fs::temp_directory_path() / ("corpus-forge-dedup-" + std::to_string(::getpid()))
                                       : fs::path(a.work_dir);
    dedup::Deduplicator dd(cfg.dedup, work, cfg.dedup_max_records);
    for (std::size_t s = 0; s < a.inputs.size(); ++s) {
        JsonlReader r(a.inputs[s]);
        std::uint64_t rec = 0;
        while (auto j = r.next()) {
            auto doc = document_from_json(*j);
            std::string coll;
            if (auto c = doc.annotations.find("collection"); c != doc.annotations.end()) coll = c->second;
            dd.add({doc.id, static_cast<std::uint32_t>(s), rec++, tok.count(doc.text)}, dedup::signature_of(doc, cfg.dedup),
                   coll);
        }
    }
    auto res = dd.finish();
    fs::remove_all(work);
    if (!a.clusters.empty()) dedup::write_cluster_report(a.clusters, res.clusters);
    StageStats st;
    st.stage = "dedup";
    std::optional<JsonlWriter> w;
    if (!a.dry_run) w.emplace(a.output);
    std::uint64_t ord = 0;
    for (const auto& in : a.inputs) {
        JsonlReader r(in);
        while (auto j = r.next()) {
            auto t = tok.count(document_from_json(*j).text);
            if (res.keep[ord++]) {
                st.record_keep(t, t);
                if (w) w->write(*j);
            } else {
                st.record_drop(reason::dedup_near_duplicate, t);
            }
        }
    }
    if (w) w->commit();
    write_stage_report(a.report, {st});
    print_summary({st});
    std::cerr << "clusters: " << res.clusters.size() << (a.dry_run ? " (dry run, corpus untouched)" : "") << "\n";
    return 0;
}

// ---- split ------------------------------------------------------------------

struct SplitArgs {
    std::vector<std::string> inputs;
    std::string output_dir;
    std::string scores;
    std::string select;
    std::string report;
    std::string config;
    bool fallback = false;
};

int cmd_split(const SplitArgs& a) {
    auto cfg = config_or_default(a.config);
    Tokenizer tok(cfg.tokenizer);
    std::optional<split::QualityScoreTable> table = cfg.scores;
    if (!a.scores.empty()) table = split::load_score_table(a.scores);
    auto selected = a.select.empty() ? cfg.split_selection : split::parse_split_set(split_csv(a.select));
    bool fallback = a.fallback || cfg.fallback_scorer;
    StageStats total;
    total.stage = "split";
    for (const auto& in : a.inputs) {
        split::SplitRouter router(a.output_dir, fs::path(in).stem().string(), selected, tok);
        JsonlReader r(in);
        while (auto j = r.next()) {
            auto doc = document_from_json(*j);
            auto q = table ? split::assign_quality(doc.id, *table, cfg.split_thresholds) : split::QualitySplit::Unscored;
            if (q == split::QualitySplit::Unscored && fallback) {
                q = split::assign_quality(split::fallback_score(doc.text), cfg.split_thresholds);
                doc.annotations["quality_scorer"] = std::string(split::kFallbackScorerName);
            }
            router.route(std::move(doc), q);
        }
        total = merge_stats(total, router.finish().stats);
    }
    if (fallback) std::cerr << "warning: scores from " << split::kFallbackScorerName << "\n";
    write_stage_report(a.report, {total});
    print_summary({total});
    return 0;
}

// ---- posttrain --------------------------------------------------------------

struct PosttrainArgs {
    std::string input;
    std::string output;
    std::string quarantine;
    std::string report;
    std::string config;
    std::string adapters;
    std::string source;
    bool strip_traces = true;
    bool self_ref = true;
    double min_quality = 5.0;
    bool dedup_prompts = true;
    double unbox_p = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t max_tokens = 0;
};

int cmd_posttrain(const PosttrainArgs& a) {
    using namespace posttrain;
    auto cfg = config_or_default(a.config);
    Tokenizer tok(cfg.tokenizer);
    std::vector<SftEntry> entries;
    if (!a.adapters.empty()) {
        auto adapters = load_adapters(a.adapters);
        const SourceAdapter* ad = nullptr;
        for (const auto& x : adapters) {
            if (x.name == a.source) ad = &x;
        }
        if (!ad) throw ConfigError("posttrain: no adapter named '" + a.source + "'");
        JsonlReader r(a.input);
        while (auto j = r.next()) {
            try {
                entries.push_back(adapt_row(*j, *ad, tok, a.source + ":" + std::to_string(r.line_number())));
            } catch (const DataError& e) {
                throw DataError(a.input + ":" + std::to_string(r.line_number()) + ": " + e.what());
            }
        }
    } else {
        entries = read_entries(a.input);
    }
    if (!(a.unbox_p >= 0.0 && a.unbox_p <= 1.0)) throw ConfigError("posttrain: --unbox-p must be in [0, 1]");

    auto named = [](const char* n) {
        StageStats s;
        s.stage = n;
        return s;
    };
    StageStats structure = named("structure"), traces = named("strip_traces"), selfref = named("self_ref"),
               length = named("long_context");
    auto tags = default_trace_tags();
    auto patterns = default_self_ref_patterns();
    std::vector<SftEntry> pass;
    for (auto& e : entries) {
        e.token_count = entry_tokens(e, tok);
        auto v = check_entry(e);
        structure.record(v, e.token_count, e.token_count);
        if (!v.kept()) continue;
        if (a.strip_traces) {
            auto before = e.token_count;
            e = strip_reasoning_traces(std::move(e), tags);
            e.token_count = entry_tokens(e, tok);
            auto v2 = check_entry(e);
            traces.record(v2, before, e.token_count);
            if (!v2.kept()) continue;
        }
        if (a.self_ref) {
            auto v3 = filter_self_referential(e, patterns);
            selfref.record(v3, e.token_count, e.token_count);
            if (!v3.kept()) continue;
        }
        if (a.max_tokens > 0) {
            auto v4 = filter_long_context(e, a.max_tokens);
            length.record(v4, e.token_count, e.token_count);
            if (!v4.kept()) continue;
        }
        pass.push_back(std::move(e));
    }
    auto q = filter_quality_score(std::move(pass), a.min_quality);
    std::vector<SftEntry> kept = std::move(q.kept);
    StageStats prompts = named("prompt_dedup");
    if (a.dedup_prompts) kept = dedup_by_prompt(std::move(kept), &prompts);
    std::uint64_t unboxed = 0, unbalanced = 0;
    if (a.unbox_p > 0.0) {
        for (auto& e : kept) {
            auto r = unbox_math(std::move(e), a.unbox_p, a.seed);
            unboxed += r.changed;
            unbalanced += r.unbalanced;
            e = std::move(r.entry);
            e.token_count = entry_tokens(e, tok);
        }
    }
    write_entries(a.output, kept);
    if (!a.quarantine.empty()) write_entries(a.quarantine, q.quarantined);

    std::vector<StageStats> all{structure};
    if (a.strip_traces) all.push_back(traces);
    if (a.self_ref) all.push_back(selfref);
    if (a.max_tokens > 0) all.push_back(length);
    all.push_back(q.stats);
    if (a.dedup_prompts) all.push_back(prompts);
    write_stage_report(a.report, all);
    print_summary(all);
    if (a.unbox_p > 0.0) std::cerr << "unboxed: " << unboxed << ", unbalanced: " << unbalanced << "\n";
    if (q.unscored > 0) std::cerr << "unscored entries kept: " << q.unscored << "\n";
    return 0;
}

// ---- mix --------------------------------------------------------------------

int cmd_mix(const std::string& spec_path, const std::string& output, const std::string& report,
            const std::string& config, std::uint64_t budget) {
    auto cfg = config_or_default(config);
    auto spec = posttrain::load_mixture_spec(spec_path);
    if (budget > 0) spec.token_budget = budget;
    JsonlWriter w(output);
    auto rep = posttrain::compose_mixture(spec, Tokenizer(cfg.tokenizer),
                                          [&](const posttrain::SftEntry& e, std::size_t) { w.write(posttrain::entry_to_json(e)); });
    w.commit();
    auto j = posttrain::mixture_report_to_json(rep);
    if (!report.empty()) write_file(report, j.dump(2) + "\n");
    for (const auto& s : rep.sources) {
        std::fprintf(stderr, "%-24s target %.6f achieved %.6f tokens %llu\n", s.name.c_str(), s.effective_target,
                     s.achieved, static_cast<unsigned long long>(s.tokens));
    }
    for (const auto& m : rep.warnings) std::cerr << "warning: " << m << "\n";
    return 0;
}

// ---- stats ------------------------------------------------------------------

int cmd_stats(const std::vector<std::string>& reports, bool as_json) {
    std::vector<std::string> order;
    std::map<std::string, StageStats> merged;
    auto add = [&](const Json& s) {
        auto st = stats_from_json(s);
        if (!merged.contains(st.stage)) order.push_back(st.stage);
        merged[st.stage] = merge_stats(merged[st.stage], st);
    };
    for (const auto& path : reports) {
        Json j;
        try {
            j = Json::parse(read_file(path));
        } catch (const Json::parse_error& e) {
            throw DataError(path + ": " + e.what());
        }
        if (j.is_object() && j.contains("stages")) {
            for (const auto& s : j["stages"]) add(s);
        } else if (j.is_array()) {
            for (const auto& s : j) add(s);
        } else {
            add(j);
        }
    }
    std::vector<StageStats> out;
    for (const auto& s : order) out.push_back(merged[s]);
    if (as_json) {
        Json stages = Json::array();
        for (const auto& s : out) stages.push_back(stats_to_json(s));
        std::cout << Json{{"stages", stages}}.dump(2) << "\n";
        return 0;
    }
    std::printf("%-20s %10s %10s %10s %14s %14s\n", "stage", "seen", "kept", "dropped", "tokens_in", "tokens_out");
    for (const auto& s : out) {
        std::printf("%-20s %10llu %10llu %10llu %14llu %14llu\n", s.stage.c_str(),
                    static_cast<unsigned long long>(s.seen), static_cast<unsigned long long>(s.kept),
                    static_cast<unsigned long long>(s.dropped()), static_cast<unsigned long long>(s.tokens_in),
                    static_cast<unsigned long long>(s.tokens_out));
        for (const auto& [r, n] : s.dropped_by_reason) {
            std::printf("  %-34s %10llu\n", r.c_str(), static_cast<unsigned long long>(n));
        }
    }
    return 0;
}

// ---- run / validate-config --------------------------------------------------

int cmd_validate(const std::string& path) {
    auto cfg = pipeline::load_pipeline_config(path);
    std::cout << "ok " << pipeline::config_hash(cfg) << "\n";
    return 0;
}

int cmd_run(const std::string& path, std::size_t workers, bool fused, bool no_resume) {
    auto cfg = pipeline::load_pipeline_config(path);
    if (const char* env = std::getenv("CORPUS_FORGE_WORKERS")) {
        char* end = nullptr;
        long n = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || n < 1) throw ConfigError("CORPUS_FORGE_WORKERS must be a positive integer");
        cfg.workers = static_cast<std::size_t>(n);
    }
    if (workers > 0) cfg.workers = workers;
    if (fused) cfg.fused = true;
    pipeline::RunOptions opts;
    opts.resume = !no_resume;
    auto rep = pipeline::run_pipeline(cfg, opts);
    print_summary(rep.stages);
    for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
    std::cerr << "report: " << (cfg.output_dir / "run_report.json").string() << "\n";
    return 0;
}

void data_error_report(const std::exception& e, const char* kind) {
    Json j{{"error", kind}, {"message", e.what()}};
    std::cerr << j.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"corpus-forge: web-archive corpus curation and SFT mixture tools"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "corpus-forge 0.1.0");

    IngestArgs ia;
    auto* ingest = app.add_subcommand("ingest", "Convert WARC files to document JSONL");
    ingest->add_option("-i,--input", ia.inputs, "WARC or WARC.gz files")->required()->check(CLI::ExistingFile);
    ingest->add_option("-o,--output", ia.output, "Output JSONL")->required();
    ingest->add_option("--report", ia.report, "Write stage stats JSON here");
    ingest->add_option("-c,--config", ia.config, "Pipeline config (for the tokenizer)")->check(CLI::ExistingFile);

    ChainArgs fa;
    auto* filter = app.add_subcommand("filter", "Run the heuristic filter chain over document JSONL");
    filter->add_option("-i,--input", fa.input, "Input JSONL")->required()->check(CLI::ExistingFile);
    filter->add_option("-o,--output", fa.output, "Output JSONL of kept documents")->required();
    filter->add_option("--report", fa.report, "Write stage stats JSON here");
    filter->add_option("-c,--config", fa.config, "Pipeline config with stage settings")->check(CLI::ExistingFile);
    filter->add_option("--stages", fa.stages,
                       "Comma-separated stages (default: the config's stages between ingest and pii)");

    ChainArgs pa;
    bool no_fix = false;
    std::string mojibake;
    auto* pii = app.add_subcommand("pii", "Fix encoding and redact e-mails, phones and public IPs");
    pii->add_option("-i,--input", pa.input, "Input JSONL")->required()->check(CLI::ExistingFile);
    pii->add_option("-o,--output", pa.output, "Output JSONL")->required();
    pii->add_option("--report", pa.report, "Write stage stats JSON here");
    pii->add_option("-c,--config", pa.config, "Pipeline config")->check(CLI::ExistingFile);
    pii->add_flag("--no-fix-encoding", no_fix, "Skip the mojibake repair step");
    pii->add_option("--mojibake", mojibake, "Mojibake table TSV")->check(CLI::ExistingFile);

    DedupArgs da;
    auto* dedup = app.add_subcommand("dedup", "MinHash/LSH near-duplicate removal");
    dedup->add_option("-i,--input", da.inputs, "Input JSONL files, in shard order")->required()->check(CLI::ExistingFile);
    dedup->add_option("-o,--output", da.output, "Output JSONL of survivors");
    dedup->add_option("--clusters", da.clusters, "Write the duplicate cluster report here");
    dedup->add_option("--report", da.report, "Write stage stats JSON here");
    dedup->add_option("-c,--config", da.config, "Pipeline config with [dedup] settings")->check(CLI::ExistingFile);
    dedup->add_option("--work-dir", da.work_dir, "Scratch directory for the band index");
    dedup->add_flag("--dry-run", da.dry_run, "Only write the cluster report; leave the corpus untouched");

    SplitArgs sa;
    auto* splitc = app.add_subcommand("split", "Route documents into quality splits");
    splitc->add_option("-i,--input", sa.inputs, "Input JSONL files")->required()->check(CLI::ExistingFile);
    splitc->add_option("-o,--output-dir", sa.output_dir, "Output directory")->required();
    splitc->add_option("--scores", sa.scores, "JSONL of {id, score} or {id, label}")->check(CLI::ExistingFile);
    splitc->add_option("--select", sa.select, "Comma-separated splits to materialize (default high,medium)");
    splitc->add_flag("--fallback-scorer", sa.fallback, "Score unscored documents with the heuristic fallback");
    splitc->add_option("--report", sa.report, "Write stage stats JSON here");
    splitc->add_option("-c,--config", sa.config, "Pipeline config with [split] settings")->check(CLI::ExistingFile);

    PosttrainArgs pt;
    bool keep_traces = false, keep_selfref = false, keep_dups = false;
    auto* post = app.add_subcommand("posttrain", "Clean and filter SFT entries");
    post->add_option("-i,--input", pt.input, "Input JSONL (SftEntry, or raw rows with --adapters)")
        ->required()
        ->check(CLI::ExistingFile);
    post->add_option("-o,--output", pt.output, "Output SftEntry JSONL")->required();
    post->add_option("--quarantine", pt.quarantine, "Entries with out-of-range quality scores");
    post->add_option("--report", pt.report, "Write stage stats JSON here");
    post->add_option("-c,--config", pt.config, "Pipeline config (for the tokenizer)")->check(CLI::ExistingFile);
    post->add_option("--adapters", pt.adapters, "TOML with [[adapter]] field mappings")->check(CLI::ExistingFile);
    post->add_option("--source", pt.source, "Adapter name to apply");
    post->add_flag("--keep-traces", keep_traces, "Do not strip reasoning traces");
    post->add_flag("--keep-self-ref", keep_selfref, "Do not drop self-referential answers");
    post->add_flag("--keep-duplicate-prompts", keep_dups, "Do not deduplicate by user prompt");
    post->add_option("--min-quality", pt.min_quality, "Minimum quality score in [1, 6]")->capture_default_str();
    post->add_option("--unbox-p", pt.unbox_p, "Fraction of entries whose \\boxed{} is removed")->capture_default_str();
    post->add_option("--seed", pt.seed, "Seed for the unboxing coin")->capture_default_str();
    post->add_option("--max-tokens", pt.max_tokens, "Drop entries longer than this (0 = off)")->capture_default_str();

    std::string mix_spec, mix_out, mix_report, mix_config;
    std::uint64_t mix_budget = 0;
    auto* mix = app.add_subcommand("mix", "Compose a token-proportional SFT mixture");
    mix->add_option("-s,--spec", mix_spec, "Mixture TOML with [[source]] tables")->required()->check(CLI::ExistingFile);
    mix->add_option("-o,--output", mix_out, "Output JSONL")->required();
    mix->add_option("--report", mix_report, "Write the mixture report JSON here");
    mix->add_option("-c,--config", mix_config, "Pipeline config (for the tokenizer)")->check(CLI::ExistingFile);
    mix->add_option("--budget", mix_budget, "Token budget (overrides the spec)");

    std::vector<std::string> stat_files;
    bool stats_json = false;
    auto* stats = app.add_subcommand("stats", "Merge and print stage reports");
    stats->add_option("reports", stat_files, "Report JSON files")->required()->check(CLI::ExistingFile);
    stats->add_flag("--json", stats_json, "Print the merged report as JSON");

    std::string vc_path;
    auto* validate = app.add_subcommand("validate-config", "Check a pipeline config without running it");
    validate->add_option("config", vc_path, "Pipeline TOML")->required();

    std::string run_path;
    std::size_t run_workers = 0;
    bool run_fused = false, run_no_resume = false;
    auto* run = app.add_subcommand("run", "Run the configured pipeline");
    run->add_option("config", run_path, "Pipeline TOML")->required();
    run->add_option("-w,--workers", run_workers, "Worker count (overrides config and CORPUS_FORGE_WORKERS)");
    run->add_flag("--fused", run_fused, "Keep documents in memory between document stages");
    run->add_flag("--no-resume", run_no_resume, "Reprocess shards that already have done markers");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*ingest) return cmd_ingest(ia);
        if (*filter) return cmd_filter(fa);
        if (*pii) return cmd_pii(pa, no_fix, mojibake);
        if (*dedup) return cmd_dedup(da);
        if (*splitc) return cmd_split(sa);
        if (*post) {
            pt.strip_traces = !keep_traces;
            pt.self_ref = !keep_selfref;
            pt.dedup_prompts = !keep_dups;
            if (!pt.adapters.empty() && pt.source.empty()) throw ConfigError("posttrain: --adapters needs --source");
            return cmd_posttrain(pt);
        }
        if (*mix) return cmd_mix(mix_spec, mix_out, mix_report, mix_config, mix_budget);
        if (*stats) return cmd_stats(stat_files, stats_json);
        if (*validate) return cmd_validate(vc_path);
        if (*run) return cmd_run(run_path, run_workers, run_fused, run_no_resume);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DataError& e) {
        data_error_report(e, "data");
        return kExitData;
    } catch (const std::exception& e) {
        data_error_report(e, "runtime");
        return kExitData;
    }
    return kExitUsage;
}
