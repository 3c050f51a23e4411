// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "corpus_forge/dedup.hpp"
#include "corpus_forge/errors.hpp"
#include "corpus_forge/filters/variant.hpp"
#include "corpus_forge/pii.hpp"
#include "corpus_forge/pipeline.hpp"
#include "corpus_forge/split.hpp"

namespace py = pybind11;
namespace cf = corpus_forge;

namespace {

// Round-trips through the JSON text so callers get plain dicts.
py::object to_python(const cf::Json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

cf::dedup::DedupConfig dedup_config(std::size_t num_hashes, std::size_t bands, std::size_t rows, std::size_t shingle_n,
                                    std::uint64_t seed) {
    cf::dedup::DedupConfig c;
    c.num_hashes = num_hashes;
    c.bands = bands;
    c.rows_per_band = rows;
    c.shingle_n = shingle_n;
    c.seed = seed;
    c.validate();
    return c;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "corpus-forge native core";

    py::register_exception<cf::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<cf::DataError>(m, "DataError", PyExc_RuntimeError);
    py::register_exception<cf::ContractError>(m, "ContractError", PyExc_ValueError);

    m.def(
        "scrub_pii",
        [](const std::string& text) {
            auto r = cf::pii::scrub_pii(text);
            py::dict counts;
            counts["emails"] = r.report.emails;
            counts["phones"] = r.report.phones;
            counts["public_ips"] = r.report.public_ips;
            py::list spans;
            for (const auto& s : r.report.replacements) {
                spans.append(py::make_tuple(s.start, s.end, std::string(cf::pii::category_name(s.category))));
            }
            counts["replacements"] = spans;
            return py::make_tuple(r.text, counts);
        },
        py::arg("text"), "Redact e-mails, phones and public IPs. Returns (text, report); spans are byte offsets.");
    m.def("fix_encoding", [](const std::string& text) {
        return cf::pii::fix_encoding(text, cf::pii::default_mojibake_table());
    });
    m.def("is_public_ip", [](const std::string& s) { return cf::pii::is_public_ip(s); });

    m.def("shingles", &cf::dedup::shingle, py::arg("text"), py::arg("n") = 5);
    m.def(
        "minhash",
        [](const std::string& text, std::size_t num_hashes, std::size_t shingle_n, std::uint64_t seed) {
            auto cfg = dedup_config(num_hashes, 1, num_hashes, shingle_n, seed);
            auto sh = cf::dedup::shingle(text, shingle_n);
            return cf::dedup::minhash_signature(std::span<const std::string>(sh), cfg).values;
        },
        py::arg("text"), py::arg("num_hashes") = 112, py::arg("shingle_n") = 5, py::arg("seed") = 0x5eed);
    m.def("estimate_jaccard", [](std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
        return cf::dedup::estimate_jaccard({{}, std::move(a)}, {{}, std::move(b)});
    });
    m.def(
        "candidate_pairs",
        [](const std::vector<std::string>& texts, std::size_t bands, std::size_t rows, std::size_t shingle_n,
           std::uint64_t seed) {
            auto cfg = dedup_config(bands * rows, bands, rows, shingle_n, seed);
            std::vector<cf::dedup::MinHashSignature> sigs;
            for (const auto& t : texts) {
                auto sh = cf::dedup::shingle(t, shingle_n);
                sigs.push_back(cf::dedup::minhash_signature(std::span<const std::string>(sh), cfg));
            }
            std::vector<std::pair<std::size_t, std::size_t>> out;
            for (const auto& p : cf::dedup::lsh_candidates(sigs, cfg)) out.emplace_back(p.first, p.second);
            return out;
        },
        py::arg("texts"), py::arg("bands") = 14, py::arg("rows_per_band") = 8, py::arg("shingle_n") = 5,
        py::arg("seed") = 0x5eed);

    m.def("variant_score", [](const std::string& text) {
        static const auto lex = cf::filters::default_variant_lexicon();
        return cf::filters::variant_score(text, lex);
    });
    m.def("fallback_score", [](const std::string& text) { return cf::split::fallback_score(text); });
    m.def(
        "assign_split",
        [](double score, double high, double medium) {
            cf::split::SplitThresholds t{high, medium};
            t.validate();
            return std::string(cf::split::split_name(cf::split::assign_quality(score, t)));
        },
        py::arg("score"), py::arg("high") = 0.75, py::arg("medium") = 0.40);

    m.def("config_hash", [](const std::filesystem::path& p) {
        return cf::pipeline::config_hash(cf::pipeline::load_pipeline_config(p));
    });
    m.def(
        "run_pipeline",
        [](const std::filesystem::path& p, std::size_t workers, bool resume) {
            auto cfg = cf::pipeline::load_pipeline_config(p);
            if (workers > 0) cfg.workers = workers;
            cf::pipeline::RunOptions opts;
            opts.resume = resume;
            cf::pipeline::RunReport rep;
            {
                py::gil_scoped_release release;
                rep = cf::pipeline::run_pipeline(cfg, opts);
            }
            return to_python(cf::pipeline::run_report_to_json(rep));
        },
        py::arg("config"), py::arg("workers") = 0, py::arg("resume") = true);
}
