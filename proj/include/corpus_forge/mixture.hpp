// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "corpus_forge/io.hpp"
#include "corpus_forge/model.hpp"
#include "corpus_forge/posttrain.hpp"

namespace corpus_forge::posttrain {

struct MixtureSource {
    std::string name;
    double proportion = 0.0;
    std::filesystem::path path;
};

struct MixtureSpec {
    std::vector<MixtureSource> sources;
    double tolerance = 0.01;
    std::uint64_t seed = 0;
    /// Default: the largest budget no source runs out under, min_i(avail_i / w_i).
    std::optional<std::uint64_t> token_budget;

    /// Proportions in (0, 1] summing to 1 within 1e-6, unique non-empty
    /// names, tolerance in (0, 1). Throws ConfigError.
    void validate() const;
};

/// Scales proportions to sum to one. Useful for raw percentage columns.
void normalize_proportions(MixtureSpec& spec);

/// `[[source]]` tables with name, proportion, path; top-level tolerance,
/// seed, token_budget and `normalize = true`. Relative paths resolve
/// against the TOML file's directory.
MixtureSpec load_mixture_spec(const std::filesystem::path& path);

struct SourceReport {
    std::string name;
    double target = 0.0;
    /// Target after rescaling for exhausted sources; equals target otherwise.
    double effective_target = 0.0;
    double achieved = 0.0;
    std::uint64_t tokens = 0;
    std::uint64_t entries = 0;
    std::uint64_t available_tokens = 0;
    std::uint64_t available_entries = 0;
    std::vector<std::string> flags;
};

struct MixtureReport {
    std::uint64_t seed = 0;
    std::uint64_t token_budget = 0;
    std::uint64_t tokens = 0;
    std::uint64_t entries = 0;
    double tolerance = 0.0;
    std::vector<SourceReport> sources;
    /// Every achieved share within tolerance of its effective target.
    bool within_tolerance = true;
    std::vector<std::string> warnings;
};

Json mixture_report_to_json(const MixtureReport& r);

/// In-memory source for compose_entries.
struct MixtureInput {
    std::string name;
    double proportion = 0.0;
    std::vector<SftEntry> entries;
};

using EntrySink = std::function<void(const SftEntry&, std::size_t source_index)>;

/// Largest-token-deficit-first interleaving. Token counts are recomputed
/// under `tokenizer`. Throws ConfigError on an empty source before anything
/// is emitted.
MixtureReport compose_entries(std::vector<MixtureInput> inputs, double tolerance, std::uint64_t seed,
                              std::optional<std::uint64_t> token_budget, const Tokenizer& tokenizer,
                              const EntrySink& sink);

/// Reads every source path, then calls compose_entries.
MixtureReport compose_mixture(const MixtureSpec& spec, const Tokenizer& tokenizer, const EntrySink& sink);

}  // namespace corpus_forge::posttrain
