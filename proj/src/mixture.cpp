// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#include "corpus_forge/mixture.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include <toml.hpp>

#include "corpus_forge/errors.hpp"
#include "corpus_forge/hash.hpp"

namespace corpus_forge::posttrain {

void MixtureSpec::validate() const {
    if (sources.empty()) throw ConfigError("mixture: at least one source is required");
    std::set<std::string> names;
    double sum = 0.0;
    for (const auto& s : sources) {
        if (s.name.empty()) throw ConfigError("mixture: source names must be non-empty");
        if (!names.insert(s.name).second) throw ConfigError("mixture: duplicate source name '" + s.name + "'");
        if (!(s.proportion > 0.0 && s.proportion <= 1.0)) {
            throw ConfigError("mixture: proportion of '" + s.name + "' must be in (0, 1]");
        }
        sum += s.proportion;
    }
    if (std::abs(sum - 1.0) > 1e-6) {
        throw ConfigError("mixture: proportions must sum to 1 (got " + std::to_string(sum) + ")");
    }
    if (!(tolerance > 0.0 && tolerance < 1.0)) throw ConfigError("mixture: tolerance must be in (0, 1)");
    if (token_budget && *token_budget == 0) throw ConfigError("mixture: token_budget must be positive");
}

void normalize_proportions(MixtureSpec& spec) {
    double sum = 0.0;
    for (const auto& s : spec.sources) sum += s.proportion;
    if (!(sum > 0.0)) throw ConfigError("mixture: proportions must be positive");
    for (auto& s : spec.sources) s.proportion /= sum;
}

MixtureSpec load_mixture_spec(const std::filesystem::path& path) {
    toml::table tbl;
    try {
        tbl = toml::parse_file(path.string());
    } catch (const toml::parse_error& e) {
        throw ConfigError("cannot parse mixture spec " + path.string() + ": " + std::string(e.description()));
    }
    MixtureSpec spec;
    auto base = path.parent_path();
    auto* arr = tbl["source"].as_array();
    if (!arr) throw ConfigError(path.string() + ": expected [[source]] tables");
    for (auto& node : *arr) {
        auto* t = node.as_table();
        if (!t) throw ConfigError(path.string() + ": [[source]] entries must be tables");
        MixtureSource s;
        auto name = (*t)["name"].value<std::string>();
        auto prop = (*t)["proportion"].value<double>();
        auto p = (*t)["path"].value<std::string>();
        if (!name || !prop || !p) throw ConfigError(path.string() + ": each source needs name, proportion and path");
        s.name = *name;
        s.proportion = *prop;
        s.path = std::filesystem::path(*p).is_absolute() ? std::filesystem::path(*p) : base / *p;
        spec.sources.push_back(std::move(s));
    }
    if (auto v = tbl["tolerance"].value<double>()) spec.tolerance = *v;
    if (auto v = tbl["seed"].value<std::int64_t>()) spec.seed = static_cast<std::uint64_t>(*v);
    if (auto v = tbl["token_budget"].value<std::int64_t>()) {
        if (*v <= 0) throw ConfigError("mixture: token_budget must be positive");
        spec.token_budget = static_cast<std::uint64_t>(*v);
    }
    if (tbl["normalize"].value_or(false)) normalize_proportions(spec);
    spec.validate();
    return spec;
}

Json mixture_report_to_json(const MixtureReport& r) {
    Json sources = Json::array();
    for (const auto& s : r.sources) {
        sources.push_back(Json{{"name", s.name},
                               {"target", s.target},
                               {"effective_target", s.effective_target},
                               {"achieved", s.achieved},
                               {"tokens", s.tokens},
                               {"entries", s.entries},
                               {"available_tokens", s.available_tokens},
                               {"available_entries", s.available_entries},
                               {"flags", s.flags}});
    }
    return Json{{"seed", r.seed},         {"token_budget", r.token_budget}, {"tokens", r.tokens},
                {"entries", r.entries},   {"tolerance", r.tolerance},       {"within_tolerance", r.within_tolerance},
                {"sources", sources},     {"warnings", r.warnings}};
}

MixtureReport compose_entries(std::vector<MixtureInput> inputs, double tolerance, std::uint64_t seed,
                              std::optional<std::uint64_t> token_budget, const Tokenizer& tokenizer,
                              const EntrySink& sink) {
    MixtureSpec check;
    check.tolerance = tolerance;
    check.token_budget = token_budget;
    for (const auto& in : inputs) check.sources.push_back({in.name, in.proportion, {}});
    check.validate();

    const std::size_t n = inputs.size();
    MixtureReport rep;
    rep.seed = seed;
    rep.tolerance = tolerance;
    rep.sources.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& in = inputs[i];
        if (in.entries.empty()) throw ConfigError("mixture: source '" + in.name + "' has no entries");
        auto& sr = rep.sources[i];
        sr.name = in.name;
        sr.target = in.proportion;
        sr.available_entries = in.entries.size();
        for (auto& e : in.entries) {
            e.token_count = entry_tokens(e, tokenizer);
            sr.available_tokens += e.token_count;
        }
    }

    std::uint64_t budget = 0;
    if (token_budget) {
        budget = *token_budget;
    } else {
        double b = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            b = std::min(b, static_cast<double>(rep.sources[i].available_tokens) / inputs[i].proportion);
        }
        budget = static_cast<std::uint64_t>(std::floor(b + 1e-9));
    }
    rep.token_budget = budget;

    // Fixed seeded priority among equal deficits.
    std::vector<std::uint64_t> tie(n);
    for (std::size_t i = 0; i < n; ++i) tie[i] = hashing::combine(seed, hashing::hash_string(inputs[i].name));

    std::vector<double> share(n);
    for (std::size_t i = 0; i < n; ++i) share[i] = inputs[i].proportion;
    std::vector<std::size_t> cursor(n, 0);
    std::vector<bool> exhausted(n, false);
    std::vector<bool> early(n, false);
    std::uint64_t emitted = 0;

    auto rescale = [&] {
        // Exhausted sources keep what they delivered; the rest of the budget
        // is shared by the others in their original ratio.
        double fixed_tokens = 0.0, open_weight = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (exhausted[i]) {
                fixed_tokens += static_cast<double>(rep.sources[i].tokens);
            } else {
                open_weight += inputs[i].proportion;
            }
        }
        double total = static_cast<double>(std::max(budget, emitted));
        double rest = std::max(0.0, total - fixed_tokens);
        for (std::size_t i = 0; i < n; ++i) {
            share[i] = exhausted[i] ? static_cast<double>(rep.sources[i].tokens) / total
                                    : (open_weight > 0 ? rest / total * inputs[i].proportion / open_weight : 0.0);
        }
    };

    while (emitted < budget) {
        std::size_t best = n;
        double best_def = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (exhausted[i]) continue;
            double def = share[i] * static_cast<double>(emitted) - static_cast<double>(rep.sources[i].tokens);
            if (best == n || def > best_def + 1e-9 || (std::abs(def - best_def) <= 1e-9 && tie[i] > tie[best])) {
                best = i;
                best_def = def;
            }
        }
        if (best == n) break;
        const auto& e = inputs[best].entries[cursor[best]++];
        sink(e, best);
        rep.sources[best].tokens += e.token_count;
        ++rep.sources[best].entries;
        emitted += e.token_count;
        if (cursor[best] == inputs[best].entries.size()) {
            exhausted[best] = true;
            if (emitted < budget) {
                early[best] = true;
                rep.sources[best].flags.emplace_back("exhausted");
                rescale();
                for (std::size_t i = 0; i < n; ++i) {
                    if (!exhausted[i] && std::find(rep.sources[i].flags.begin(), rep.sources[i].flags.end(),
                                                   "rescaled") == rep.sources[i].flags.end()) {
                        rep.sources[i].flags.emplace_back("rescaled");
                    }
                }
            }
        }
    }
    if (std::all_of(exhausted.begin(), exhausted.end(), [](bool b) { return b; }) && emitted < budget) {
        rep.warnings.push_back("all sources exhausted before the token budget (" + std::to_string(emitted) + " of " +
                               std::to_string(budget) + ")");
    }

    rep.tokens = emitted;
    for (std::size_t i = 0; i < n; ++i) {
        auto& sr = rep.sources[i];
        sr.entries = cursor[i];
        sr.achieved = emitted > 0 ? static_cast<double>(sr.tokens) / static_cast<double>(emitted) : 0.0;
        rep.entries += sr.entries;
    }
    // Effective targets are expressed against what was actually emitted.
    if (std::any_of(early.begin(), early.end(), [](bool b) { return b; }) && emitted > 0) {
        double fixed = 0.0, open_weight = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (early[i]) {
                fixed += rep.sources[i].achieved;
            } else {
                open_weight += inputs[i].proportion;
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto& sr = rep.sources[i];
            sr.effective_target = early[i] ? sr.achieved : (1.0 - fixed) * inputs[i].proportion / open_weight;
        }
    } else {
        for (auto& sr : rep.sources) sr.effective_target = sr.target;
    }
    for (auto& sr : rep.sources) {
        if (std::abs(sr.achieved - sr.effective_target) > tolerance) rep.within_tolerance = false;
    }
    return rep;
}

MixtureReport compose_mixture(const MixtureSpec& spec, const Tokenizer& tokenizer, const EntrySink& sink) {
    spec.validate();
    std::vector<MixtureInput> inputs;
    for (const auto& s : spec.sources) {
        if (!std::filesystem::exists(s.path)) {
            throw ConfigError("mixture: source '" + s.name + "' path not found: " + s.path.string());
        }
        inputs.push_back({s.name, s.proportion, read_entries(s.path)});
    }
    return compose_entries(std::move(inputs), spec.tolerance, spec.seed, spec.token_budget, tokenizer, sink);
}

}  // namespace corpus_forge::posttrain
