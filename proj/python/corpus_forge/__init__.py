# Copyright 2026 The corpus-forge Authors
# SPDX-License-Identifier: Apache-2.0
"""Python access to the corpus-forge core."""

from ._core import (
    ConfigError,
    ContractError,
    DataError,
    assign_split,
    candidate_pairs,
    config_hash,
    estimate_jaccard,
    fallback_score,
    fix_encoding,
    is_public_ip,
    minhash,
    run_pipeline,
    scrub_pii,
    shingles,
    variant_score,
)

__all__ = [
    "ConfigError",
    "ContractError",
    "DataError",
    "assign_split",
    "candidate_pairs",
    "config_hash",
    "estimate_jaccard",
    "fallback_score",
    "fix_encoding",
    "is_public_ip",
    "minhash",
    "run_pipeline",
    "scrub_pii",
    "shingles",
    "variant_score",
]
