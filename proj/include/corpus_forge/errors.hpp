// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace corpus_forge {

/// Invalid configuration or usage. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A caller broke a documented precondition (mismatched stage names,
/// signature length mismatch, ...).
class ContractError : public std::logic_error {
   public:
    using std::logic_error::logic_error;
};

/// Bad input data. The CLI maps this to exit code 1.
class DataError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Input does not look like the expected container format at all.
class FormatError : public DataError {
   public:
    using DataError::DataError;
};

/// The stream ended inside a record. Every complete record before the
/// damage has already been delivered to the caller.
class TruncatedStreamError : public DataError {
   public:
    using DataError::DataError;
};

}  // namespace corpus_forge
