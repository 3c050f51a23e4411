// Copyright 2026 The corpus-forge Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace corpus_forge::fixtures {

struct PiiCase {
    std::string name;
    std::string input;
    std::string expected;
    std::size_t emails = 0;
    std::size_t phones = 0;
    std::size_t ips = 0;
};

/// Hand-built regression corpus: targets that must be redacted and
/// look-alikes (versions, dates, private addresses, obfuscated e-mails)
/// that must survive untouched.
const std::vector<PiiCase>& pii_cases();

}  // namespace corpus_forge::fixtures
