// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 tweetmine contributors

#ifndef TWM_ERRORS_HPP
#define TWM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace twm {

// Raised for malformed or inconsistent input data (files, CSV rows, config).
// The CLI maps this to exit code 3; anything else unexpected maps to 4.
struct InputError : std::runtime_error {
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace twm

#endif
