// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace dioph {

struct ParseError : std::runtime_error {
    explicit ParseError(const std::string& msg) : std::runtime_error("parse error: " + msg) {}
};

// A certified comparison or enclosure refinement hit its precision cap
// before the question could be decided.
struct PrecisionExhausted : std::runtime_error {
    explicit PrecisionExhausted(const std::string& msg)
        : std::runtime_error("precision exhausted: " + msg) {}
};

// A finite digit stream (or finitely listed sequence) ended before the
// requested element.
struct StreamExhausted : std::runtime_error {
    explicit StreamExhausted(const std::string& msg)
        : std::runtime_error("stream exhausted: " + msg) {}
};

struct PeriodNotFound : std::runtime_error {
    explicit PeriodNotFound(const std::string& msg)
        : std::runtime_error("period not found: " + msg) {}
};

// Point coordinates whose relative order cannot be certified.
struct UnresolvedOrder : std::runtime_error {
    explicit UnresolvedOrder(const std::string& msg)
        : std::runtime_error("unresolved order: " + msg) {}
};

struct GrowthCheckFailed : std::runtime_error {
    explicit GrowthCheckFailed(const std::string& msg)
        : std::runtime_error("growth check failed: " + msg) {}
};

} // namespace dioph
