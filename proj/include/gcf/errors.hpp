#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gcf {

/// Malformed input text (G-code, CSV, JSON). Carries the 1-based line number
/// when one is known.
struct ParseError : std::runtime_error {
    ParseError(const std::string& message, std::size_t line = 0)
        : std::runtime_error(message), line_number(line) {}
    std::size_t line_number;
};

/// Semantically invalid data (empty skeletons, bad profiles, out-of-range specs).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace gcf
