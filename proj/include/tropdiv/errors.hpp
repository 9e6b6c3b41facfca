// SPDX-License-Identifier: MIT
#pragma once

#include <stdexcept>
#include <string>

namespace tropdiv {

// Bad user input: malformed documents, points off their host, non-integer
// slopes, resource guards. CLI maps these to exit code 1.
class validation_error : public std::runtime_error {
public:
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

// A broken internal invariant (a bug, not bad input). CLI maps these to
// exit code 2.
class invariant_violation : public std::logic_error {
public:
    explicit invariant_violation(const std::string& what) : std::logic_error(what) {}
};

// Parse failure for .tg documents, with 1-based position info.
class tg_parse_error : public validation_error {
public:
    tg_parse_error(int line, int column, const std::string& message)
        : validation_error("line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + message),
          line_(line), column_(column), message_(message) {}

    int line() const { return line_; }
    int column() const { return column_; }
    const std::string& message() const { return message_; }

private:
    int line_;
    int column_;
    std::string message_;
};

} // namespace tropdiv
