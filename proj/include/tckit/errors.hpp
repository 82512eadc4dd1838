#pragma once

#include <stdexcept>
#include <string>

namespace tckit {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Exponent arithmetic that would wrap (bracket powers grow fast).
struct OverflowError : Error {
    using Error::Error;
};

struct ContextMismatchError : Error {
    using Error::Error;
};

struct PreconditionError : Error {
    using Error::Error;
};

struct ParseError : Error {
    int line = 0;
    int column = 0;
    ParseError(const std::string& msg, int line_, int col_)
        : Error(msg + " (line " + std::to_string(line_) + ", column " +
                std::to_string(col_) + ")"),
          line(line_),
          column(col_) {}
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

} // namespace tckit
