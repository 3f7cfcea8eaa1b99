#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cmweyl {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text: cycle notation, catalog lines, rationals, JSON payloads.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input that parses but violates a domain invariant.
class DataError : public Error {
public:
    using Error::Error;
};

/// A group closure or prime table would exceed its configured cap.
class SizeLimitError : public Error {
public:
    using Error::Error;
};

/// A network fetch failed after all retries.
class TransportError : public Error {
public:
    TransportError(const std::string& what, int attempts)
        : Error(what + " (after " + std::to_string(attempts) + " attempts)"), attempts_(attempts) {}

    int attempts() const noexcept { return attempts_; }

private:
    int attempts_;
};

}  // namespace cmweyl
