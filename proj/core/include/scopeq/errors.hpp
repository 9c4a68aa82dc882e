#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace scopeq {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed textual input (regex, machine text, JSON). `position` is a byte
/// offset for single-line inputs and a 1-based line number for machine text.
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t position)
        : Error(what), position_(position) {}

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

/// Structurally well-formed input that violates a model invariant.
class ValidationError : public Error {
public:
    using Error::Error;
};

} // namespace scopeq
