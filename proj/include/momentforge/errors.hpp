#pragma once

#include <stdexcept>
#include <string>

namespace momentforge {

// Input files that cannot be decoded (bad JSON, bad magic, truncation).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Well-formed input that violates a domain invariant. The message names
// the offending record.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// Chat endpoint unreachable, persistent HTTP failure, or an empty
// completion after a successful round trip.
class TransportError : public std::runtime_error {
public:
    explicit TransportError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace momentforge
