#pragma once

#include <stdexcept>
#include <string>

namespace commsim {

// Malformed input that could not be parsed at all (bad CSV row, bad JSON).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input parsed fine but violates a semantic rule (out-of-range parameter,
// duplicate key, illegal model combination).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace commsim
