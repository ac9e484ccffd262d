#pragma once

#include <stdexcept>
#include <string>

namespace flexstor {

/// Base class for all errors raised by this library.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input text: bad CSV rows, unparseable timestamps or numbers,
/// broken config files. Carries the offending line number where known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what) : Error(what) {}
    ParseError(const std::string& what, std::size_t line)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

/// Time-grid violations: non-uniform timestamps, gaps, series on different
/// grids, delays that are not whole multiples of the step.
class GridError : public Error {
public:
    explicit GridError(const std::string& what) : Error(what) {}
};

/// Semantic violations of a type or operation contract: negative generation,
/// non-finite samples, zero-mean scaling, decreasing cumulative demand.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

} // namespace flexstor
