#pragma once

#include <stdexcept>
#include <string>

namespace vtwave {

// File could not be parsed (bad header, malformed row, ...). Messages carry
// the offending line number where one exists.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& msg) : std::runtime_error(msg) {}
};

// Input values are syntactically fine but physically invalid (negative area,
// mu outside (0,1), ...).
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// Geometry cannot be built as requested (baffle too small, tract rasterizes
// to a blocked channel, ...).
class GeometryError : public std::runtime_error {
public:
    explicit GeometryError(const std::string& msg) : std::runtime_error(msg) {}
};

// Simulation refused or aborted: CFL violation up front, or a non-finite
// field value detected mid-run.
class StabilityError : public std::runtime_error {
public:
    explicit StabilityError(const std::string& msg) : std::runtime_error(msg) {}
};

// Operation invoked in a termination mode it does not apply to.
class ModeError : public std::runtime_error {
public:
    explicit ModeError(const std::string& msg) : std::runtime_error(msg) {}
};

// Analysis could not produce the requested result (degenerate spectrum,
// too few peaks, ...).
class AnalysisError : public std::runtime_error {
public:
    explicit AnalysisError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace vtwave
