// errors.hpp: exception types raised by the library

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace symldf {

// Base of every library error, so callers can catch one type.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidParameter : public Error {
public:
    using Error::Error;
};

class NonUniqueSteadyState : public Error {
public:
    using Error::Error;
};

class NoPhysicalState : public Error {
public:
    using Error::Error;
};

// Off-block leakage of a superoperator exceeds tolerance.
class BrokenSymmetry : public Error {
public:
    using Error::Error;
};

class EmptyOverlap : public Error {
public:
    using Error::Error;
};

class StepTooSmall : public Error {
public:
    using Error::Error;
};

// A Legendre optimum landed on the edge of the sampled dual grid.
class GridTooNarrow : public Error {
public:
    using Error::Error;
};

class GridMismatch : public Error {
public:
    using Error::Error;
};

class DegenerateSectors : public Error {
public:
    using Error::Error;
};

class ZeroNorm : public Error {
public:
    using Error::Error;
};

class NotFrozen : public Error {
public:
    NotFrozen(const std::string& what, std::vector<unsigned long long> seeds)
        : Error(what), seeds_(std::move(seeds)) {}

    const std::vector<unsigned long long>& seeds() const noexcept { return seeds_; }

private:
    std::vector<unsigned long long> seeds_;
};

// Config parse/validation failure; carries the offending line (0 if none).
class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line = 0) : Error(what), line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

} // namespace symldf
