#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace satbeam {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// Raised when an angle extraction or rate mapping hits a gimbal-lock /
/// keyhole configuration (|sin| of the middle angle too close to 1).
class SingularityError : public Error {
public:
    using Error::Error;
};

/// The satellite is below the local horizon for the configured geometry.
class NoVisibilityError : public Error {
public:
    using Error::Error;
};

/// A matrix that must be inverted is singular or a result became non-finite.
class NumericalError : public Error {
public:
    using Error::Error;
};

/// The simultaneous-perturbation vector is identically zero.
class DegeneratePerturbation : public Error {
public:
    using Error::Error;
};

/// Scenario file problems. `field()` holds the dotted path (e.g. "array.rows")
/// when known and `line()` the 1-based source line (0 when unknown).
class ConfigError : public Error {
public:
    ConfigError(const std::string& message, std::string field, std::size_t line)
        : Error(message), field_(std::move(field)), line_(line) {}

    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string field_;
    std::size_t line_;
};

/// A module error annotated with the simulation tick where it occurred.
class SimulationError : public Error {
public:
    SimulationError(const std::string& message, std::size_t tick)
        : Error(message), tick_(tick) {}

    std::size_t tick() const noexcept { return tick_; }

private:
    std::size_t tick_;
};

}  // namespace satbeam
