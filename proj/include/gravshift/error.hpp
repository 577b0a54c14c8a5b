#pragma once

#include <stdexcept>
#include <string>

namespace gravshift {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A value falls outside the domain where a formula is valid
/// (non-finite input, strong field, alpha*Z >= 1, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Inputs are individually valid but do not fit together
/// (missing body distance, mismatched nuclear charge, empty registry).
class ConfigurationError : public Error {
public:
    using Error::Error;
};

/// A transition whose photon energy is not positive.
class OrderingError : public Error {
public:
    using Error::Error;
};

/// Reference to a body that is not in the registry.
class RegistryError : public Error {
public:
    using Error::Error;
};

/// Malformed input file. The message carries line/field context.
class ParseError : public Error {
public:
    using Error::Error;
};

/// Adaptive integration could not reach the requested tolerance.
class ConvergenceError : public Error {
public:
    using Error::Error;
};

/// A traced ray entered a body.
class ImpactError : public Error {
public:
    ImpactError(const std::string& what, double closest_approach_m)
        : Error(what), closest_approach_m_(closest_approach_m) {}

    double closest_approach_m() const noexcept { return closest_approach_m_; }

private:
    double closest_approach_m_;
};

}  // namespace gravshift
