#pragma once

#include <stdexcept>
#include <string>

namespace costboost {

// Base for every error the library raises. The CLI maps the concrete type to
// an exit code (see tools/commands.hpp).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Invalid configuration (SynthConfig, GAConfig, ...).
class ConfigError : public Error {
public:
    using Error::Error;
};

// Violated precondition: shape mismatch, out-of-range label, bad weights.
class ContractError : public Error {
public:
    using Error::Error;
};

// File could not be read or parsed.
class LoadError : public Error {
public:
    using Error::Error;
};

// File could not be written.
class IoError : public Error {
public:
    using Error::Error;
};

// Data cannot support the requested operation (stratification, missing class
// in an evaluation split).
class DataError : public Error {
public:
    using Error::Error;
};

// Argument outside the mathematical domain of a function (log of 0).
class DomainError : public Error {
public:
    using Error::Error;
};

// Numerical breakdown of the weight distribution.
class DegeneracyError : public Error {
public:
    using Error::Error;
};

}  // namespace costboost
