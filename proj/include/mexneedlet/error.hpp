#pragma once

#include <stdexcept>
#include <string>

namespace mexneedlet {

/// Argument outside the mathematical domain of an operation (|x| > 1, l < 0, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Invalid configuration or precondition supplied by the caller.
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A computation could not be carried out to the requested accuracy
/// (degree cap exceeded, vanishing denominator, ill-conditioning).
class NumericError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The decay theorem does not apply to the requested (r, alpha) pair.
class HypothesisError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

}  // namespace mexneedlet
