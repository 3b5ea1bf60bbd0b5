#pragma once

#include <stdexcept>
#include <string>

namespace kirlab {

/// Base class for all kirlab errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Invalid arguments, malformed configs, out-of-domain parameters.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(what) {}
};

/// A declared numerical contract was violated (kernel bounds, symmetry, ...).
class ContractError : public Error {
public:
    explicit ContractError(const std::string& what) : Error(what) {}
};

/// A field or pairing produced a non-finite value.
class EvaluationError : public Error {
public:
    explicit EvaluationError(const std::string& what) : Error(what) {}
};

/// An iterative limit failed its Cauchy/monotonicity checks.
class ConvergenceError : public Error {
public:
    explicit ConvergenceError(const std::string& what) : Error(what) {}
};

} // namespace kirlab
