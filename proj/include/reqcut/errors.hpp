#pragma once

#include <stdexcept>
#include <string>

namespace reqcut {

/// Base of every error thrown by the library. The C API maps each subclass
/// onto a status code (see reqcut.h).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input: bad file, unknown edge id, violated instance invariant.
class InputError : public Error {
public:
    using Error::Error;
};

/// The graph lacks a structure the operation needs (e.g. it is disconnected).
class StructuralError : public Error {
public:
    using Error::Error;
};

/// An enumeration or search budget would be exceeded.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// Invalid solver configuration (e.g. rounding constant c < 4).
class ConfigError : public Error {
public:
    using Error::Error;
};

/// A caller-side contract was broken (e.g. ratio of an infeasible solution).
class ContractError : public Error {
public:
    using Error::Error;
};

/// The cutting-plane loop hit its cut cap before certifying optimality.
class ConvergenceError : public Error {
public:
    ConvergenceError(const std::string& what, double last_objective)
        : Error(what), last_objective_(last_objective) {}

    double last_objective() const noexcept { return last_objective_; }

private:
    double last_objective_;
};

}  // namespace reqcut
