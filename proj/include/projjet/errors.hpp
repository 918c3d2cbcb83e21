#pragma once

#include <stdexcept>
#include <string>

namespace projjet {

/// Base of all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input (bad JSON, non-rational string in exact
/// mode, order mismatch between operands, ...). CLI exit code 2.
struct InputError : Error {
    using Error::Error;
};

struct OrderMismatch : InputError {
    OrderMismatch(int a, int b)
        : InputError("jet order mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

struct SingularLinearPart : Error {
    using Error::Error;
};

/// A stratum-specific reduction hypothesis fails (Lambda = 0, b03 = 0 in the
/// inflection reduction, HigherCodim input, ...). CLI exit code 3.
struct HypothesisViolation : Error {
    std::string kind;
    HypothesisViolation(std::string kind_, const std::string& msg)
        : Error(msg), kind(std::move(kind_)) {}
};

/// A cross-check the library guarantees internally came out false. CLI exit
/// code 4; should never happen.
struct InternalCheckFailure : Error {
    using Error::Error;
};

} // namespace projjet
