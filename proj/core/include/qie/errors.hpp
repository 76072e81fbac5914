#pragma once

#include <stdexcept>
#include <string>

namespace qie {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An argument violates a documented precondition (range, sign, finiteness).
struct InvalidParameterError : Error {
    using Error::Error;
};

/// A density matrix fails hermiticity, trace or positivity checks.
struct InvalidStateError : Error {
    using Error::Error;
};

/// The measurement would produce entropy: the pre-measurement state does not
/// commute with the measurement operators.
struct ReversibilityError : Error {
    using Error::Error;
};

/// A measurement record matches neither feedback branch.
struct ProtocolMismatchError : Error {
    using Error::Error;
};

/// The requested hot-isotherm duration is at or below the dissipation time,
/// where extracted work vanishes and no effective temperature exists.
struct InfeasibleDurationError : Error {
    using Error::Error;
};

/// An adaptive numerical routine failed to meet its tolerance.
struct NumericFailureError : Error {
    using Error::Error;
};

/// A search bracket does not enclose a unimodal maximum.
struct BracketError : Error {
    using Error::Error;
};

}  // namespace qie
