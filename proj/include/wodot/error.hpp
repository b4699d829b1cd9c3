#pragma once

#include <stdexcept>
#include <string>

namespace wodot {

/// Caller handed in something the operation's contract rules out.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// The structural hypothesis of a theorem-level operation does not hold.
class NotApplicableError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Enumeration or DP state space would exceed a configured budget.
/// Raised instead of silently truncating a search.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A computed object contradicts a proven statement. Any occurrence is a bug
/// in this library (or a counterexample, which would be news).
class TheoremViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace wodot
