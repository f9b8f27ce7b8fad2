#ifndef FRACVAL_ERRORS_HPP
#define FRACVAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fracval {

/// Caller violated an operation's precondition (dimension mismatch, gamma
/// below the conductor, wrong r for a closed formula, ...).
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A relation the theory guarantees failed at runtime. Reported, never
/// silently ignored.
class InvariantViolation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Malformed input files.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Files that cannot be read or written.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace fracval

#endif  // FRACVAL_ERRORS_HPP
