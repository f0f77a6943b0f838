#ifndef GIPULSE_ERRORS_HPP
#define GIPULSE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gipulse {

/// Bad arguments or violated preconditions (shape/length/rate mismatches,
/// out-of-range parameters). Maps to CLI exit code 1.
class InvalidInput : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Signal has no usable content (all-constant, zero power). Maps to CLI
/// exit code 2; the Monte Carlo harness records it as a failed trial.
class DegenerateSignal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Report requested over a set with no valid entries.
class EmptyReport : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// File or format problem on read/write.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace gipulse

#endif
