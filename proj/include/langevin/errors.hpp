#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace langevin {

/// Invalid argument supplied by the caller (non-finite point, out-of-range parameter, ...).
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A documented precondition of a bound or schedule does not hold.
class PreconditionError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Requested parameter regime is not covered (e.g. alpha <= 1/3 for the LMC planner).
class UnsupportedRegime : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Modulus evaluates to zero where a bound divides by it.
class DegenerateModulus : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

}  // namespace langevin
