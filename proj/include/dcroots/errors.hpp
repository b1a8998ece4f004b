#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dcroots {

/// Input outside the domain of an operation (nonpositive entry, gamma >= 1, ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// A size limit of a routine was exceeded.
class CapacityError : public std::length_error {
public:
    using std::length_error::length_error;
};

/// Path parameter outside the segment interval.
class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

/// The simultaneous root iteration failed to converge; carries the best residuals seen.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, std::vector<double> residuals)
        : std::runtime_error(what), best_residuals(std::move(residuals)) {}

    std::vector<double> best_residuals;
};

/// Winding-number quadrature did not produce an integer-like value.
class ContourError : public std::runtime_error {
public:
    ContourError(const std::string& what, double raw_value)
        : std::runtime_error(what), raw(raw_value) {}

    double raw;
};

/// Planning requested on a vector that is already the multi-singleton.
class AlreadyIdealError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Step control or corrector failure while following root trajectories.
class TracerError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Nearest-neighbour root matching could not be made unambiguous.
class MatchingError : public TracerError {
public:
    using TracerError::TracerError;
};

/// A computed quantity contradicts a proven statement (count decrease, bound escape).
/// Never swallowed: this is the failure signal of the verification battery.
class TheoremViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Self-certifying construction failed its postcondition.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, int plus, int bar)
        : std::runtime_error(what), nu_plus(plus), nu_bar(bar) {}

    int nu_plus;
    int nu_bar;
};

}  // namespace dcroots
