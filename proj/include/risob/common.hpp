#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace risob {

inline constexpr double inf = std::numeric_limits<double>::infinity();

/// Bad data handed to a constructor or operation (negative value, mismatched
/// partition, malformed table, ...).
struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of the operation (s <= 0, ...).
struct domain_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Parameter combination outside the implemented space families.
struct unsupported_space : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Operation called in a regime where its defining integral does not exist.
struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

/// Least-squares system without full rank (degenerate subdomain).
struct rank_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Grid too coarse or too small for the requested operation.
struct resolution_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double holder_conjugate(double p) {
    if (p == 1.0) return inf;
    if (std::isinf(p)) return 1.0;
    return p / (p - 1.0);
}

}  // namespace risob
