#pragma once

#include <stdexcept>
#include <string>

namespace qrk {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Precondition violations: argument outside the supported domain.
struct DomainError : Error {
    using Error::Error;
};

// Bad command line or configuration.
struct UsageError : Error {
    using Error::Error;
};

// Series or iteration hit its cap, or diverged.
struct ConvergenceError : Error {
    using Error::Error;
};

// Root bracketing failed; carries the attempted interval.
struct BracketError : Error {
    BracketError(const std::string& what, double lo, double hi)
        : Error(what + " (interval [" + std::to_string(lo) + ", " + std::to_string(hi) + "])"),
          lo(lo), hi(hi) {}
    double lo, hi;
};

// A quadrature integrand produced NaN/Inf.
struct NonFiniteError : Error {
    NonFiniteError(const std::string& what, double node)
        : Error(what + " at node " + std::to_string(node)), node(node) {}
    double node;
};

}  // namespace qrk
