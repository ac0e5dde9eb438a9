#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace zetaflow {

using Complex = std::complex<double>;

// ---------------------------------------------------------------------------
// Error taxonomy. Every throwing operation documents which of these it uses.
// ---------------------------------------------------------------------------

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Argument outside the supported region.
struct DomainError : Error { using Error::Error; };
/// Argument too close to a pole of the function.
struct PoleError : Error { using Error::Error; };
/// z inside an excluded disc where 1 - 2^{1-z} vanishes.
struct DenominatorError : Error { using Error::Error; };
/// Series/iteration budget insufficient for the requested accuracy.
struct ConvergenceError : Error { using Error::Error; };
/// Result exceeds the double floating range.
struct OverflowError : Error { using Error::Error; };
/// Derivative below the singularity threshold.
struct SingularityError : Error { using Error::Error; };
/// Newton polish did not settle within its iteration cap.
struct NoConvergence : Error { using Error::Error; };

// ---------------------------------------------------------------------------
// Value carriers
// ---------------------------------------------------------------------------

/// A computed function value together with the method's own claimed
/// absolute-error bound and the work spent (series terms, quadrature nodes,
/// iterations -- whatever the method counts).
struct FuncValue {
    Complex value{0.0, 0.0};
    double abs_err = 0.0;
    long terms_used = 0;
};

/// Accuracy request for series evaluations.
struct Tolerance {
    double target_abs_err = 1e-13;
    long max_terms = 400;
};

inline void validate(const Tolerance& tol) {
    if (!(tol.target_abs_err >= 1e-15))
        throw DomainError("Tolerance.target_abs_err below the 1e-15 double-precision floor");
    if (tol.max_terms <= 0)
        throw DomainError("Tolerance.max_terms must be positive");
}

inline bool is_finite(Complex z) {
    return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline void ensure_finite(const Complex& z, const char* what) {
    if (!is_finite(z)) throw ConvergenceError(std::string(what) + ": non-finite result");
}

}  // namespace zetaflow
