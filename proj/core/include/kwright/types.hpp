#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <string>

namespace kwright {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

// ---------------------------------------------------------------------------
// Error hierarchy. Every public operation reports failure through one of
// these; the CLI maps them onto exit codes.
// ---------------------------------------------------------------------------

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument sits on (or within tolerance of) a gamma-function pole.
class PoleError : public Error {
public:
    using Error::Error;
};

/// Result or intermediate exceeds the double range.
class OverflowError : public Error {
public:
    using Error::Error;
};

/// Argument outside the region an evaluator serves.
class DomainError : public Error {
public:
    using Error::Error;
};

/// Series or quadrature failed to reach the requested tolerance.
class NonConvergenceError : public Error {
public:
    using Error::Error;
};

/// A hypothesis of a closed-form result is violated.
class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The K-Wright series does not satisfy Delta > -1 where that is required.
class ConvergenceError : public PreconditionError {
public:
    using PreconditionError::PreconditionError;
};

/// Finite-difference stencil could not meet its tolerance before the step floor.
class StepCollapseError : public NonConvergenceError {
public:
    using NonConvergenceError::NonConvergenceError;
};

/// Caputo oracle called on an integrand without an exact derivative.
class MissingDerivativeError : public Error {
public:
    using Error::Error;
};

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

/// Complex value carried as mantissa * exp(log_scale); used where kernels
/// span hundreds of decades (powers of arguments near 1e-300).
struct ScaledComplex {
    Complex mantissa{0.0, 0.0};
    double log_scale = 0.0;

    static ScaledComplex from_log(Complex log_value) {
        return {std::polar(1.0, log_value.imag()), log_value.real()};
    }
    static ScaledComplex from_value(Complex v) { return {v, 0.0}; }

    bool is_zero() const { return mantissa == Complex(0.0, 0.0); }

    Complex value() const {
        if (is_zero()) return {0.0, 0.0};
        return mantissa * std::exp(log_scale);
    }

    double log_abs() const {
        if (is_zero()) return -std::numeric_limits<double>::infinity();
        return std::log(std::abs(mantissa)) + log_scale;
    }

    ScaledComplex& operator*=(const ScaledComplex& o) {
        mantissa *= o.mantissa;
        log_scale += o.log_scale;
        normalize();
        return *this;
    }
    ScaledComplex& operator*=(Complex c) {
        mantissa *= c;
        normalize();
        return *this;
    }

    ScaledComplex& operator+=(const ScaledComplex& o) {
        if (o.is_zero()) return *this;
        if (is_zero()) {
            *this = o;
            return *this;
        }
        if (log_scale >= o.log_scale) {
            mantissa += o.mantissa * std::exp(o.log_scale - log_scale);
        } else {
            mantissa = mantissa * std::exp(log_scale - o.log_scale) + o.mantissa;
            log_scale = o.log_scale;
        }
        normalize();
        return *this;
    }

    void normalize() {
        const double m = std::abs(mantissa);
        if (m == 0.0 || !std::isfinite(m)) return;
        if (m > 1e150 || m < 1e-150) {
            const double lm = std::log(m);
            mantissa /= m;
            log_scale += lm;
        }
    }
};

inline ScaledComplex operator*(ScaledComplex a, const ScaledComplex& b) { return a *= b; }
inline ScaledComplex operator*(ScaledComplex a, Complex b) { return a *= b; }
inline ScaledComplex operator+(ScaledComplex a, const ScaledComplex& b) { return a += b; }

}  // namespace kwright
