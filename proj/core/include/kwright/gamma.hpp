#pragma once

#include "kwright/types.hpp"

namespace kwright {

/// Distance below which an argument counts as a nonpositive-integer pole.
inline constexpr double kPoleTolerance = 1e-12;

/// True when z lies within `tol` of {0, -1, -2, ...}.
bool near_nonpositive_integer(Complex z, double tol = kPoleTolerance);

/// sin(pi z) with exact argument reduction on the real part.
Complex sin_pi(Complex z);

/// Euler gamma. Real arguments go to std::tgamma; complex ones use the
/// Lanczos approximation (g = 7) with reflection for Re(z) < 1/2.
/// Throws PoleError at nonpositive integers and OverflowError past double range.
Complex gamma(Complex z);

/// Logarithm of Gamma(z); exp(log_gamma(z)) == gamma(z). Imaginary part is
/// not reduced to (-pi, pi].
Complex log_gamma(Complex z);

/// 1/Gamma(z); returns exactly zero at the poles of Gamma instead of throwing.
Complex rgamma(Complex z);

/// k-gamma: Gamma_k(z) = k^(z/k - 1) Gamma(z/k), k > 0.
Complex gamma_k(Complex z, double k);

/// log Gamma_k(z) = (z/k - 1) log k + log Gamma(z/k).
Complex log_gamma_k(Complex z, double k);

/// k-Pochhammer symbol z (z + k) ... (z + (n - 1) k); 1 when n == 0.
/// Any real k is accepted, including k == 0 (yields z^n).
Complex pochhammer_k(Complex z, unsigned n, double k);

}  // namespace kwright
