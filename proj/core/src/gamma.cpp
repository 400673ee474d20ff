#include "kwright/gamma.hpp"

#include <array>
#include <cmath>
#include <sstream>

namespace kwright {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7,
};
const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);
const double kSqrt2Pi = std::sqrt(2.0 * kPi);

// Series part A_g(w) of Gamma(w + 1) = sqrt(2 pi) t^(w+1/2) e^-t A_g(w).
template <typename T>
T lanczos_sum(T w) {
    T sum = T(kLanczosCoeffs[0]);
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        sum += T(kLanczosCoeffs[i]) / (w + T(static_cast<double>(i)));
    }
    return sum;
}

// Reduce x to n/2 + f with |f| <= 1/4; returns n mod 4 in [0, 3].
int quarter_reduce(double x, double& f) {
    const double n = std::nearbyint(2.0 * x);
    f = x - 0.5 * n;
    long long q = static_cast<long long>(std::fmod(n, 4.0));
    if (q < 0) q += 4;
    return static_cast<int>(q);
}

double sinpi_real(double x) {
    double f = 0.0;
    switch (quarter_reduce(x, f)) {
        case 0: return std::sin(kPi * f);
        case 1: return std::cos(kPi * f);
        case 2: return -std::sin(kPi * f);
        default: return -std::cos(kPi * f);
    }
}

double cospi_real(double x) {
    double f = 0.0;
    switch (quarter_reduce(x, f)) {
        case 0: return std::cos(kPi * f);
        case 1: return -std::sin(kPi * f);
        case 2: return -std::cos(kPi * f);
        default: return std::sin(kPi * f);
    }
}

[[noreturn]] void throw_pole(const char* fn, Complex z) {
    std::ostringstream os;
    os << fn << ": argument (" << z.real() << ", " << z.imag() << ") is a pole";
    throw PoleError(os.str());
}

Complex checked(const char* fn, Complex z, Complex value) {
    if (!is_finite(value)) {
        std::ostringstream os;
        os << fn << ": result overflows at (" << z.real() << ", " << z.imag() << ")";
        throw OverflowError(os.str());
    }
    return value;
}

// Lanczos form for Re(z) >= 1/2, off the real axis.
Complex gamma_right_half(Complex z) {
    const Complex w = z - 1.0;
    const Complex t = w + kLanczosG + 0.5;
    return kSqrt2Pi * std::exp((w + 0.5) * std::log(t) - t) * lanczos_sum(w);
}

Complex log_gamma_right_half(Complex z) {
    const Complex w = z - 1.0;
    const Complex t = w + kLanczosG + 0.5;
    return kHalfLog2Pi + (w + 0.5) * std::log(t) - t + std::log(lanczos_sum(w));
}

}  // namespace

bool near_nonpositive_integer(Complex z, double tol) {
    if (std::abs(z.imag()) > tol) return false;
    const double r = std::nearbyint(z.real());
    return r <= 0.0 && std::abs(z.real() - r) <= tol;
}

Complex sin_pi(Complex z) {
    const double x = z.real();
    const double y = z.imag();
    if (y == 0.0) return {sinpi_real(x), 0.0};
    return {sinpi_real(x) * std::cosh(kPi * y), cospi_real(x) * std::sinh(kPi * y)};
}

Complex gamma(Complex z) {
    if (!is_finite(z)) throw DomainError("gamma: non-finite argument");
    if (near_nonpositive_integer(z)) throw_pole("gamma", z);
    if (z.imag() == 0.0) return checked("gamma", z, {std::tgamma(z.real()), 0.0});
    if (z.real() < 0.5) {
        const Complex reflected = gamma_right_half(1.0 - z);
        return checked("gamma", z, kPi / (sin_pi(z) * reflected));
    }
    return checked("gamma", z, gamma_right_half(z));
}

Complex log_gamma(Complex z) {
    if (!is_finite(z)) throw DomainError("log_gamma: non-finite argument");
    if (near_nonpositive_integer(z)) throw_pole("log_gamma", z);
    if (z.imag() == 0.0) {
        const double x = z.real();
        const double log_abs = std::lgamma(x);
        // Gamma is negative on (-2j-1, -2j) for j >= 0.
        const bool negative = x < 0.0 && std::fmod(std::floor(-x), 2.0) == 0.0;
        return {log_abs, negative ? kPi : 0.0};
    }
    if (z.real() < 0.5) {
        return std::log(kPi) - std::log(sin_pi(z)) - log_gamma_right_half(1.0 - z);
    }
    return log_gamma_right_half(z);
}

Complex rgamma(Complex z) {
    if (near_nonpositive_integer(z)) return {0.0, 0.0};
    if (z.imag() == 0.0) {
        const double x = z.real();
        if (std::abs(x) > 170.0) return std::exp(-log_gamma(z));
        return {1.0 / std::tgamma(x), 0.0};
    }
    if (z.real() < 0.5) return sin_pi(z) * gamma_right_half(1.0 - z) / kPi;
    if (z.real() > 160.0 || std::abs(z.imag()) > 160.0) return std::exp(-log_gamma(z));
    return 1.0 / gamma_right_half(z);
}

Complex gamma_k(Complex z, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("gamma_k: k must be positive and finite");
    if (k == 1.0) return gamma(z);
    const Complex w = z / k;
    if (near_nonpositive_integer(w)) throw_pole("gamma_k", z);
    const Complex value = std::exp((w - 1.0) * std::log(k)) * gamma(w);
    if (is_finite(value)) return value;
    return checked("gamma_k", z, std::exp(log_gamma_k(z, k)));
}

Complex log_gamma_k(Complex z, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("log_gamma_k: k must be positive and finite");
    if (k == 1.0) return log_gamma(z);
    const Complex w = z / k;
    if (near_nonpositive_integer(w)) throw_pole("log_gamma_k", z);
    return (w - 1.0) * std::log(k) + log_gamma(w);
}

Complex pochhammer_k(Complex z, unsigned n, double k) {
    Complex product(1.0, 0.0);
    for (unsigned i = 0; i < n; ++i) {
        product *= z + static_cast<double>(i) * k;
        if (!is_finite(product)) throw OverflowError("pochhammer_k: product overflows");
    }
    return product;
}

}  // namespace kwright
