#pragma once

#include <memory>
#include <vector>

#include "kwright/types.hpp"

namespace kwright {

inline constexpr double kDefaultTol = 1e-12;
inline constexpr int kHypergeometricTermCap = 20000;

struct Gauss2F1Params {
    Complex alpha;
    Complex beta;
    Complex gamma;
};

struct AppellF3Params {
    Complex alpha;
    Complex alpha_prime;
    Complex beta;
    Complex beta_prime;
    Complex gamma;
};

/// Plain Gauss series for |z| < 1. Stops after three consecutive terms below
/// tol * |sum| once the term ratio has dropped below one.
Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z, double tol = kDefaultTol,
                      int term_cap = kHypergeometricTermCap);

/// Gauss 2F1 on |z| < 1 and on the real half-line (-inf, 0] via Pfaff.
/// Real z in (0.75, 1) goes through the connection formula around z = 1.
Complex gauss_2f1(const Gauss2F1Params& p, Complex z, double tol = kDefaultTol);

/// Appell F3 via the single series over m of 2F1(alpha', beta'; gamma + m; y),
/// each inner function continued by Pfaff when y is real and negative.
Complex appell_f3(const AppellF3Params& p, Complex x, Complex y, double tol = kDefaultTol,
                  int term_cap = kHypergeometricTermCap);

/// 2F1(a, b; c; z) for real z < 1 with fixed parameters. Connection
/// coefficients are computed once; results are scaled so that the
/// (1 - z)^(c - a - b) branch cannot overflow as z -> 1.
class Hyp2F1 {
public:
    Hyp2F1(Complex a, Complex b, Complex c, double tol = kDefaultTol);
    ~Hyp2F1();
    Hyp2F1(Hyp2F1&&) noexcept;
    Hyp2F1& operator=(Hyp2F1&&) noexcept;

    /// `one_minus_z` must equal 1 - z; pass it computed directly when z is near 1.
    ScaledComplex operator()(double z, double one_minus_z) const;
    ScaledComplex operator()(double z) const { return (*this)(z, 1.0 - z); }
    /// Value at z = 1 - exp(log_one_minus_z), z > 0.75; stays finite after 1 - z underflows.
    ScaledComplex near_one(double log_one_minus_z) const;
    /// F(z1) - F(z0) for 0 <= z1, z0 < 1 with 1 - z0 = one_minus_z0 and
    /// z0 - z1 = delta, accurate when delta is small.
    ScaledComplex difference(double one_minus_z0, double delta) const;

    class Branch;

private:
    Complex a_;
    std::unique_ptr<Branch> direct_;
    std::unique_ptr<Branch> pfaff_;  // parameters (a, c - b; c)
};

/// F3(alpha, alpha', beta, beta'; gamma; 1 - s, 1 - 1/s) for 0 < s <= 1, the
/// kernel of the Marichev-Saigo-Maeda operators after scaling t = x s (left)
/// or t = x / s (right). Needs Re(gamma) > 0.
///
/// For s >= 0.3 the single series is summed directly. Below that the series
/// needs O(1/s) terms, so the value comes from the one-dimensional integral
///   Gamma(g)/(Gamma(l) Gamma(g-l)) int_0^1 tau^(l-1) (1-tau)^(g-l-1)
///       2F1(a, b; l; x tau) 2F1(a', b'; g-l; y (1-tau)) dtau,
/// valid for 0 < Re(l) < Re(g), evaluated with double-exponential quadrature.
class F3Kernel {
public:
    explicit F3Kernel(const AppellF3Params& p, double tol = kDefaultTol);
    ~F3Kernel();
    F3Kernel(F3Kernel&&) noexcept;
    F3Kernel& operator=(F3Kernel&&) noexcept;

    ScaledComplex operator()(double s) const;

    /// Single-series route; usable for any s but slow for small s.
    ScaledComplex via_series(double s, int term_cap = kHypergeometricTermCap) const;
    /// Integral route; usable for s < 1/2.
    ScaledComplex via_integral(double s) const;

    const AppellF3Params& params() const { return p_; }
    static constexpr double kSeriesThreshold = 0.3;

private:
    struct Impl;
    AppellF3Params p_;
    double tol_;
    std::unique_ptr<Impl> impl_;
};

}  // namespace kwright
