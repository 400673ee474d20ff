#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace kwright;
using kwtest::rel_err;

TEST(Gamma, KnownValues) {
    EXPECT_NEAR(kwright::gamma(1.0).real(), 1.0, 1e-15);
    EXPECT_LT(rel_err(kwright::gamma(0.5), std::sqrt(kPi)), 1e-14);
    EXPECT_LT(rel_err(kwright::gamma(5.0), 24.0), 1e-14);
}

TEST(Gamma, RealAxisAgainstStdlib) {
    for (double x = -9.75; x < 170.0; x += 0.731) {
        EXPECT_LT(rel_err(kwright::gamma(x), std::tgamma(x)), 1e-13) << x;
    }
}

TEST(Gamma, ComplexMatchesLogGamma) {
    for (double re = -4.3; re < 6.0; re += 0.9) {
        for (double im = -3.0; im <= 3.0; im += 1.5) {
            const Complex z(re, im);
            EXPECT_LT(rel_err(std::exp(log_gamma(z)), kwright::gamma(z)), 1e-12) << z;
        }
    }
}

TEST(Gamma, Poles) {
    EXPECT_THROW(kwright::gamma(0.0), PoleError);
    EXPECT_THROW(kwright::gamma(-3.0), PoleError);
    EXPECT_THROW(kwright::gamma(Complex(-2.0, 1e-14)), PoleError);
    EXPECT_THROW(log_gamma(-1.0), PoleError);
    EXPECT_EQ(rgamma(-2.0), Complex(0.0, 0.0));
    EXPECT_NO_THROW(kwright::gamma(-2.5));
}

TEST(Gamma, Overflow) {
    EXPECT_THROW(kwright::gamma(200.0), OverflowError);
    EXPECT_NO_THROW(log_gamma(200.0));
}

TEST(LogGamma, KnownValues) {
    EXPECT_NEAR(log_gamma(1.0).real(), 0.0, 1e-15);
    // log 9! from the exact integer 362880.
    EXPECT_LT(rel_err(log_gamma(10.0), std::log(362880.0)), 1e-14);
    EXPECT_LT(rel_err(log_gamma(0.5), std::log(std::sqrt(kPi))), 1e-14);
}

TEST(Gamma, Reflection) {
    for (double re = -2.7; re < 3.0; re += 0.55) {
        for (double im : {-1.2, -0.3, 0.0, 0.8}) {
            const Complex z(re, im);
            const Complex v = kwright::gamma(z) * kwright::gamma(1.0 - z) * sin_pi(z) / kPi;
            EXPECT_LT(std::abs(v - 1.0), 1e-11) << z;
        }
    }
}

TEST(GammaK, KnownValues) {
    for (double k : {0.3, 1.0, 2.0, 3.7}) EXPECT_LT(rel_err(gamma_k(k, k), 1.0), 1e-14) << k;
    EXPECT_LT(rel_err(gamma_k(3.0, 1.0), 2.0), 1e-14);
}

TEST(GammaK, HalfGaussianIntegral) {
    // Gamma_2(1) = int_0^inf exp(-t^2 / 2) dt.
    const double integral = kwtest::simpson([](double t) { return std::exp(-0.5 * t * t); }, 0.0, 40.0, 200000);
    EXPECT_LT(rel_err(gamma_k(1.0, 2.0), integral), 1e-12);
    EXPECT_LT(rel_err(gamma_k(1.0, 2.0), 1.2533141373155003), 1e-14);
}

TEST(GammaK, IntegralDefinition) {
    // Gamma_k(z) = int_0^inf t^(z-1) exp(-t^k / k) dt for real z > 0.
    for (double k : {0.7, 1.5, 2.5}) {
        for (double z : {1.3, 2.0, 3.6}) {
            // t = u^4 removes the endpoint singularity; u <= 5 covers t <= 625.
            const double v = kwtest::simpson(
                [&](double u) {
                    return u == 0.0 ? 0.0 : 4.0 * std::pow(u, 4.0 * z - 1.0) * std::exp(-std::pow(u, 4.0 * k) / k);
                },
                0.0, 5.0, 200000);
            EXPECT_LT(rel_err(gamma_k(z, k), v), 1e-7) << k << " " << z;
        }
    }
}

TEST(GammaK, RecurrenceAndReduction) {
    for (double k : {0.5, 1.0, 2.0, 3.7}) {
        for (double re = -2.9; re < 4.0; re += 0.7) {
            for (double im : {-0.9, 0.4, 1.7}) {
                const Complex z(re, im);
                EXPECT_LT(rel_err(gamma_k(z + k, k), z * gamma_k(z, k)), 1e-12) << z << " k=" << k;
            }
        }
    }
    for (double x = 0.1; x < 20.0; x += 0.37) EXPECT_EQ(gamma_k(x, 1.0), kwright::gamma(x));
    EXPECT_EQ(gamma_k(Complex(0.3, 1.1), 1.0), kwright::gamma(Complex(0.3, 1.1)));
}

TEST(GammaK, Poles) {
    EXPECT_THROW(gamma_k(0.0, 2.0), PoleError);
    EXPECT_THROW(gamma_k(-4.0, 2.0), PoleError);
    EXPECT_NO_THROW(gamma_k(-3.0, 2.0));
}

TEST(PochhammerK, KnownValues) {
    EXPECT_EQ(pochhammer_k(Complex(2.5, -1.0), 0, 7.0), Complex(1.0, 0.0));
    EXPECT_LT(rel_err(pochhammer_k(2.0, 3, 2.0), 48.0), 1e-15);
    EXPECT_LT(rel_err(pochhammer_k(3.0, 4, 1.0), 360.0), 1e-15);
    EXPECT_LT(rel_err(pochhammer_k(Complex(1.5, 0.5), 5, 0.0), std::pow(Complex(1.5, 0.5), 5)), 1e-14);
}

TEST(PochhammerK, GammaRatio) {
    for (double k : {0.5, 1.0, 2.0}) {
        for (const Complex z : {Complex(0.3, 0.2), Complex(1.7, -0.5), Complex(-2.2, 0.1)}) {
            for (unsigned n = 0; n <= 50; n += 7) {
                const Complex want = gamma_k(z + double(n) * k, k) / gamma_k(z, k);
                EXPECT_LT(rel_err(pochhammer_k(z, n, k), want), 1e-11) << z << " n=" << n << " k=" << k;
            }
        }
    }
}
