#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"

using namespace kwright;
using kwtest::rel_err;

TEST(Gauss2F1, KnownValues) {
    EXPECT_LT(rel_err(gauss_2f1({1.0, 2.0, 2.0}, 0.5), 2.0), 1e-12);
    EXPECT_LT(rel_err(gauss_2f1({1.0, 2.0, 2.0}, 0.5, 1e-15), 2.0), 1e-14);
    EXPECT_LT(rel_err(gauss_2f1({1.0, 1.0, 2.0}, 0.5, 1e-15), 2.0 * std::log(2.0)), 1e-14);
    EXPECT_EQ(gauss_2f1({Complex(0.3, 1.0), -2.5, 1.7}, 0.0), Complex(1.0, 0.0));
}

TEST(Gauss2F1, PfaffContinuationMatchesSeries) {
    const Gauss2F1Params p{0.4, Complex(-0.7, 0.3), 1.3};
    for (double y = -0.89; y < 0.0; y += 0.08) {
        const Complex direct = hyp2f1_series(p.alpha, p.beta, p.gamma, y, 1e-15);
        EXPECT_LT(rel_err(gauss_2f1(p, y), direct), 1e-11) << y;
    }
}

TEST(Gauss2F1, NegativeHalfLine) {
    // 2F1(1, 1; 2; z) = log(1 - z) / -z.
    for (double z : {-0.5, -3.0, -40.0, -1e6, -1e9}) {
        EXPECT_LT(rel_err(gauss_2f1({1.0, 1.0, 2.0}, z), -std::log1p(-z) / z), 1e-12) << z;
    }
}

TEST(Gauss2F1, NearOne) {
    // 2F1(a, b; b; z) = (1 - z)^-a in the connection branch.
    for (double z : {0.8, 0.95, 0.999999}) {
        EXPECT_LT(rel_err(gauss_2f1({0.35, 1.2, 1.2}, z), std::pow(1.0 - z, -0.35)), 1e-11) << z;
    }
    // log(1 - z) / -z through the degenerate (integer c - a - b) branch.
    for (double z : {0.8, 0.97}) {
        EXPECT_LT(rel_err(gauss_2f1({1.0, 1.0, 2.0}, z), -std::log1p(-z) / z), 1e-12) << z;
    }
}

TEST(Gauss2F1, Errors) {
    EXPECT_THROW(gauss_2f1({1.0, 1.0, 2.0}, Complex(0.0, 1.5)), DomainError);
    EXPECT_THROW(gauss_2f1({1.0, 1.0, 2.0}, 1.0), DomainError);
    EXPECT_THROW(hyp2f1_series(1.0, 1.0, 2.0, 0.999, 1e-14, 50), NonConvergenceError);
}

TEST(Hyp2F1, DifferenceAndNearOne) {
    const Hyp2F1 h(0.3, 0.8, 1.4);
    for (double omz : {0.6, 0.2, 1e-3, 1e-9}) {
        const double delta = 1e-4 * omz;
        const Complex want = h(1.0 - (omz + delta), omz + delta).value() - h(1.0 - omz, omz).value();
        const Complex got = h.difference(omz, delta).value();
        EXPECT_LT(std::abs(got - want), 1e-9 * std::abs(want) + 1e-14 * std::abs(h(1.0 - omz, omz).value())) << omz;
        if (omz < 0.25) {
            EXPECT_LT(rel_err(h.near_one(std::log(omz)).value(), h(1.0 - omz, omz).value()), 1e-12) << omz;
        }
    }
    // Far past underflow of 1 - z the scaled value stays finite.
    EXPECT_TRUE(std::isfinite(h.near_one(-2000.0).log_abs()));
}

TEST(AppellF3, Origin) {
    EXPECT_EQ(appell_f3({0.3, Complex(0.1, 2.0), -1.5, 0.7, 1.9}, 0.0, 0.0), Complex(1.0, 0.0));
}

TEST(AppellF3, PinnedRegressionValue) {
    const AppellF3Params p{0.5, 0.25, 0.5, 0.25, 1.5};
    const Complex brute = kwtest::f3_double_sum(0.5, 0.25, 0.5, 0.25, 1.5, 0.3, 0.2);
    const Complex v = appell_f3(p, 0.3, 0.2);
    EXPECT_LT(rel_err(v, brute), 1e-12);
    EXPECT_LT(rel_err(v, 1.0674749686548136), 1e-13);
}

TEST(AppellF3, MatchesDoubleSumOnGrid) {
    const AppellF3Params p{Complex(0.3, 0.2), -0.6, 1.1, 0.45, Complex(1.7, -0.4)};
    for (double x = -0.5; x <= 0.5; x += 0.25) {
        for (double y = -0.5; y <= 0.5; y += 0.25) {
            const Complex brute = kwtest::f3_double_sum(p.alpha, p.alpha_prime, p.beta, p.beta_prime, p.gamma, x, y);
            EXPECT_LT(rel_err(appell_f3(p, x, y), brute), 1e-10) << x << " " << y;
        }
    }
}

TEST(AppellF3, Symmetry) {
    const AppellF3Params p{0.3, -0.8, 1.2, 0.55, 2.1};
    const AppellF3Params q{p.alpha_prime, p.alpha, p.beta_prime, p.beta, p.gamma};
    for (const auto& [x, y] : {std::pair{0.2, -0.4}, std::pair{-0.45, 0.3}, std::pair{0.5, 0.5}}) {
        EXPECT_LT(rel_err(appell_f3(p, x, y), appell_f3(q, y, x)), 1e-12) << x << " " << y;
    }
}

TEST(AppellF3, GaussReduction) {
    // F3(a, g - a, b, g - b; g; x, y) = (1 - y)^(a + b - g) 2F1(a, b; g; x + y - x y).
    const double a = 0.3, b = 0.4, g = 1.1;
    const AppellF3Params p{a, g - a, b, g - b, g};
    const Complex at_example = appell_f3(p, 0.2, 0.3);
    EXPECT_LT(rel_err(at_example, std::pow(0.7, a + b - g) * gauss_2f1({a, b, g}, 0.44)), 1e-12);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const double x = -0.5 + 0.25 * i, y = -0.5 + 0.25 * j;
            const Complex lhs = appell_f3(p, x, y);
            const Complex rhs = std::pow(1.0 - y, a + b - g) * gauss_2f1({a, b, g}, x + y - x * y);
            EXPECT_LT(rel_err(lhs, rhs), 1e-10) << x << " " << y;
        }
    }
}

TEST(AppellF3, NegativeSecondArgument) {
    // y far below -1 is served by continuing each inner 2F1; check against a
    // y-symmetric rewrite that only needs |y| < 1 after Pfaff on the whole F3.
    const double a = 0.3, b = 0.4, g = 1.1;
    const AppellF3Params p{a, g - a, b, g - b, g};
    for (double y : {-2.0, -15.0}) {
        const double x = 0.3;
        const Complex rhs = std::pow(1.0 - y, a + b - g) * gauss_2f1({a, b, g}, x + y - x * y);
        EXPECT_LT(rel_err(appell_f3(p, x, y), rhs), 1e-10) << y;
    }
}

class KernelRoutes : public ::testing::TestWithParam<AppellF3Params> {};

TEST_P(KernelRoutes, SeriesMatchesIntegral) {
    const F3Kernel k(GetParam(), 1e-13);
    for (double s : {0.3, 0.2, 0.1, 0.03}) {
        const ScaledComplex a = k.via_series(s, 200000);
        const ScaledComplex b = k.via_integral(s);
        EXPECT_LT(rel_err(b.value(), a.value()), 1e-10) << s;
    }
}

TEST_P(KernelRoutes, SmallArgumentsStayFinite) {
    const F3Kernel k(GetParam(), 1e-13);
    for (double s : {1e-5, 1e-40, 1e-200, 1e-300}) EXPECT_TRUE(std::isfinite(k(s).log_abs())) << s;
}

INSTANTIATE_TEST_SUITE_P(Params, KernelRoutes,
                         ::testing::Values(AppellF3Params{0.5, 0.3, 0.2, 0.1, 1.2},
                                           AppellF3Params{-0.4, 0.7, 0.35, -0.6, 0.45},
                                           AppellF3Params{0.9, -0.2, -0.75, 0.8, 1.85},
                                           AppellF3Params{0.0029, 0.813, -0.6, 0.9775, 0.8145}));

TEST(F3Kernel, CollapsesToOne) {
    const F3Kernel k({0.0, 0.0, 0.0, 0.0, 0.7});
    for (double s : {0.9, 0.3, 1e-3, 1e-100}) EXPECT_LT(std::abs(k(s).value() - 1.0), 1e-13) << s;
}

TEST(F3Kernel, ValueAtOne) {
    // s = 1 puts both arguments at 0.
    const F3Kernel k({0.4, -0.3, 0.8, 0.2, 1.1});
    EXPECT_LT(std::abs(k(1.0).value() - 1.0), 1e-15);
}
