#include <gtest/gtest.h>

#include <cmath>
#include <thread>
#include <vector>

#include "support.hpp"

using namespace kwright;
using kwtest::rel_err;

namespace {

const MSMParams kWorked{0.5, 0.3, 0.2, 0.1, 1.2};
const double kRLHalf = 1.1283791670955126;  // Gamma(2) / Gamma(1.5)
// Theorem 3.1 image at x = 1 for the worked operator, rho = 2, a = 1/2, f = 0Psi0;
// pinned from the oracle agreement below.
const double kTheorem31W = 0.68898196929290593;

MSMParams with(MSMParams op, Side side, OpKind kind) {
    op.side = side;
    op.kind = kind;
    return op;
}

MSMParams rl(double g, Side side = Side::Left, OpKind kind = OpKind::Integral) { return {0.0, 0.0, 0.0, 0.0, g, side, kind}; }

}  // namespace

TEST(MSMIntegral, RiemannLiouvilleOfOne) {
    const QuadratureReport r = msm_integral_numeric(rl(0.5), PowerSum::monomial(0.0), 1.0);
    EXPECT_LT(rel_err(r.value, kRLHalf), 1e-12);
    EXPECT_GE(r.est_error, 0.0);
    EXPECT_GT(r.evaluations, 0u);
}

TEST(MSMIntegral, WorkedImages) {
    const Complex left = msm_integral_numeric(kWorked, PowerSum::monomial(1.0), 1.0).value;
    EXPECT_LT(rel_err(left, power_image(kWorked, 2.0).coefficient), 1e-8);
    const MSMParams right = with(kWorked, Side::Right, OpKind::Integral);
    const QuadratureReport r = msm_integral_numeric(right, PowerSum::monomial(-3.0), 1.0);
    EXPECT_LT(rel_err(r.value, power_image(right, 3.0).coefficient), 1e-8);
    EXPECT_TRUE(std::isinf(r.truncation_T));
}

TEST(MSMIntegral, KernelCollapse) {
    for (double g : {0.3, 1.0, 1.7}) {
        for (double rho : {0.6, 1.5, 3.2}) {
            for (double x : {0.5, 2.0}) {
                const Complex lv = msm_integral_numeric(rl(g), PowerSum::monomial(rho - 1.0), x).value;
                const double lw = std::tgamma(rho) / std::tgamma(rho + g) * std::pow(x, rho + g - 1.0);
                EXPECT_LT(rel_err(lv, lw), 1e-10) << g << " " << rho;
                // Right RL integral of t^-rho: Gamma(rho - g) / Gamma(rho) x^(g - rho), rho > g.
                if (rho > g) {
                    const Complex rv = msm_integral_numeric(rl(g, Side::Right), PowerSum::monomial(-rho), x).value;
                    const double rw = std::tgamma(rho - g) / std::tgamma(rho) * std::pow(x, g - rho);
                    EXPECT_LT(rel_err(rv, rw), 1e-10) << g << " " << rho;
                }
            }
        }
    }
}

TEST(MSMIntegral, SubstitutionInvariance) {
    Sampler s(99);
    for (int i = 0; i < 6; ++i) {
        for (Side side : {Side::Left, Side::Right}) {
            const MSMParams op = draw_msm(s, side, OpKind::Integral);
            const double rho = draw_above(s, rho_lower_bound(op));
            const PowerSum f = lemma_monomial(side, rho);
            for (double x : {0.7, 1.6}) {
                const Complex a = msm_integral_numeric(op, f, x).value;
                const Complex b = msm_integral_numeric_direct(op, f, x).value;
                EXPECT_LT(rel_err(a, b), 1e-10) << i << " " << to_string(side) << " x=" << x;
            }
        }
    }
}

TEST(MSMIntegral, EndpointRobustness) {
    OracleOptions opt;
    opt.tol = 1e-9;
    for (double g : {0.1, 0.5, 0.9}) {
        const MSMParams op{0.3, -0.2, 0.4, 0.1, g};
        const double rho = rho_lower_bound(op) + 0.3;
        const QuadratureReport r = msm_integral_numeric(op, PowerSum::monomial(rho - 1.0), 1.3, opt);
        const PowerImage want = power_image(op, rho);
        EXPECT_LT(rel_err(r.value, want.coefficient * std::pow(1.3, want.exponent)), 1e-9) << g;
        EXPECT_LT(r.evaluations, 1000000u);
    }
}

TEST(MSMIntegral, Linearity) {
    const PowerSum f = PowerSum::monomial(0.7);
    const QuadratureReport one = msm_integral_numeric(kWorked, f, 1.4);
    const QuadratureReport two = msm_integral_numeric(kWorked, f * 2.0, 1.4);
    EXPECT_LT(rel_err(two.value, 2.0 * one.value), 1e-12);
}

TEST(MSMIntegral, Preconditions) {
    EXPECT_THROW(msm_integral_numeric(MSMParams{0.1, 0.1, 0.1, 0.1, -0.2}, PowerSum::monomial(1.0), 1.0),
                 PreconditionError);
    EXPECT_THROW(msm_integral_numeric(kWorked, PowerSum::monomial(1.0), -1.0), DomainError);
    EXPECT_THROW(msm_integral_numeric(with(kWorked, Side::Left, OpKind::Derivative), PowerSum::monomial(1.0), 1.0),
                 DomainError);
}

TEST(SaigoIntegral, Examples) {
    const SaigoParams rl_saigo{0.5, -0.5, 0.42};
    EXPECT_LT(rel_err(saigo_integral_numeric(rl_saigo, PowerSum::monomial(0.0), 1.0).value, 1.0 / std::tgamma(1.5)),
              1e-10);
    const SaigoParams ek{0.5, 0.0, 0.3};
    EXPECT_LT(rel_err(saigo_integral_numeric(ek, PowerSum::monomial(1.0), 1.0).value,
                      std::tgamma(2.3) / std::tgamma(2.8)),
              1e-10);
    const QuadratureReport one = saigo_integral_numeric(ek, PowerSum::monomial(0.0), 1.0);
    const QuadratureReport two = saigo_integral_numeric(ek, PowerSum::monomial(0.0, 2.0), 1.0);
    EXPECT_LT(rel_err(two.value, 2.0 * one.value), 1e-12);
}

TEST(SaigoIntegral, AgreesWithEmbeddedMSM) {
    Sampler s(12);
    for (int i = 0; i < 4; ++i) {
        for (Side side : {Side::Left, Side::Right}) {
            const SaigoParams sg = draw_saigo(s, side, OpKind::Integral);
            const double rho = draw_above(s, rho_lower_bound(sg));
            const PowerSum f = lemma_monomial(side, rho);
            const Complex a = saigo_integral_numeric(sg, f, 1.2).value;
            const Complex b = msm_integral_numeric(reduce_saigo(sg), f, 1.2).value;
            EXPECT_LT(rel_err(a, b), 1e-9) << i;
        }
    }
}

TEST(Differentiate, SmoothFunctions) {
    OracleOptions opt;
    auto f = [](double t) { return Complex(std::sin(t), std::exp(0.5 * t)); };
    EXPECT_LT(rel_err(differentiate(f, 1, 0.8, opt).value, Complex(std::cos(0.8), 0.5 * std::exp(0.4))), 1e-9);
    EXPECT_LT(rel_err(differentiate(f, 2, 0.8, opt).value, Complex(-std::sin(0.8), 0.25 * std::exp(0.4))), 1e-8);
    EXPECT_LT(rel_err(differentiate(f, 3, 0.8, opt).value, Complex(-std::cos(0.8), 0.125 * std::exp(0.4))), 1e-7);
    EXPECT_EQ(differentiate(f, 0, 0.8, opt).value, f(0.8));
}

TEST(Differentiate, StepCollapse) {
    OracleOptions opt;
    opt.fd_tol = 1e-300;
    EXPECT_THROW(differentiate([](double t) { return Complex(std::sin(t), 0.0); }, 2, 1.0, opt), StepCollapseError);
}

TEST(MSMDerivative, RiemannLiouvilleHalfDerivative) {
    const QuadratureReport r =
        msm_derivative_numeric(rl(0.5, Side::Left, OpKind::Derivative), PowerSum::monomial(1.0), 1.0);
    EXPECT_LT(rel_err(r.value, kRLHalf), 1e-6);
}

TEST(MSMDerivative, WorkedImages) {
    const MSMParams left = with(kWorked, Side::Left, OpKind::Derivative);
    EXPECT_LT(rel_err(msm_derivative_numeric(left, PowerSum::monomial(2.0), 1.0).value,
                      power_image(left, 3.0).coefficient),
              1e-4);
    const MSMParams right = with(kWorked, Side::Right, OpKind::Derivative);
    const double rho = rho_lower_bound(right) + 0.7;
    const PowerImage img = power_image(right, rho);
    EXPECT_LT(rel_err(msm_derivative_numeric(right, PowerSum::monomial(-rho), 1.5).value,
                      img.coefficient * std::pow(1.5, img.exponent)),
              1e-4);
}

TEST(MSMDerivative, Linearity) {
    const MSMParams op = with(kWorked, Side::Left, OpKind::Derivative);
    const PowerSum f = PowerSum::monomial(2.0), g = PowerSum::monomial(1.5, 0.3);
    const Complex sum = msm_derivative_numeric(op, f + g, 1.1).value;
    const Complex parts = msm_derivative_numeric(op, f, 1.1).value + msm_derivative_numeric(op, g, 1.1).value;
    EXPECT_LT(rel_err(sum, parts), 1e-6);
}

TEST(Caputo, RiemannLiouvilleFactorization) {
    const double rho = 3.5;
    const QuadratureReport r = caputo_numeric(rl(0.5, Side::Left, OpKind::Caputo), PowerSum::monomial(rho), 1.0);
    EXPECT_LT(rel_err(r.value, std::tgamma(rho + 1.0) / std::tgamma(rho + 0.5)), 1e-10);
}

TEST(Caputo, WorkedImage) {
    const MSMParams op = with(kWorked, Side::Left, OpKind::Caputo);
    ASSERT_EQ(op.m(), 2);
    EXPECT_LT(rel_err(caputo_numeric(op, PowerSum::monomial(4.0), 1.0).value, power_image(op, 5.0).coefficient), 1e-8);
}

TEST(Caputo, ConstantHasZeroDerivative) {
    const MSMParams op = with(kWorked, Side::Left, OpKind::Caputo);
    EXPECT_EQ(caputo_numeric(op, PowerSum::monomial(0.0, 3.0), 1.0).value, Complex(0.0, 0.0));
}

TEST(Caputo, MissingDerivative) {
    const MSMParams op = with(kWorked, Side::Left, OpKind::Caputo);
    const FunctionIntegrand f([](double t) { return Complex(std::exp(t), 0.0); });
    EXPECT_THROW(caputo_numeric(op, f, 1.0), MissingDerivativeError);
}

TEST(OperatorOracle, LemmaImagesSmallSweep) {
    Sampler s(314);
    for (OpKind kind : {OpKind::Integral, OpKind::Derivative, OpKind::Caputo}) {
        for (Side side : {Side::Left, Side::Right}) {
            for (int i = 0; i < 3; ++i) {
                const MSMParams op = draw_msm(s, side, kind);
                const double rho = draw_above(s, rho_lower_bound(op));
                const Comparison c = compare_power_image(op, rho, 1.0);
                EXPECT_LT(c.rel_error, kind == OpKind::Derivative ? 1e-4 : 1e-8)
                    << to_string(side) << " " << to_string(kind) << " " << i;
            }
        }
    }
}

TEST(SeriesLhs, ZeroOrderIsMonomial) {
    const WrightParams f{1.0, {{1.5, 1.0}}, {{2.0, 1.0}}};
    const PowerWeight w{2.0, 1.0, 0.7};
    const OperatorOracle oracle(kWorked);
    const Complex lhs = series_lhs_numeric(oracle, w, f, 1.0, 0);
    const Complex c0 = std::tgamma(1.5) / std::tgamma(2.0);
    EXPECT_LT(rel_err(lhs, c0 * power_image(kWorked, 2.0).coefficient), 1e-9);
}

TEST(SeriesLhs, ZeroArgumentIgnoresOrder) {
    const WrightParams f{1.0, {}, {}};
    const PowerWeight w{2.0, 1.0, 0.0};
    const OperatorOracle oracle(kWorked);
    const Complex c = power_image(kWorked, 2.0).coefficient * std::pow(1.3, power_image(kWorked, 2.0).exponent);
    for (unsigned n : {0u, 3u, 8u}) EXPECT_LT(rel_err(series_lhs_numeric(oracle, w, f, 1.3, n), c), 1e-9) << n;
}

TEST(SeriesLhs, Theorem31Truncated) {
    const WrightParams f{1.0, {}, {}};
    const PowerWeight w{2.0, 1.0, 0.5};
    const TransformedWright t = transform(kWorked, w, f);
    const Comparison c = compare_series(OperatorOracle(kWorked), t, w, f, 1.0, 5);
    EXPECT_LT(c.rel_error, 1e-6);
}

TEST(SeriesLhs, Theorem31FullValue) {
    // The whole series against the oracle on a truncation whose tail is below 1e-20.
    const WrightParams f{1.0, {}, {}};
    const PowerWeight w{2.0, 1.0, 0.5};
    const Complex full = evaluate_image(transform(kWorked, w, f), 1.0);
    const Complex lhs = series_lhs_numeric(OperatorOracle(kWorked), w, f, 1.0, 20);
    EXPECT_LT(rel_err(full, lhs), 1e-9);
    EXPECT_LT(rel_err(full, kTheorem31W), 1e-13);
}

TEST(Concurrency, OracleIsThreadSafe) {
    const OperatorOracle oracle(kWorked);
    const PowerSum f = PowerSum::monomial(1.0);
    const Complex want = oracle(f, 1.0).value;
    std::vector<std::thread> threads;
    std::vector<Complex> got(4);
    for (int i = 0; i < 4; ++i) threads.emplace_back([&, i] { got[i] = oracle(f, 1.0).value; });
    for (auto& t : threads) t.join();
    for (const Complex g : got) EXPECT_EQ(g, want);
}
