#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <mutex>
#include <vector>

#include "kwright/operators.hpp"
#include "kwright/quadrature.hpp"
#include "kwright/types.hpp"

namespace kwright {

/// Function of t > 0 handed to the numeric operators.
class Integrand {
public:
    virtual ~Integrand() = default;
    virtual Complex value(double t) const = 0;
    /// Same value in scaled form; override when t ranges over extreme magnitudes.
    virtual ScaledComplex scaled(double t) const { return ScaledComplex::from_value(value(t)); }
    virtual bool has_derivative() const { return false; }
    /// Exact order-th derivative; MissingDerivativeError unless has_derivative().
    virtual std::unique_ptr<Integrand> derivative(int order) const;
};

/// sum_j c_j t^(e_j): monomials and truncated K-Wright series with power weights.
class PowerSum : public Integrand {
public:
    struct Term {
        Complex coeff;
        Complex exponent;
    };

    PowerSum() = default;
    explicit PowerSum(std::vector<Term> terms) : terms_(std::move(terms)) {}
    static PowerSum monomial(Complex exponent, Complex coeff = 1.0) { return PowerSum({{coeff, exponent}}); }

    Complex value(double t) const override;
    ScaledComplex scaled(double t) const override;
    bool has_derivative() const override { return true; }
    std::unique_ptr<Integrand> derivative(int order) const override;

    PowerSum differentiated(int order) const;
    PowerSum operator+(const PowerSum& other) const;
    PowerSum operator*(Complex factor) const;
    const std::vector<Term>& terms() const { return terms_; }

private:
    std::vector<Term> terms_;
};

/// Wraps an arbitrary callable; no derivative available.
class FunctionIntegrand : public Integrand {
public:
    explicit FunctionIntegrand(std::function<Complex(double)> f) : f_(std::move(f)) {}
    Complex value(double t) const override { return f_(t); }

private:
    std::function<Complex(double)> f_;
};

struct OracleOptions {
    double tol = 1e-10;          // relative tolerance of the outer quadrature
    double kernel_tol = 1e-13;   // tolerance handed to the F3 / 2F1 kernel
    int max_level = 10;
    double fd_tol = 1e-6;        // relative tolerance of the Richardson sequence
    double fd_initial_step = 0.01;  // h0 = fd_initial_step * x
    double fd_step_floor = 1e-6;    // StepCollapseError below fd_step_floor * x
};

struct QuadratureReport {
    Complex value;
    double est_error = 0.0;
    std::size_t evaluations = 0;
    double truncation_T = std::numeric_limits<double>::infinity();
};

/// x^E / Gamma(c) * int_0^1 (1 - s)^(c-1) s^d K(s) f(x s^(+-1)) ds with the
/// kernel part tabulated once per quadrature level and reused across x and f.
/// For Re(c) < 1 the nodes are mapped by 1 - s = v^(1/Re(c)), which removes
/// the endpoint singularity at s = 1.
class KernelIntegral {
public:
    using Kernel = std::function<ScaledComplex(double s)>;

    KernelIntegral(Kernel kernel, Complex c, Complex d, Complex x_power, Side side, const OracleOptions& opt);
    KernelIntegral(KernelIntegral&& other) noexcept;

    QuadratureReport operator()(const Integrand& f, double x) const;
    Side side() const { return side_; }

private:
    struct Node {
        double s;
        ScaledComplex weight;  // (1 - s)^(c-1) s^d K(s) times the map's Jacobian
    };
    const std::vector<Node>& level(int l) const;

    Kernel kernel_;
    Complex c_, d_, x_power_;
    Complex inv_gamma_c_;
    double power_;
    Side side_;
    OracleOptions opt_;
    mutable std::mutex mutex_;
    mutable std::vector<std::unique_ptr<std::vector<Node>>> levels_;
};

/// Marichev-Saigo-Maeda integral by quadrature after t = x s (left) or t = x / s (right).
KernelIntegral msm_integral_oracle(const MSMParams& op, const OracleOptions& opt = {});
/// Saigo integral (2F1 kernel) by the same substitution.
KernelIntegral saigo_integral_oracle(const SaigoParams& op, const OracleOptions& opt = {});

QuadratureReport msm_integral_numeric(const MSMParams& op, const Integrand& f, double x, const OracleOptions& opt = {});
QuadratureReport saigo_integral_numeric(const SaigoParams& op, const Integrand& f, double x,
                                        const OracleOptions& opt = {});

/// Second route for the MSM integral: quadrature in t itself, split at x/2 on
/// the left and exp-sinh over t - x on the right.
QuadratureReport msm_integral_numeric_direct(const MSMParams& op, const Integrand& f, double x,
                                             const OracleOptions& opt = {});

/// Inner integral operators of the derivative definitions.
MSMParams msm_derivative_inner(const MSMParams& op);
SaigoParams saigo_derivative_inner(const SaigoParams& op);

/// m-th derivative in x of a smooth function by Richardson-extrapolated central
/// differences of order 4. Throws StepCollapseError below the step floor.
QuadratureReport differentiate(const std::function<Complex(double)>& g, int m, double x, const OracleOptions& opt);

/// Derivative operators: differences in x of the inner integral, sign (-1)^m on the right.
class DerivativeOracle {
public:
    DerivativeOracle(KernelIntegral inner, int m, const OracleOptions& opt);
    QuadratureReport operator()(const Integrand& f, double x) const;

private:
    KernelIntegral inner_;
    int m_;
    OracleOptions opt_;
};

/// Caputo operators: inner integral applied to the exact m-th derivative of f.
class CaputoOracle {
public:
    CaputoOracle(KernelIntegral inner, int m, const OracleOptions& opt);
    QuadratureReport operator()(const Integrand& f, double x) const;

private:
    KernelIntegral inner_;
    int m_;
};

DerivativeOracle msm_derivative_oracle(const MSMParams& op, const OracleOptions& opt = {});
DerivativeOracle saigo_derivative_oracle(const SaigoParams& op, const OracleOptions& opt = {});
CaputoOracle msm_caputo_oracle(const MSMParams& op, const OracleOptions& opt = {});
CaputoOracle saigo_caputo_oracle(const SaigoParams& op, const OracleOptions& opt = {});

QuadratureReport msm_derivative_numeric(const MSMParams& op, const Integrand& f, double x,
                                        const OracleOptions& opt = {});
QuadratureReport caputo_numeric(const MSMParams& op, const Integrand& f, double x, const OracleOptions& opt = {});

/// Any MSM / Saigo operator of any kind, dispatched to the matching oracle.
class OperatorOracle {
public:
    explicit OperatorOracle(const MSMParams& op, const OracleOptions& opt = {});
    explicit OperatorOracle(const SaigoParams& op, const OracleOptions& opt = {});
    explicit OperatorOracle(const EKParams& op, const OracleOptions& opt = {});
    QuadratureReport operator()(const Integrand& f, double x) const;
    Side side() const { return side_; }

private:
    Side side_;
    std::function<QuadratureReport(const Integrand&, double)> run_;
};

/// Power-weighted truncated series t^(rho/k-1) sum_{n<=N} c_n (a t^(mu/k))^n
/// (left) or t^(-rho/k) sum_{n<=N} c_n (a t^(-mu/k))^n (right).
PowerSum truncated_series_integrand(Side side, const PowerWeight& w, const WrightParams& f, unsigned order);

/// Operator applied numerically to the truncated weighted series as one integrand.
Complex series_lhs_numeric(const OperatorOracle& oracle, const PowerWeight& w, const WrightParams& f, double x,
                           unsigned order);

/// Closed form truncated consistently: terms n = 0..order of the transformed series.
Complex evaluate_image_truncated(const TransformedWright& t, double x, unsigned order);

}  // namespace kwright
