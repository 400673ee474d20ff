#include "kwright/oracle.hpp"

#include <cmath>
#include <sstream>

#include "kwright/gamma.hpp"
#include "kwright/hypergeometric.hpp"

namespace kwright {

std::unique_ptr<Integrand> Integrand::derivative(int) const {
    throw MissingDerivativeError("integrand has no exact derivative");
}

// ---------------------------------------------------------------------------
// PowerSum

ScaledComplex PowerSum::scaled(double t) const {
    const double lt = std::log(t);
    ScaledComplex sum;
    for (const auto& term : terms_) {
        if (term.coeff == Complex(0.0, 0.0)) continue;
        ScaledComplex v = ScaledComplex::from_log(term.exponent * lt);
        v *= term.coeff;
        sum += v;
    }
    return sum;
}

Complex PowerSum::value(double t) const { return scaled(t).value(); }

PowerSum PowerSum::differentiated(int order) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& term : terms_) {
        Complex c = term.coeff;
        for (int j = 0; j < order; ++j) c *= term.exponent - static_cast<double>(j);
        if (c == Complex(0.0, 0.0)) continue;
        out.push_back({c, term.exponent - static_cast<double>(order)});
    }
    return PowerSum(std::move(out));
}

std::unique_ptr<Integrand> PowerSum::derivative(int order) const {
    return std::make_unique<PowerSum>(differentiated(order));
}

PowerSum PowerSum::operator+(const PowerSum& other) const {
    std::vector<Term> out = terms_;
    out.insert(out.end(), other.terms_.begin(), other.terms_.end());
    return PowerSum(std::move(out));
}

PowerSum PowerSum::operator*(Complex factor) const {
    std::vector<Term> out = terms_;
    for (auto& t : out) t.coeff *= factor;
    return PowerSum(std::move(out));
}

// ---------------------------------------------------------------------------
// KernelIntegral

KernelIntegral::KernelIntegral(Kernel kernel, Complex c, Complex d, Complex x_power, Side side,
                               const OracleOptions& opt)
    : kernel_(std::move(kernel)),
      c_(c),
      d_(d),
      x_power_(x_power),
      inv_gamma_c_(rgamma(c)),
      power_(c.real() < 1.0 ? 1.0 / c.real() : 1.0),
      side_(side),
      opt_(opt) {
    if (!(c.real() > 0.0)) throw PreconditionError("numeric integral: order must have positive real part");
}

KernelIntegral::KernelIntegral(KernelIntegral&& o) noexcept
    : kernel_(std::move(o.kernel_)),
      c_(o.c_),
      d_(o.d_),
      x_power_(o.x_power_),
      inv_gamma_c_(o.inv_gamma_c_),
      power_(o.power_),
      side_(o.side_),
      opt_(o.opt_),
      levels_(std::move(o.levels_)) {}

const std::vector<KernelIntegral::Node>& KernelIntegral::level(int l) const {
    std::lock_guard<std::mutex> lock(mutex_);
    if (static_cast<int>(levels_.size()) <= l) levels_.resize(l + 1);
    if (!levels_[l]) {
        const auto& nodes = DoubleExponentialRule::get(RuleKind::TanhSinhUnit).new_nodes(l);
        auto values = std::make_unique<std::vector<Node>>();
        values->reserve(nodes.size());
        const double p = power_;
        for (const auto& n : nodes) {
            // 1 - s = v^p with v the rule node; log v taken from the accurate side.
            const double log_v = n.x <= 0.5 ? std::log(n.x) : std::log1p(-n.one_minus_x);
            const double log_u = p * log_v;
            const double s = p == 1.0 ? n.one_minus_x : -std::expm1(log_u);
            const double log_s = p == 1.0 ? std::log(n.one_minus_x) : std::log(s);
            Node node{s, {}};
            if (s > 0.0) {
                node.weight = ScaledComplex::from_log((c_ - 1.0) * log_u + d_ * log_s + std::log(p) + (p - 1.0) * log_v);
                node.weight *= kernel_(s);
            }
            values->push_back(node);
        }
        levels_[l] = std::move(values);
    }
    return *levels_[l];
}

QuadratureReport KernelIntegral::operator()(const Integrand& f, double x) const {
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("numeric integral: x must be positive");
    QuadratureOptions q;
    q.rel_tol = opt_.tol;
    q.max_level = opt_.max_level;
    const bool left = side_ == Side::Left;
    auto r = integrate_rule<ScaledComplex>(
        RuleKind::TanhSinhUnit,
        [&](const QuadNode&, int l, std::size_t i) {
            const Node& node = level(l)[i];
            if (node.weight.is_zero()) return node.weight;
            return node.weight * f.scaled(left ? x * node.s : x / node.s);
        },
        q);
    if (!r.converged) {
        std::ostringstream os;
        os << "numeric integral: quadrature did not reach rel tol " << opt_.tol << " (last change " << r.est_error
           << ")";
        throw NonConvergenceError(os.str());
    }
    ScaledComplex v = r.value;
    v *= ScaledComplex::from_log(x_power_ * std::log(x));
    v *= inv_gamma_c_;
    QuadratureReport out;
    out.value = v.value();
    if (!is_finite(out.value)) throw OverflowError("numeric integral: value overflows");
    out.est_error = r.est_error * std::abs(out.value);
    out.evaluations = r.evaluations;
    out.truncation_T = std::numeric_limits<double>::infinity();
    return out;
}

// ---------------------------------------------------------------------------
// Concrete integral oracles

namespace {

KernelIntegral::Kernel f3_kernel(const MSMParams& op, double tol) {
    auto k = std::make_shared<F3Kernel>(
        AppellF3Params{op.alpha, op.alpha_prime, op.beta, op.beta_prime, op.gamma}, tol);
    return [k](double s) { return (*k)(s); };
}

KernelIntegral::Kernel gauss_kernel(const SaigoParams& op, double tol) {
    auto h = std::make_shared<Hyp2F1>(op.alpha + op.beta, -op.gamma, op.alpha, tol);
    return [h](double s) { return (*h)(1.0 - s, s); };
}

void require_kind(OpKind got, OpKind want, const char* where) {
    if (got != want) throw DomainError(std::string(where) + ": operator kind mismatch");
}

}  // namespace

KernelIntegral msm_integral_oracle(const MSMParams& op, const OracleOptions& opt) {
    if (!(op.gamma.real() > 0.0)) throw PreconditionError("MSM integral oracle: requires Re(gamma) > 0");
    const Complex xp = op.gamma - op.alpha - op.alpha_prime;
    if (op.side == Side::Left) {
        return KernelIntegral(f3_kernel(op, opt.kernel_tol), op.gamma, -op.alpha_prime, xp, Side::Left, opt);
    }
    return KernelIntegral(f3_kernel(op, opt.kernel_tol), op.gamma, op.alpha - op.gamma - 1.0, xp, Side::Right, opt);
}

KernelIntegral saigo_integral_oracle(const SaigoParams& op, const OracleOptions& opt) {
    if (!(op.alpha.real() > 0.0)) throw PreconditionError("Saigo integral oracle: requires Re(alpha) > 0");
    const Complex d = op.side == Side::Left ? Complex(0.0, 0.0) : op.beta - 1.0;
    return KernelIntegral(gauss_kernel(op, opt.kernel_tol), op.alpha, d, -op.beta, op.side, opt);
}

QuadratureReport msm_integral_numeric(const MSMParams& op, const Integrand& f, double x, const OracleOptions& opt) {
    require_kind(op.kind, OpKind::Integral, "msm_integral_numeric");
    return msm_integral_oracle(op, opt)(f, x);
}

QuadratureReport saigo_integral_numeric(const SaigoParams& op, const Integrand& f, double x,
                                        const OracleOptions& opt) {
    require_kind(op.kind, OpKind::Integral, "saigo_integral_numeric");
    return saigo_integral_oracle(op, opt)(f, x);
}

QuadratureReport msm_integral_numeric_direct(const MSMParams& op, const Integrand& f, double x,
                                             const OracleOptions& opt) {
    require_kind(op.kind, OpKind::Integral, "msm_integral_numeric_direct");
    if (!(op.gamma.real() > 0.0)) throw PreconditionError("MSM integral oracle: requires Re(gamma) > 0");
    if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("numeric integral: x must be positive");
    const F3Kernel kernel(AppellF3Params{op.alpha, op.alpha_prime, op.beta, op.beta_prime, op.gamma}, opt.kernel_tol);
    const Complex g1 = op.gamma - 1.0;
    QuadratureOptions q;
    q.rel_tol = opt.tol;
    q.max_level = opt.max_level;

    QuadratureReport out;
    ScaledComplex total;
    auto finish = [&](const QuadratureResult<ScaledComplex>& r) {
        if (!r.converged) throw NonConvergenceError("direct numeric integral: quadrature did not converge");
        total += r.value;
        out.evaluations += r.evaluations;
        out.est_error += r.est_error;
    };

    if (op.side == Side::Left) {
        // x^-alpha / Gamma(gamma) int_0^x (x - t)^(gamma-1) t^-alpha' F3(1 - t/x, 1 - x/t) f(t) dt
        const double half = 0.5 * x;
        auto piece = [&](double t, double x_minus_t) {
            ScaledComplex v = ScaledComplex::from_log(g1 * std::log(x_minus_t) - op.alpha_prime * std::log(t));
            v *= kernel(t / x);
            return v * f.scaled(t);
        };
        finish(integrate_unit<ScaledComplex>([&](double u, double) { return piece(half * u, x - half * u); }, q));
        finish(integrate_unit<ScaledComplex>(
            [&](double, double omu) { return piece(x - half * omu, half * omu); }, q));
        total *= Complex(half, 0.0);
        total *= ScaledComplex::from_log(-op.alpha * std::log(x));
        out.truncation_T = x;
    } else {
        // x^-alpha' / Gamma(gamma) int_x^inf (t - x)^(gamma-1) t^-alpha F3(1 - x/t, 1 - t/x) f(t) dt, u = t - x
        finish(integrate_half_line<ScaledComplex>(
            [&](double u) {
                const double t = x + u;
                ScaledComplex v = ScaledComplex::from_log(g1 * std::log(u) - op.alpha * std::log(t));
                v *= kernel(x / t);
                return v * f.scaled(t);
            },
            q));
        total *= ScaledComplex::from_log(-op.alpha_prime * std::log(x));
        out.truncation_T = std::numeric_limits<double>::infinity();
    }
    total *= rgamma(op.gamma);
    out.value = total.value();
    out.est_error *= std::abs(out.value);
    return out;
}

// ---------------------------------------------------------------------------
// Derivatives

MSMParams msm_derivative_inner(const MSMParams& op) {
    const double m = op.m();
    if (op.side == Side::Left) {
        return {-op.alpha_prime, -op.alpha, -op.beta_prime + m, -op.beta, -op.gamma + m, Side::Left,
                OpKind::Integral};
    }
    return {-op.alpha_prime, -op.alpha, -op.beta_prime, -op.beta + m, -op.gamma + m, Side::Right, OpKind::Integral};
}

SaigoParams saigo_derivative_inner(const SaigoParams& op) {
    const double m = op.m();
    if (op.side == Side::Left) return {-op.alpha + m, -op.beta - m, op.alpha + op.gamma - m, Side::Left, OpKind::Integral};
    return {-op.alpha + m, -op.beta - m, op.alpha + op.gamma, Side::Right, OpKind::Integral};
}

namespace {

// Fornberg weights for the m-th derivative at 0 on the grid -p..p.
std::vector<double> central_weights(int m, int p) {
    const int n = 2 * p + 1;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = i - p;
    // c[j][k]: weight of node j for derivative k.
    std::vector<std::vector<double>> c(n, std::vector<double>(m + 1, 0.0));
    c[0][0] = 1.0;
    double c1 = 1.0;
    for (int i = 1; i < n; ++i) {
        double c2 = 1.0;
        const int mn = std::min(i, m);
        for (int j = 0; j < i; ++j) {
            const double c3 = grid[i] - grid[j];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k) c[i][k] = c1 * (k * c[i - 1][k - 1] - grid[i - 1] * c[i - 1][k]) / c2;
                c[i][0] = -c1 * grid[i - 1] * c[i - 1][0] / c2;
            }
            for (int k = mn; k >= 1; --k) c[j][k] = (grid[i] * c[j][k] - k * c[j][k - 1]) / c3;
            c[j][0] = grid[i] * c[j][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = c[i][m];
    return w;
}

}  // namespace

QuadratureReport differentiate(const std::function<Complex(double)>& g, int m, double x, const OracleOptions& opt) {
    if (m < 0) throw DomainError("differentiate: negative order");
    QuadratureReport out;
    if (m == 0) {
        out.value = g(x);
        out.evaluations = 1;
        return out;
    }
    const int p = (m + 1) / 2 + 1;
    const std::vector<double> w = central_weights(m, p);
    auto stencil = [&](double h) {
        Complex acc(0.0, 0.0);
        for (int j = -p; j <= p; ++j) {
            const double wj = w[j + p];
            if (wj == 0.0) continue;
            acc += wj * g(x + j * h);
            ++out.evaluations;
        }
        return acc / std::pow(h, m);
    };

    const double scale = std::abs(g(x)) / std::pow(x, m);
    const double floor = opt.fd_step_floor * x;
    double h = opt.fd_initial_step * x;
    Complex d_prev = stencil(h);
    Complex r_prev(0.0, 0.0);
    bool have_r = false;
    while (h * 0.5 >= floor) {
        h *= 0.5;
        const Complex d = stencil(h);
        const Complex r = (16.0 * d - d_prev) / 15.0;
        if (have_r) {
            const double diff = std::abs(r - r_prev);
            if (diff <= opt.fd_tol * std::max(std::abs(r), scale)) {
                out.value = r;
                out.est_error = diff;
                return out;
            }
        }
        r_prev = r;
        have_r = true;
        d_prev = d;
    }
    std::ostringstream os;
    os << "finite difference of order " << m << " at x=" << x << " did not reach rel tol " << opt.fd_tol
       << " before step floor " << floor;
    throw StepCollapseError(os.str());
}

DerivativeOracle::DerivativeOracle(KernelIntegral inner, int m, const OracleOptions& opt)
    : inner_(std::move(inner)), m_(m), opt_(opt) {}

QuadratureReport DerivativeOracle::operator()(const Integrand& f, double x) const {
    std::size_t evals = 0;
    auto g = [&](double y) {
        const QuadratureReport r = inner_(f, y);
        evals += r.evaluations;
        return r.value;
    };
    QuadratureReport out = differentiate(g, m_, x, opt_);
    if (inner_.side() == Side::Right && (m_ % 2 == 1)) out.value = -out.value;
    out.evaluations = evals;
    return out;
}

CaputoOracle::CaputoOracle(KernelIntegral inner, int m, const OracleOptions&) : inner_(std::move(inner)), m_(m) {}

QuadratureReport CaputoOracle::operator()(const Integrand& f, double x) const {
    if (!f.has_derivative()) throw MissingDerivativeError("Caputo oracle: integrand has no exact derivative");
    const std::unique_ptr<Integrand> df = f.derivative(m_);
    QuadratureReport out = inner_(*df, x);
    if (inner_.side() == Side::Right && (m_ % 2 == 1)) out.value = -out.value;
    return out;
}

DerivativeOracle msm_derivative_oracle(const MSMParams& op, const OracleOptions& opt) {
    return DerivativeOracle(msm_integral_oracle(msm_derivative_inner(op), opt), op.m(), opt);
}

DerivativeOracle saigo_derivative_oracle(const SaigoParams& op, const OracleOptions& opt) {
    return DerivativeOracle(saigo_integral_oracle(saigo_derivative_inner(op), opt), op.m(), opt);
}

CaputoOracle msm_caputo_oracle(const MSMParams& op, const OracleOptions& opt) {
    return CaputoOracle(msm_integral_oracle(msm_derivative_inner(op), opt), op.m(), opt);
}

CaputoOracle saigo_caputo_oracle(const SaigoParams& op, const OracleOptions& opt) {
    return CaputoOracle(saigo_integral_oracle(saigo_derivative_inner(op), opt), op.m(), opt);
}

QuadratureReport msm_derivative_numeric(const MSMParams& op, const Integrand& f, double x,
                                        const OracleOptions& opt) {
    require_kind(op.kind, OpKind::Derivative, "msm_derivative_numeric");
    return msm_derivative_oracle(op, opt)(f, x);
}

QuadratureReport caputo_numeric(const MSMParams& op, const Integrand& f, double x, const OracleOptions& opt) {
    require_kind(op.kind, OpKind::Caputo, "caputo_numeric");
    return msm_caputo_oracle(op, opt)(f, x);
}

// ---------------------------------------------------------------------------
// Dispatch

namespace {

template <typename Oracle>
std::function<QuadratureReport(const Integrand&, double)> wrap(Oracle o) {
    auto shared = std::make_shared<Oracle>(std::move(o));
    return [shared](const Integrand& f, double x) { return (*shared)(f, x); };
}

}  // namespace

OperatorOracle::OperatorOracle(const MSMParams& op, const OracleOptions& opt) : side_(op.side) {
    switch (op.kind) {
        case OpKind::Integral: run_ = wrap(msm_integral_oracle(op, opt)); break;
        case OpKind::Derivative: run_ = wrap(msm_derivative_oracle(op, opt)); break;
        case OpKind::Caputo: run_ = wrap(msm_caputo_oracle(op, opt)); break;
    }
}

OperatorOracle::OperatorOracle(const SaigoParams& op, const OracleOptions& opt) : side_(op.side) {
    switch (op.kind) {
        case OpKind::Integral: run_ = wrap(saigo_integral_oracle(op, opt)); break;
        case OpKind::Derivative: run_ = wrap(saigo_derivative_oracle(op, opt)); break;
        case OpKind::Caputo: run_ = wrap(saigo_caputo_oracle(op, opt)); break;
    }
}

OperatorOracle::OperatorOracle(const EKParams& op, const OracleOptions& opt) : OperatorOracle(op.as_saigo(), opt) {}

QuadratureReport OperatorOracle::operator()(const Integrand& f, double x) const { return run_(f, x); }

// ---------------------------------------------------------------------------
// Truncated series

PowerSum truncated_series_integrand(Side side, const PowerWeight& w, const WrightParams& f, unsigned order) {
    f.validate();
    const double k = f.k;
    const double sign = side == Side::Left ? 1.0 : -1.0;
    const Complex base = side == Side::Left ? w.rho / k - 1.0 : -w.rho / k;
    std::vector<PowerSum::Term> terms;
    for (unsigned n = 0; n <= order; ++n) {
        if (n > 0 && w.a == Complex(0.0, 0.0)) break;
        const Complex an = n == 0 ? Complex(1.0, 0.0) : std::pow(w.a, static_cast<double>(n));
        const Complex c = std::exp(log_term_coefficient(f, n)) * an;
        terms.push_back({c, base + sign * static_cast<double>(n) * w.mu / k});
    }
    return PowerSum(std::move(terms));
}

Complex series_lhs_numeric(const OperatorOracle& oracle, const PowerWeight& w, const WrightParams& f, double x,
                           unsigned order) {
    const PowerSum integrand = truncated_series_integrand(oracle.side(), w, f, order);
    return oracle(integrand, x).value;
}

Complex evaluate_image_truncated(const TransformedWright& t, double x, unsigned order) {
    if (!(x > 0.0)) throw DomainError("evaluate_image_truncated: x must be positive");
    const double k = t.params.k;
    const Complex z = t.a * std::pow(x, t.argument_sign * t.mu / k);
    const Complex scale = std::exp(t.prefactor_k_exp * std::log(k) + t.x_exponent * std::log(x));
    return scale * kwright_partial_sum(t.params, z, order + 1);
}

}  // namespace kwright
