#include "kwright/hypergeometric.hpp"

#include <array>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "kwright/gamma.hpp"
#include "kwright/quadrature.hpp"

namespace kwright {

namespace {

// Beyond this the direct series is replaced by the expansion around z = 1.
constexpr double kDirectLimit = 0.75;
// c - a - b closer than this to an integer makes the connection
// coefficients singular; such cases are averaged over shifted c.
constexpr double kDegenerateGap = 2e-4;
constexpr double kShift = 4e-4;
// The kernel integral subtracts its Mellin zero once min(Re a', Re b') exceeds
// Re(g - l) by this much.
constexpr double kTailSwitch = 0.02;
constexpr double kKernelRoundingCap = 1e-8;

double integer_gap(Complex z) {
    return std::hypot(z.real() - std::nearbyint(z.real()), z.imag());
}

bool is_zero(Complex z) { return z == Complex(0.0, 0.0); }

// A term counts as small once the geometric tail it starts is below tol * |sum|.
bool tail_small(Complex term, Complex ratio, Complex sum, double tol) {
    const double q = std::abs(ratio);
    return q < 1.0 && std::abs(term) <= tol * (1.0 - q) * std::abs(sum);
}

[[noreturn]] void throw_nonconvergence(const char* what, int cap) {
    std::ostringstream os;
    os << what << ": no convergence within " << cap << " terms";
    throw NonConvergenceError(os.str());
}

// exp(w) - 1 without cancellation for small |w|.
Complex expm1(Complex w) {
    const double sh = std::sin(0.5 * w.imag());
    return {std::expm1(w.real()) * std::cos(w.imag()) - 2.0 * sh * sh, std::exp(w.real()) * std::sin(w.imag())};
}

// Gauss series difference F(u1) - F(u0), u1 = u0 + du with du known accurately;
// built from u1^n - u0^n = u1 (u1^(n-1) - u0^(n-1)) + u0^(n-1) du.
Complex hyp2f1_series_diff(Complex a, Complex b, Complex c, double u0, double du, double tol, int term_cap) {
    // Far below the double spacing the difference is du times the derivative;
    // summing that keeps the stop rule out of the subnormal range.
    const bool linear = std::abs(du) < 1e-200;
    const double scale = linear ? du : 1.0;
    if (linear) du = 1.0;
    const double u1 = linear ? u0 : u0 + du;
    const double umax = std::max(std::abs(u0), std::abs(u1));
    if (!(umax < 1.0)) throw DomainError("2F1: series needs |z| < 1");
    Complex coeff(1.0, 0.0);
    double pow_diff = 0.0;  // u1^n - u0^n
    double pow0 = 1.0;      // u0^n
    Complex sum(0.0, 0.0);
    int small = 0;
    for (int n = 0; n < term_cap; ++n) {
        const double dn = n;
        const Complex ratio = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0));
        coeff *= ratio;
        if (is_zero(coeff)) return sum * scale;
        pow_diff = u1 * pow_diff + pow0 * du;
        pow0 *= u0;
        const Complex term = coeff * pow_diff;
        sum += term;
        if (tail_small(term, ratio * umax, sum, tol) || pow_diff == 0.0) {
            if (++small >= 3) return sum * scale;
        } else {
            small = 0;
        }
    }
    throw_nonconvergence("2F1 series difference", term_cap);
}

}  // namespace

Complex hyp2f1_series(Complex a, Complex b, Complex c, Complex z, double tol, int term_cap) {
    if (near_nonpositive_integer(c)) throw DomainError("2F1: c is a nonpositive integer");
    if (std::abs(z) >= 1.0) throw DomainError("2F1: series needs |z| < 1");
    Complex term(1.0, 0.0);
    Complex sum(1.0, 0.0);
    int small = 0;
    for (int n = 0; n < term_cap; ++n) {
        const double dn = n;
        const Complex ratio = (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
        term *= ratio;
        if (is_zero(term)) return sum;
        sum += term;
        if (tail_small(term, ratio, sum, tol)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
    }
    throw_nonconvergence("2F1 series", term_cap);
}

// ---------------------------------------------------------------------------
// Real-argument evaluation on [0, 1).

class Hyp2F1::Branch {
public:
    Branch(Complex a, Complex b, Complex c, double tol) : a_(a), b_(b), c_(c), tol_(tol) {
        if (near_nonpositive_integer(c)) throw DomainError("2F1: c is a nonpositive integer");
        const bool ta = near_nonpositive_integer(a);
        const bool tb = near_nonpositive_integer(b);
        if (tb && (!ta || b.real() > a.real())) std::swap(a_, b_);
        if (ta || tb) {
            terminating_ = true;
            return;
        }
        e_ = c_ - a_ - b_;
        if (integer_gap(e_) < kDegenerateGap) {
            for (double d : {kShift, -kShift, 2.0 * kShift, -2.0 * kShift, 3.0 * kShift, -3.0 * kShift}) {
                shifted_.emplace_back(a_, b_, c_ + d, tol);
            }
            return;
        }
        const Complex lg_c = log_gamma(c_);
        if (!near_nonpositive_integer(c_ - a_) && !near_nonpositive_integer(c_ - b_)) {
            a1_ = ScaledComplex::from_log(lg_c + log_gamma(e_) - log_gamma(c_ - a_) - log_gamma(c_ - b_));
        }
        a2_ = ScaledComplex::from_log(lg_c + log_gamma(-e_) - log_gamma(a_) - log_gamma(b_));
    }

    ScaledComplex eval(double z, double omz) const { return eval(z, omz, std::log(omz)); }

    // log_omz stays finite when 1 - z itself underflows.
    ScaledComplex eval(double z, double omz, double log_omz) const {
        if (terminating_) return ScaledComplex::from_value(polynomial(z));
        if (z <= kDirectLimit) return ScaledComplex::from_value(hyp2f1_series(a_, b_, c_, z, tol_));
        if (!shifted_.empty()) {
            return richardson([&](const Branch& b) { return b.eval(z, omz, log_omz); });
        }
        ScaledComplex first;
        if (!a1_.is_zero()) {
            first = a1_ * hyp2f1_series(a_, b_, 1.0 - e_, omz, tol_);
        }
        ScaledComplex second = a2_ * ScaledComplex::from_log(e_ * log_omz);
        second *= hyp2f1_series(c_ - a_, c_ - b_, 1.0 + e_, omz, tol_);
        return first + second;
    }

    // F(1 - omz0 - delta) - F(1 - omz0) for omz0, omz0 + delta in (0, 1].
    ScaledComplex difference(double omz0, double delta) const {
        const double omz1 = omz0 + delta;
        const double z0 = 1.0 - omz0;
        const double z1 = 1.0 - omz1;
        if (terminating_) return ScaledComplex::from_value(polynomial_diff(z0, -delta));
        if (z0 <= kDirectLimit && z1 <= kDirectLimit) {
            return ScaledComplex::from_value(hyp2f1_series_diff(a_, b_, c_, z0, -delta, tol_, kHypergeometricTermCap));
        }
        if (!shifted_.empty()) {
            return richardson([&](const Branch& b) { return b.difference(omz0, delta); });
        }
        if (z0 <= kDirectLimit || z1 <= kDirectLimit) {
            return eval(z1, omz1) + eval(z0, omz0) * Complex(-1.0, 0.0);
        }
        ScaledComplex first;
        if (!a1_.is_zero()) {
            first = a1_ * hyp2f1_series_diff(a_, b_, 1.0 - e_, omz0, delta, tol_, kHypergeometricTermCap);
        }
        // omz1^e G(omz1) - omz0^e G(omz0) = omz0^e [expm1(e log(omz1/omz0)) G(omz1) + G(omz1) - G(omz0)].
        const Complex ca = c_ - a_, cb = c_ - b_, ce = 1.0 + e_;
        const Complex g1 = hyp2f1_series(ca, cb, ce, omz1, tol_);
        ScaledComplex second;
        if (std::abs(delta) <= omz0) {
            const Complex dg = hyp2f1_series_diff(ca, cb, ce, omz0, delta, tol_, kHypergeometricTermCap);
            second = a2_ * ScaledComplex::from_log(e_ * std::log(omz0));
            second *= expm1(e_ * std::log1p(delta / omz0)) * g1 + dg;
        } else {
            // The two powers differ by more than a factor 2^Re(e): no cancellation to avoid.
            second = ScaledComplex::from_log(e_ * std::log(omz1)) * g1;
            second += ScaledComplex::from_log(e_ * std::log(omz0)) * -hyp2f1_series(ca, cb, ce, omz0, tol_);
            second *= a2_;
        }
        return first + second;
    }

private:
    // a_ is a nonpositive integer: the series is a polynomial of degree -a_.
    Complex polynomial(double z) const {
        const int degree = static_cast<int>(std::nearbyint(-a_.real()));
        Complex term(1.0, 0.0), sum(1.0, 0.0);
        for (int n = 0; n < degree; ++n) {
            const double dn = n;
            term *= (a_ + dn) * (b_ + dn) / ((c_ + dn) * (dn + 1.0)) * z;
            sum += term;
        }
        return sum;
    }

    // polynomial(u0 + du) - polynomial(u0), same power recurrence as hyp2f1_series_diff.
    Complex polynomial_diff(double u0, double du) const {
        const int degree = static_cast<int>(std::nearbyint(-a_.real()));
        const double u1 = u0 + du;
        Complex coeff(1.0, 0.0), sum(0.0, 0.0);
        double pow_diff = 0.0, pow0 = 1.0;
        for (int n = 0; n < degree; ++n) {
            const double dn = n;
            coeff *= (a_ + dn) * (b_ + dn) / ((c_ + dn) * (dn + 1.0));
            pow_diff = u1 * pow_diff + pow0 * du;
            pow0 *= u0;
            sum += coeff * pow_diff;
        }
        return sum;
    }

    // Central averages at c +- d, 2d, 3d combined to cancel the h^2 and h^4 terms.
    template <class F>
    ScaledComplex richardson(F&& value) const {
        static constexpr double w[] = {0.75, -0.3, 0.05};
        ScaledComplex out;
        for (int i = 0; i < 3; ++i) {
            out += (value(shifted_[2 * i]) + value(shifted_[2 * i + 1])) * Complex(w[i], 0.0);
        }
        return out;
    }

    Complex a_, b_, c_;
    double tol_;
    bool terminating_ = false;
    Complex e_;
    ScaledComplex a1_, a2_;
    std::vector<Branch> shifted_;
};

Hyp2F1::Hyp2F1(Complex a, Complex b, Complex c, double tol) {
    if (near_nonpositive_integer(b) && !near_nonpositive_integer(a)) std::swap(a, b);
    a_ = a;
    direct_ = std::make_unique<Branch>(a, b, c, tol);
    pfaff_ = std::make_unique<Branch>(a, c - b, c, tol);
}

Hyp2F1::~Hyp2F1() = default;
Hyp2F1::Hyp2F1(Hyp2F1&&) noexcept = default;
Hyp2F1& Hyp2F1::operator=(Hyp2F1&&) noexcept = default;

ScaledComplex Hyp2F1::operator()(double z, double one_minus_z) const {
    // z itself may round to 1 when 1 - z is below the double spacing at 1.
    if (!(z <= 1.0) || !(one_minus_z > 0.0)) throw DomainError("2F1: real argument must be below 1");
    if (z < 0.0) {
        // Pfaff: F(a,b;c;z) = (1-z)^-a F(a, c-b; c; z/(z-1)).
        ScaledComplex out = ScaledComplex::from_log(-a_ * std::log(one_minus_z));
        out *= pfaff_->eval(-z / one_minus_z, 1.0 / one_minus_z);
        return out;
    }
    return direct_->eval(z, one_minus_z);
}

ScaledComplex Hyp2F1::difference(double one_minus_z0, double delta) const {
    const double omz1 = one_minus_z0 + delta;
    if (!(one_minus_z0 > 0.0 && one_minus_z0 <= 1.0 && omz1 > 0.0 && omz1 <= 1.0)) {
        throw DomainError("2F1: difference needs both arguments in [0, 1)");
    }
    return direct_->difference(one_minus_z0, delta);
}

ScaledComplex Hyp2F1::near_one(double log_one_minus_z) const {
    if (!(log_one_minus_z < std::log(1.0 - kDirectLimit))) throw DomainError("2F1: near_one needs z close to 1");
    const double omz = std::exp(log_one_minus_z);
    return direct_->eval(1.0 - omz, omz, log_one_minus_z);
}

Complex gauss_2f1(const Gauss2F1Params& p, Complex z, double tol) {
    if (!(tol > 0.0)) throw DomainError("2F1: tol must be positive");
    if (near_nonpositive_integer(p.gamma)) throw DomainError("2F1: c is a nonpositive integer");
    if (is_zero(z)) return {1.0, 0.0};
    if (z.imag() == 0.0) {
        if (!(z.real() < 1.0)) throw DomainError("2F1: real argument must be below 1");
        return Hyp2F1(p.alpha, p.beta, p.gamma, tol)(z.real()).value();
    }
    if (std::abs(z) >= 1.0) throw DomainError("2F1: |z| must be below 1");
    const Complex w = z / (z - 1.0);
    if (std::abs(w) < std::abs(z)) {
        return std::pow(1.0 - z, -p.alpha) * hyp2f1_series(p.alpha, p.gamma - p.beta, p.gamma, w, tol);
    }
    return hyp2f1_series(p.alpha, p.beta, p.gamma, z, tol);
}

Complex appell_f3(const AppellF3Params& p, Complex x, Complex y, double tol, int term_cap) {
    if (!(tol > 0.0)) throw DomainError("F3: tol must be positive");
    if (near_nonpositive_integer(p.gamma)) throw DomainError("F3: gamma is a nonpositive integer");
    if (std::abs(x) >= 1.0) throw DomainError("F3: |x| must be below 1");
    const bool real_negative_y = y.imag() == 0.0 && y.real() <= 0.0;
    if (!real_negative_y && std::abs(y) >= 1.0) throw DomainError("F3: y outside the served region");

    auto inner = [&](Complex c) -> Complex {
        if (real_negative_y) return Hyp2F1(p.alpha_prime, p.beta_prime, c, tol)(y.real()).value();
        return hyp2f1_series(p.alpha_prime, p.beta_prime, c, y, tol);
    };

    Complex coeff(1.0, 0.0);
    Complex sum = inner(p.gamma);
    int small = 0;
    for (int m = 0; m < term_cap; ++m) {
        const double dm = m;
        const Complex ratio = (p.alpha + dm) * (p.beta + dm) / ((p.gamma + dm) * (dm + 1.0)) * x;
        coeff *= ratio;
        if (is_zero(coeff)) return sum;
        const Complex term = coeff * inner(p.gamma + dm + 1.0);
        sum += term;
        if (tail_small(term, ratio, sum, tol)) {
            if (++small >= 3) return sum;
        } else {
            small = 0;
        }
    }
    throw_nonconvergence("F3 series", term_cap);
}

// ---------------------------------------------------------------------------
// Kernel on the curve (1 - s, 1 - 1/s).

struct F3Kernel::Impl {
    enum class Mode { General, OnlyX, OnlyY, Unit };
    Mode mode = Mode::General;
    std::unique_ptr<Hyp2F1> reduced;  // OnlyX / OnlyY

    bool integral_ready = false;
    Complex lambda;
    Complex norm;
    std::unique_ptr<Hyp2F1> fa;  // 2F1(a, b; l; .)
    std::unique_ptr<Hyp2F1> fb;  // Pfaff image of 2F1(a', b'; g - l; .)
};

F3Kernel::F3Kernel(const AppellF3Params& p, double tol) : p_(p), tol_(tol), impl_(std::make_unique<Impl>()) {
    if (near_nonpositive_integer(p.gamma)) throw DomainError("F3: gamma is a nonpositive integer");
    const bool x_dead = is_zero(p.alpha) || is_zero(p.beta);
    const bool y_dead = is_zero(p.alpha_prime) || is_zero(p.beta_prime);
    if (x_dead && y_dead) {
        impl_->mode = Impl::Mode::Unit;
    } else if (y_dead) {
        impl_->mode = Impl::Mode::OnlyX;
        impl_->reduced = std::make_unique<Hyp2F1>(p.alpha, p.beta, p.gamma, tol);
    } else if (x_dead) {
        // 2F1(a', b'; g; 1 - 1/s) = s^a' 2F1(a', g - b'; g; 1 - s).
        impl_->mode = Impl::Mode::OnlyY;
        impl_->reduced = std::make_unique<Hyp2F1>(p.alpha_prime, p.gamma - p.beta_prime, p.gamma, tol);
    }

    if (p.gamma.real() <= 0.0) return;
    // lambda = theta gamma with theta near 1/2. Avoided: lambda - alpha - beta
    // near an integer (degenerate 2F1 connection) and Re(alpha'), Re(beta')
    // near Re(gamma - lambda), where the r-tail switches between subtracted
    // and plain forms (see via_integral).
    double best = -1.0;
    for (double theta : {0.5, 0.45, 0.55, 0.4, 0.6, 0.35, 0.65, 0.3, 0.7, 0.25, 0.75}) {
        const Complex lam = theta * p.gamma;
        const double tail = std::min(p.alpha_prime.real(), p.beta_prime.real()) - (p.gamma - lam).real();
        const double score = std::min(integer_gap(lam - p.alpha - p.beta), std::abs(tail - kTailSwitch));
        if (score > best + 1e-9) {
            best = score;
            impl_->lambda = lam;
        }
        if (best >= 0.05) break;
    }
    const Complex lam = impl_->lambda;
    const Complex rest = p.gamma - lam;
    impl_->norm = std::exp(log_gamma(p.gamma) - log_gamma(lam) - log_gamma(rest));
    impl_->fa = std::make_unique<Hyp2F1>(p.alpha, p.beta, lam, tol);
    impl_->fb = std::make_unique<Hyp2F1>(p.alpha_prime, rest - p.beta_prime, rest, tol);
    impl_->integral_ready = true;
}

F3Kernel::~F3Kernel() = default;
F3Kernel::F3Kernel(F3Kernel&&) noexcept = default;
F3Kernel& F3Kernel::operator=(F3Kernel&&) noexcept = default;

ScaledComplex F3Kernel::operator()(double s) const {
    if (!(s > 0.0) || s > 1.0) throw DomainError("F3 kernel: s must lie in (0, 1]");
    switch (impl_->mode) {
        case Impl::Mode::Unit: return ScaledComplex::from_value({1.0, 0.0});
        case Impl::Mode::OnlyX: return (*impl_->reduced)(1.0 - s, s);
        case Impl::Mode::OnlyY: {
            ScaledComplex out = ScaledComplex::from_log(p_.alpha_prime * std::log(s));
            out *= (*impl_->reduced)(1.0 - s, s);
            return out;
        }
        case Impl::Mode::General: break;
    }
    if (s == 1.0) return ScaledComplex::from_value({1.0, 0.0});
    if (s >= kSeriesThreshold) return via_series(s);
    return via_integral(s);
}

ScaledComplex F3Kernel::via_series(double s, int term_cap) const {
    const double u = 1.0 - s;
    // Inner 2F1(a', b'; g + m; 1 - 1/s) = s^a' 2F1(a', g + m - b'; g + m; u).
    // The connection formula cancels badly once |c| is large, while the
    // direct series improves there, so large c always sums directly.
    auto inner = [&](Complex c) -> Complex {
        if (u <= kDirectLimit || std::abs(c) > 10.0) {
            return hyp2f1_series(p_.alpha_prime, c - p_.beta_prime, c, u, tol_, term_cap);
        }
        return Hyp2F1(p_.alpha_prime, c - p_.beta_prime, c, tol_)(u, s).value();
    };
    Complex coeff(1.0, 0.0);
    Complex sum = inner(p_.gamma);
    int small = 0;
    bool done = false;
    for (int m = 0; m < term_cap && !done; ++m) {
        const double dm = m;
        const Complex ratio = (p_.alpha + dm) * (p_.beta + dm) / ((p_.gamma + dm) * (dm + 1.0)) * u;
        coeff *= ratio;
        if (is_zero(coeff)) break;
        const Complex term = coeff * inner(p_.gamma + dm + 1.0);
        sum += term;
        if (tail_small(term, ratio, sum, tol_)) {
            done = ++small >= 3;
        } else {
            small = 0;
        }
        if (m + 1 == term_cap && !done) throw_nonconvergence("F3 kernel series", term_cap);
    }
    ScaledComplex out = ScaledComplex::from_log(p_.alpha_prime * std::log(s));
    out *= sum;
    return out;
}

ScaledComplex F3Kernel::via_integral(double s) const {
    if (!impl_->integral_ready) throw DomainError("F3 kernel: integral route needs Re(gamma) > 0");
    if (!(s > 0.0) || !(s < 0.5)) throw DomainError("F3 kernel: integral route needs s in (0, 1/2)");
    const Complex lam = impl_->lambda;
    const Complex gml = p_.gamma - lam;
    const double log_s = std::log(s);

    // Integrand h(tau) f(r) with tau + r = 1, both passed accurately:
    //   h = tau^(l-1) 2F1(a, b; l; x tau),  f = r^(g-l-1) 2F1(a', b'; g-l; y r).
    auto h = [&](double tau, double log_tau, double d) {
        ScaledComplex v = ScaledComplex::from_log((lam - 1.0) * log_tau);
        return v *= (*impl_->fa)((1.0 - s) * tau, d);
    };
    // f in terms of log r and t = log((1 - s) r / s); its Pfaff image has
    // argument z = 1 / (1 + e^-t) with 1 - z = s / (s + r - s r).
    const double log_1ms = std::log1p(-s);
    auto f = [&](double log_r) {
        const double t = log_1ms + log_r - log_s;
        const double log_omz = t > 0.0 ? -t - std::log1p(std::exp(-t)) : -std::log1p(std::exp(t));
        ScaledComplex v = ScaledComplex::from_log((gml - 1.0) * log_r + p_.alpha_prime * log_omz);
        if (log_omz < -30.0) return v *= impl_->fb->near_one(log_omz);
        const double z = t > 0.0 ? 1.0 / (1.0 + std::exp(-t)) : std::exp(t) / (1.0 + std::exp(t));
        return v *= (*impl_->fb)(z, std::exp(log_omz));
    };

    // When Re(a'), Re(b') > Re(g - l), int_0^inf r^(g-l-1) 2F1(a', b'; g-l; y r) dr
    // vanishes (its Mellin transform carries 1/Gamma(0)). Without using that, the
    // pieces below are of size s^(g-l) and cancel down to the much smaller result
    // as s -> 0. So on r < 1/2 the integrand uses h(tau) - h(1), and the removed
    // h(1) int_0^(1/2) f is added back as -h(1) int_(1/2)^inf f.
    const double tail_gap = std::min(p_.alpha_prime.real(), p_.beta_prime.real()) - gml.real();
    const bool subtract = tail_gap > kTailSwitch;
    const ScaledComplex h1 = (*impl_->fa)(1.0 - s, s);
    ScaledComplex minus_h1 = h1;
    minus_h1 *= Complex(-1.0, 0.0);
    // For small r the difference h(1 - r) - h(1) is formed without cancellation.
    auto near_r0 = [&](double r, double log_r) {
        const double d = s + r - s * r;
        ScaledComplex hv;
        if (subtract && r < 0.05) {
            const double log_tau = std::log1p(-r);
            hv = (*impl_->fa)((1.0 - s) * (1.0 - r), d);
            hv *= expm1((lam - 1.0) * log_tau);
            hv += impl_->fa->difference(s, r * (1.0 - s));
        } else {
            hv = h(1.0 - r, std::log1p(-r), d);
            if (subtract) hv += minus_h1;
        }
        return hv * f(log_r);
    };

    using Piece = QuadratureResult<ScaledComplex>;
    auto integrate_pieces = [&](const QuadratureOptions& opt) {
        // Endpoint factors q^(e - 1) with Re(e) < 1 are removed by q = w^(1/Re(e)).
        auto power_map = [](double e) { return e < 1.0 ? 1.0 / e : 1.0; };
        const double pr = power_map(gml.real());
        const double pt = power_map(lam.real());

        // r in (0, s), r = s q, q = w^pr.
        auto p1 = integrate_unit<ScaledComplex>(
            [&](double w, double) {
                const double log_q = pr * std::log(w);
                const double r = s * std::exp(log_q);
                ScaledComplex v = near_r0(r, log_s + log_q);
                return v *= ScaledComplex::from_log(log_s + std::log(pr) + (pr - 1.0) * std::log(w));
            },
            opt);
        // r in (s, 1/2), r = s e^y.
        const double span = -std::log(2.0 * s);
        auto p2 = integrate_unit<ScaledComplex>(
            [&](double v, double omv) {
                const double y = v <= 0.5 ? span * v : span - span * omv;
                const double r = s * std::exp(y);
                ScaledComplex out = near_r0(r, log_s + y);
                return out *= Complex(span * r, 0.0);
            },
            opt);
        // tau in (0, 1/2), tau = w^pt / 2.
        auto p3 = integrate_unit<ScaledComplex>(
            [&](double w, double) {
                const double log_tau = pt * std::log(w) - std::log(2.0);
                const double tau = std::exp(log_tau);
                const double r = 1.0 - tau;
                const double d = s + r - s * r;
                ScaledComplex out = h(tau, log_tau, d) * f(std::log1p(-tau));
                return out *= ScaledComplex::from_log(std::log(0.5 * pt) + (pt - 1.0) * std::log(w));
            },
            opt);
        // r in (1/2, inf), r = 1 / (2 q), q = w^pq; the integrand decays like q^(tail_gap - 1).
        QuadratureResult<ScaledComplex> p4;
        p4.converged = true;
        if (subtract) {
            const double pq = power_map(tail_gap);
            p4 = integrate_unit<ScaledComplex>(
                [&](double w, double) {
                    const double log_q = pq * std::log(w);
                    const double log_r = -std::log(2.0) - log_q;
                    ScaledComplex out = f(log_r);
                    // dr = r dq / q, dq = pq w^(pq - 1) dw.
                    return out *= ScaledComplex::from_log(log_r - log_q + std::log(pq) + (pq - 1.0) * std::log(w));
                },
                opt);
            p4.value *= minus_h1;
        }
        return std::array<Piece, 4>{p1, p2, p3, p4};
    };

    // Pieces are judged by their absolute error against the total. They can
    // cancel by several decades: near parameter coincidences such as
    // gamma - beta - beta' ~ 0 the leading power of s nearly vanishes. Then the
    // pieces are redone at a tolerance scaled by the cancellation, and up to
    // 1000 tol is accepted as rounding noise.
    struct Sum {
        ScaledComplex total;
        double abs_err = 0.0;
        double cancellation = 0.0;  // log of max |piece| / |total|
    };
    auto combine = [](const std::array<Piece, 4>& pieces) {
        Sum out;
        for (const auto& piece : pieces) out.total += piece.value;
        const double log_total = out.total.log_abs();
        for (const auto& piece : pieces) {
            if (piece.value.is_zero()) continue;
            const double rel = piece.value.log_abs() - log_total;
            out.abs_err += piece.est_error * std::exp(rel);
            out.cancellation = std::max(out.cancellation, rel);
        }
        return out;
    };

    QuadratureOptions opt;
    opt.rel_tol = tol_;
    opt.max_level = 9;
    Sum sum = combine(integrate_pieces(opt));
    if (!(sum.abs_err <= tol_) && sum.cancellation > 0.0 && std::isfinite(sum.cancellation)) {
        opt.rel_tol = std::max(tol_ * std::exp(-sum.cancellation), 1e-16);
        opt.max_level = 11;
        sum = combine(integrate_pieces(opt));
    }
    // Past that, an error explained by rounding in the cancelling pieces is
    // still accepted as long as it stays below kKernelRoundingCap.
    const double rounding = 64.0 * std::numeric_limits<double>::epsilon() * std::exp(sum.cancellation);
    const double accept = std::max(1000.0 * tol_, std::min(rounding, kKernelRoundingCap));
    if (!(sum.abs_err <= accept)) throw NonConvergenceError("F3 kernel: quadrature did not converge");
    ScaledComplex total = sum.total;
    total *= impl_->norm;
    return total;
}

}  // namespace kwright
