#include "kwright/operators.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>
#include <vector>

#include "kwright/gamma.hpp"

namespace kwright {

const char* to_string(Side side) { return side == Side::Left ? "left" : "right"; }

const char* to_string(OpKind kind) {
    switch (kind) {
        case OpKind::Integral: return "integral";
        case OpKind::Derivative: return "derivative";
        case OpKind::Caputo: return "caputo";
    }
    return "?";
}

int MSMParams::m() const { return static_cast<int>(std::floor(gamma.real())) + 1; }
int SaigoParams::m() const { return static_cast<int>(std::floor(alpha.real())) + 1; }

namespace {

struct Bound {
    const char* label;
    double value;
};

// Enforces lhs > max(bounds); returns true inside the warning band.
bool require_above(const std::string& where, const char* lhs_label, double lhs, const std::vector<Bound>& bounds);

bool require_above(const std::string& where, const char* lhs_label, double lhs, std::initializer_list<Bound> bounds) {
    return require_above(where, lhs_label, lhs, std::vector<Bound>(bounds));
}

bool require_above(const std::string& where, const char* lhs_label, double lhs, const std::vector<Bound>& bounds) {
    double top = -HUGE_VAL;
    for (const auto& b : bounds) top = std::max(top, b.value);
    if (!(lhs > top)) {
        std::ostringstream os;
        os << where << ": requires " << lhs_label << " > max{";
        for (std::size_t i = 0; i < bounds.size(); ++i) os << (i ? ", " : "") << bounds[i].label;
        os << "}; got " << lhs << " <= " << top;
        throw PreconditionError(os.str());
    }
    return lhs - top < kBoundaryWarningBand;
}

void require_positive_re(const std::string& where, const char* label, Complex v) {
    if (!(v.real() > 0.0)) {
        std::ostringstream os;
        os << where << ": requires Re(" << label << ") > 0; got " << v.real();
        throw PreconditionError(os.str());
    }
}

// prod Gamma(num) / prod Gamma(den); numerator poles throw, denominator poles give 0.
Complex gamma_ratio(std::initializer_list<Complex> num, std::initializer_list<Complex> den) {
    for (Complex z : num) {
        if (near_nonpositive_integer(z)) {
            std::ostringstream os;
            os << "power image: numerator Gamma(" << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag())
               << "i) is a pole";
            throw PoleError(os.str());
        }
    }
    for (Complex z : den) {
        if (near_nonpositive_integer(z)) return {0.0, 0.0};
    }
    Complex log_sum(0.0, 0.0);
    for (Complex z : num) log_sum += log_gamma(z);
    for (Complex z : den) log_sum -= log_gamma(z);
    const Complex out = std::exp(log_sum);
    if (!is_finite(out)) throw OverflowError("power image: gamma ratio overflows");
    return out;
}

}  // namespace

PowerImage power_image_formula(const MSMParams& op, Complex rho) {
    const Complex a = op.alpha, ap = op.alpha_prime, b = op.beta, bp = op.beta_prime, g = op.gamma;
    const double m = op.m();
    switch (op.kind) {
        case OpKind::Integral:
            if (op.side == Side::Left) {
                return {gamma_ratio({rho, -ap + bp + rho, -a - ap - b + g + rho},
                                    {bp + rho, -a - ap + g + rho, -ap - b + g + rho}),
                        -a - ap + g + rho - 1.0};
            }
            return {gamma_ratio({-b + rho, a + ap - g + rho, a + bp - g + rho},
                                {rho, a - b + rho, a + ap + bp - g + rho}),
                    -a - ap + g - rho};
        case OpKind::Derivative:
            if (op.side == Side::Left) {
                return {gamma_ratio({rho, a - b + rho, a + ap + bp - g + rho},
                                    {-b + rho, a + ap - g + rho, a + bp - g + rho}),
                        a + ap - g + rho - 1.0};
            }
            return {gamma_ratio({bp + rho, -a - ap + g + rho, -ap - b + g + rho},
                                {rho, -ap + bp + rho, -a - ap - b + g + rho}),
                    a + ap - g - rho};
        case OpKind::Caputo:
            if (op.side == Side::Left) {
                return {gamma_ratio({rho, a - b + rho - m, a + ap + bp - g + rho - m},
                                    {-b + rho - m, a + ap - g + rho, a + bp - g + rho - m}),
                        a + ap - g + rho - 1.0};
            }
            return {gamma_ratio({bp + rho + m, -a - ap + g + rho, -ap - b + g + rho + m},
                                {rho, -ap + bp + rho + m, -a - ap - b + g + rho + m}),
                    a + ap - g - rho};
    }
    throw DomainError("power image: unknown operator kind");
}

namespace {

// Hypotheses of the power-function lemmas: Re(rho) + shift > max(bounds).
double lemma_bounds(const MSMParams& op, std::vector<Bound>& bounds, const char*& lhs_label) {
    const Complex a = op.alpha, ap = op.alpha_prime, b = op.beta, bp = op.beta_prime, g = op.gamma;
    const double m = op.m();
    const bool left = op.side == Side::Left;
    lhs_label = "Re(rho)";
    double shift = 0.0;
    if (op.kind == OpKind::Integral) {
        if (left) {
            bounds = {{"0", 0.0},
                      {"Re(alpha'-beta')", (ap - bp).real()},
                      {"Re(alpha+alpha'+beta-gamma)", (a + ap + b - g).real()}};
        } else {
            bounds = {{"Re(beta)", b.real()},
                      {"Re(-alpha-alpha'+gamma)", (-a - ap + g).real()},
                      {"Re(-alpha-beta'+gamma)", (-a - bp + g).real()}};
        }
        return shift;
    }
    if (left) {
        bounds = {{"0", 0.0},
                  {"Re(-alpha+beta)", (-a + b).real()},
                  {"Re(-alpha-alpha'-beta'+gamma)", (-a - ap - bp + g).real()}};
    } else {
        bounds = {{"Re(-beta')", -bp.real()},
                  {"Re(alpha'+beta-gamma)", (ap + b - g).real()},
                  {"Re(alpha+alpha'-gamma)+m", (a + ap - g).real() + m}};
    }
    if (op.kind == OpKind::Caputo) {
        shift = left ? -m : m;
        lhs_label = left ? "Re(rho)-m" : "Re(rho)+m";
    }
    return shift;
}

bool check_lemma(const MSMParams& op, double x, const std::string& where) {
    if (op.kind == OpKind::Integral) require_positive_re(where, "gamma", op.gamma);
    std::vector<Bound> bounds;
    const char* label = nullptr;
    const double shift = lemma_bounds(op, bounds, label);
    return require_above(where, label, x + shift, bounds);
}

}  // namespace

double rho_lower_bound(const MSMParams& op) {
    std::vector<Bound> bounds;
    const char* label = nullptr;
    const double shift = lemma_bounds(op, bounds, label);
    double top = -HUGE_VAL;
    for (const auto& b : bounds) top = std::max(top, b.value);
    return top - shift;
}

double rho_lower_bound(const SaigoParams& op) { return rho_lower_bound(reduce_saigo(op)); }
double rho_lower_bound(const EKParams& op) { return rho_lower_bound(op.as_saigo()); }

PowerImage power_image(const MSMParams& op, Complex rho) {
    const std::string where = std::string("MSM ") + to_string(op.side) + " " + to_string(op.kind) + " power image";
    const bool near = check_lemma(op, rho.real(), where);
    PowerImage out = power_image_formula(op, rho);
    out.near_boundary = near;
    return out;
}

MSMParams reduce_saigo(const SaigoParams& op) {
    if (op.kind == OpKind::Integral) {
        // I^{a, 0, b, b', c} = I^{c, a - c, -b}: read backwards, with b' = 0.
        return {op.alpha + op.beta, 0.0, -op.gamma, 0.0, op.alpha, op.side, op.kind};
    }
    // D^{0, a', b, b', c} = D^{c, a' - c, b' - c}: read backwards, with b = 0.
    return {0.0, op.alpha + op.beta, 0.0, op.alpha + op.gamma, op.alpha, op.side, op.kind};
}

PowerImage power_image(const SaigoParams& op, Complex rho) { return power_image(reduce_saigo(op), rho); }
PowerImage power_image(const EKParams& op, Complex rho) { return power_image(op.as_saigo(), rho); }

std::string theorem_id(Side side, OpKind kind) {
    const int section = kind == OpKind::Integral ? 3 : kind == OpKind::Derivative ? 4 : 5;
    return std::to_string(section) + (side == Side::Left ? ".1" : ".2");
}

std::string corollary_id(Side side, OpKind kind, bool ek) {
    const int section = kind == OpKind::Integral ? 3 : kind == OpKind::Derivative ? 4 : 5;
    int n = side == Side::Left ? 1 : 4;
    if (ek) n += 2;
    return std::to_string(section) + "." + std::to_string(n);
}

namespace {

void check_series(const std::string& where, const PowerWeight& w, const WrightParams& f) {
    if (!(w.mu > 0.0)) throw PreconditionError(where + ": requires mu > 0");
    const ConvergenceData d = convergence_data(f);
    if (!(d.delta_cap > -1.0)) {
        std::ostringstream os;
        os << where << ": requires Delta > -1 for the input series; got " << d.delta_cap;
        throw ConvergenceError(os.str());
    }
}

TransformedWright start(const std::string& source, const PowerWeight& w, const WrightParams& f, Side side) {
    TransformedWright t;
    t.source = source;
    t.params = f;
    t.argument_sign = side == Side::Left ? 1 : -1;
    t.a = w.a;
    t.mu = w.mu;
    return t;
}

void append(TransformedWright& t, std::initializer_list<Complex> upper, std::initializer_list<Complex> lower) {
    for (Complex u : upper) t.params.upper.push_back({u, t.mu});
    for (Complex l : lower) t.params.lower.push_back({l, t.mu});
}

}  // namespace

TransformedWright transform(const MSMParams& op, const PowerWeight& w, const WrightParams& f) {
    const std::string where = "Theorem " + theorem_id(op.side, op.kind);
    check_series(where, w, f);
    const double k = f.k;
    const Complex a = op.alpha, ap = op.alpha_prime, b = op.beta, bp = op.beta_prime, g = op.gamma;
    const Complex r = w.rho;
    const double x = (r / k).real();
    const double m = op.m();
    TransformedWright t = start(where, w, f, op.side);

    switch (op.kind) {
        case OpKind::Integral:
            require_positive_re(where, "gamma", g);
            t.prefactor_k_exp = g;
            if (op.side == Side::Left) {
                t.near_boundary = require_above(where, "Re(rho/k)", x,
                                                {{"0", 0.0},
                                                 {"Re(alpha'-beta')", (ap - bp).real()},
                                                 {"Re(alpha+alpha'+beta-gamma)", (a + ap + b - g).real()}});
                append(t, {r, -k * ap + k * bp + r, -k * a - k * ap - k * b + k * g + r},
                       {k * bp + r, -k * a - k * ap + k * g + r, -k * ap - k * b + k * g + r});
                t.x_exponent = -a - ap + g + r / k - 1.0;
            } else {
                t.near_boundary = require_above(where, "Re(rho/k)", x,
                                                {{"Re(beta)", b.real()},
                                                 {"Re(-alpha-alpha'+gamma)", (-a - ap + g).real()},
                                                 {"Re(-alpha-beta'+gamma)", (-a - bp + g).real()}});
                append(t, {-k * b + r, k * a + k * ap - k * g + r, k * a + k * bp - k * g + r},
                       {r, k * a - k * b + r, k * a + k * ap + k * bp - k * g + r});
                t.x_exponent = -a - ap + g - r / k;
            }
            break;
        case OpKind::Derivative:
            t.prefactor_k_exp = -g;
            if (op.side == Side::Left) {
                t.near_boundary = require_above(where, "Re(rho/k)", x,
                                                {{"0", 0.0},
                                                 {"Re(-alpha+beta)", (-a + b).real()},
                                                 {"Re(-alpha-alpha'-beta'+gamma)", (-a - ap - bp + g).real()}});
                append(t, {r, k * a - k * b + r, k * a + k * ap + k * bp - k * g + r},
                       {-k * b + r, k * a + k * ap - k * g + r, k * a + k * bp - k * g + r});
                t.x_exponent = a + ap - g + r / k - 1.0;
            } else {
                t.near_boundary = require_above(where, "Re(rho/k)", x,
                                                {{"Re(-beta')", -bp.real()},
                                                 {"Re(alpha'+beta-gamma)", (ap + b - g).real()},
                                                 {"Re(alpha+alpha'-gamma)+m", (a + ap - g).real() + m}});
                append(t, {k * bp + r, -k * a - k * ap + k * g + r, -k * ap - k * b + k * g + r},
                       {r, -k * ap + k * bp + r, -k * a - k * ap - k * b + k * g + r});
                t.x_exponent = a + ap - g - r / k;
            }
            break;
        case OpKind::Caputo:
            t.prefactor_k_exp = -g;
            if (op.side == Side::Left) {
                t.near_boundary = require_above(where, "Re(rho/k)-m", x - m,
                                                {{"0", 0.0},
                                                 {"Re(-alpha+beta)", (-a + b).real()},
                                                 {"Re(-alpha-alpha'-beta'+gamma)", (-a - ap - bp + g).real()}});
                append(t, {r, k * a - k * b + r - k * m, k * a + k * ap + k * bp - k * g + r - k * m},
                       {-k * b + r - k * m, k * a + k * ap - k * g + r, k * a + k * bp - k * g + r - k * m});
                t.x_exponent = a + ap - g + r / k - 1.0;
            } else {
                t.near_boundary = require_above(where, "Re(rho/k)+m", x + m,
                                                {{"Re(-beta')", -bp.real()},
                                                 {"Re(alpha'+beta-gamma)", (ap + b - g).real()},
                                                 {"Re(alpha+alpha'-gamma)+m", (a + ap - g).real() + m}});
                append(t, {k * bp + r + k * m, -k * a - k * ap + k * g + r, -k * ap - k * b + k * g + r + k * m},
                       {r, -k * ap + k * bp + r + k * m, -k * a - k * ap - k * b + k * g + r + k * m});
                t.x_exponent = a + ap - g - r / k;
            }
            break;
    }
    return t;
}

namespace {

TransformedWright saigo_like(const SaigoParams& op, const PowerWeight& w, const WrightParams& f, bool ek) {
    const std::string where = "Corollary " + corollary_id(op.side, op.kind, ek);
    check_series(where, w, f);
    const double k = f.k;
    const Complex a = op.alpha, b = op.beta, g = op.gamma;
    const Complex r = w.rho;
    const double x = (r / k).real();
    const double m = op.m();
    TransformedWright t = start(where, w, f, op.side);
    const bool left = op.side == Side::Left;

    switch (op.kind) {
        case OpKind::Integral:
            require_positive_re(where, "alpha", a);
            t.prefactor_k_exp = a;
            if (left) {
                if (ek) {
                    t.near_boundary = require_above(where, "Re(rho/k)", x, {{"0", 0.0}, {"Re(-gamma)", -g.real()}});
                    append(t, {k * g + r}, {k * a + k * g + r});
                    t.x_exponent = r / k - 1.0;
                } else {
                    t.near_boundary =
                        require_above(where, "Re(rho/k)", x, {{"0", 0.0}, {"Re(beta-gamma)", (b - g).real()}});
                    append(t, {r, -k * b + k * g + r}, {-k * b + r, k * a + k * g + r});
                    t.x_exponent = -b + r / k - 1.0;
                }
            } else {
                if (ek) {
                    t.near_boundary = require_above(where, "Re(rho/k)", x, {{"0", 0.0}, {"Re(-gamma)", -g.real()}});
                    append(t, {k * g + r}, {k * a + k * g + r});
                    t.x_exponent = -r / k;
                } else {
                    t.near_boundary =
                        require_above(where, "Re(rho/k)", x, {{"Re(-beta)", -b.real()}, {"Re(-gamma)", -g.real()}});
                    append(t, {k * b + r, k * g + r}, {r, k * a + k * b + k * g + r});
                    t.x_exponent = -b - r / k;
                }
            }
            break;
        case OpKind::Derivative:
            t.prefactor_k_exp = -a;
            if (left) {
                if (ek) {
                    t.near_boundary =
                        require_above(where, "Re(rho/k)", x, {{"0", 0.0}, {"Re(-alpha-gamma)", (-a - g).real()}});
                    append(t, {k * a + k * g + r}, {k * g + r});
                    t.x_exponent = r / k - 1.0;
                } else {
                    t.near_boundary = require_above(where, "Re(rho/k)", x,
                                                    {{"0", 0.0}, {"Re(-alpha-beta-gamma)", (-a - b - g).real()}});
                    append(t, {r, k * a + k * b + k * g + r}, {k * b + r, k * g + r});
                    t.x_exponent = b + r / k - 1.0;
                }
            } else {
                if (ek) {
                    t.near_boundary =
                        require_above(where, "Re(rho/k)", x, {{"m", m}, {"Re(-alpha-gamma)", (-a - g).real()}});
                    append(t, {k * a + k * g + r}, {k * g + r});
                    t.x_exponent = -r / k;
                } else {
                    t.near_boundary = require_above(where, "Re(rho/k)", x,
                                                    {{"Re(-alpha-gamma)", (-a - g).real()}, {"Re(beta)+m", b.real() + m}});
                    append(t, {-k * b + r, k * a + k * g + r}, {r, -k * b + k * g + r});
                    t.x_exponent = b - r / k;
                }
            }
            break;
        case OpKind::Caputo:
            t.prefactor_k_exp = -a;
            if (left) {
                if (ek) {
                    t.near_boundary =
                        require_above(where, "Re(rho/k)-m", x - m, {{"0", 0.0}, {"Re(-alpha-gamma)", (-a - g).real()}});
                    append(t, {k * a + k * g + r - k * m}, {k * g + r - k * m});
                    t.x_exponent = r / k - 1.0;
                } else {
                    t.near_boundary = require_above(where, "Re(rho/k)-m", x - m,
                                                    {{"0", 0.0}, {"Re(-alpha-beta-gamma)", (-a - b - g).real()}});
                    append(t, {r, k * a + k * b + k * g + r - k * m}, {k * b + r, k * g + r - k * m});
                    t.x_exponent = b + r / k - 1.0;
                }
            } else {
                if (ek) {
                    t.near_boundary =
                        require_above(where, "Re(rho/k)+m", x + m, {{"m", m}, {"Re(-alpha-gamma)", (-a - g).real()}});
                    append(t, {k * a + k * g + r + k * m}, {k * g + r + k * m});
                    t.x_exponent = -r / k;
                } else {
                    t.near_boundary = require_above(where, "Re(rho/k)+m", x + m,
                                                    {{"Re(beta)+m", b.real() + m}, {"Re(-alpha-gamma)", (-a - g).real()}});
                    append(t, {-k * b + r, k * a + k * g + r + k * m}, {r, -k * b + k * g + r + k * m});
                    t.x_exponent = b - r / k;
                }
            }
            break;
    }
    return t;
}

}  // namespace

TransformedWright corollary_transform(const SaigoParams& op, const PowerWeight& w, const WrightParams& f) {
    return saigo_like(op, w, f, false);
}

TransformedWright corollary_transform(const EKParams& op, const PowerWeight& w, const WrightParams& f) {
    return saigo_like(op.as_saigo(), w, f, true);
}

TransformedWright simplify(TransformedWright t, double tol) {
    auto& up = t.params.upper;
    auto& lo = t.params.lower;
    for (std::size_t i = 0; i < up.size();) {
        auto hit = std::find_if(lo.begin(), lo.end(), [&](const WrightPair& l) {
            return std::abs(l.a - up[i].a) <= tol && std::abs(l.step - up[i].step) <= tol;
        });
        if (hit != lo.end()) {
            lo.erase(hit);
            up.erase(up.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return t;
}

SeriesResult evaluate_image_detailed(const TransformedWright& t, double x, double tol) {
    if (!(x > 0.0)) throw DomainError("evaluate_image: x must be positive");
    const double k = t.params.k;
    const Complex z = t.a * std::pow(x, t.argument_sign * t.mu / k);
    const Complex scale = std::exp(t.prefactor_k_exp * std::log(k) + t.x_exponent * std::log(x));
    SeriesResult r = eval_kwright_detailed(t.params, z, tol);
    r.value *= scale;
    r.est_error *= std::abs(scale);
    return r;
}

Complex evaluate_image(const TransformedWright& t, double x, double tol) {
    return evaluate_image_detailed(t, x, tol).value;
}

}  // namespace kwright
