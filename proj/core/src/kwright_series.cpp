#include "kwright/kwright_series.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>

#include "kwright/gamma.hpp"

namespace kwright {

void WrightParams::validate() const {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("WrightParams: k must be positive and finite");
    for (const auto& p : upper) {
        if (p.step == 0.0 || !std::isfinite(p.step)) throw DomainError("WrightParams: upper step must be nonzero");
    }
    for (const auto& p : lower) {
        if (p.step == 0.0 || !std::isfinite(p.step)) throw DomainError("WrightParams: lower step must be nonzero");
    }
}

unsigned wright_term_cap() {
    if (const char* env = std::getenv("KWRIGHT_TERM_CAP")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<unsigned>(v);
    }
    return kDefaultWrightTermCap;
}

const char* to_string(ConvergenceKind kind) {
    switch (kind) {
        case ConvergenceKind::Entire: return "Entire";
        case ConvergenceKind::DiskOfRadius: return "DiskOfRadius";
        case ConvergenceKind::DiskWithBoundary: return "DiskWithBoundary";
        case ConvergenceKind::DivergentAtPoint: return "DivergentAtPoint";
        case ConvergenceKind::OutsideTheoremScope: return "OutsideTheoremScope";
    }
    return "?";
}

ConvergenceData convergence_data(const WrightParams& params) {
    params.validate();
    const double k = params.k;
    double delta = 0.0;
    double log_radius = 0.0;
    Complex mu = 0.5 * (static_cast<double>(params.upper.size()) - static_cast<double>(params.lower.size()));
    for (const auto& p : params.upper) {
        const double s = p.step / k;
        delta -= s;
        log_radius -= s * std::log(std::abs(s));
        mu -= p.a / k;
    }
    for (const auto& p : params.lower) {
        const double s = p.step / k;
        delta += s;
        log_radius += s * std::log(std::abs(s));
        mu += p.a / k;
    }
    return {delta, std::exp(log_radius), mu};
}

ConvergenceClass classify(const WrightParams& params, Complex z) {
    const ConvergenceData d = convergence_data(params);
    constexpr double inf = std::numeric_limits<double>::infinity();
    if (std::abs(d.delta_cap + 1.0) <= kUnitDeltaTolerance) {
        const double r = std::abs(z);
        if (std::abs(r - d.delta_radius) <= kUnitDeltaTolerance * d.delta_radius) {
            if (d.mu.real() > 0.5) {
                return {ConvergenceKind::DiskWithBoundary, d.delta_radius, true, "|z| = delta and Re(mu) > 1/2"};
            }
            return {ConvergenceKind::DiskWithBoundary, d.delta_radius, false,
                    "|z| = delta with Re(mu) <= 1/2: convergence not guaranteed"};
        }
        if (r < d.delta_radius) return {ConvergenceKind::DiskOfRadius, d.delta_radius, true, "|z| < delta"};
        return {ConvergenceKind::DivergentAtPoint, d.delta_radius, false, "|z| > delta"};
    }
    if (d.delta_cap > -1.0) return {ConvergenceKind::Entire, inf, true, "Delta > -1"};
    return {ConvergenceKind::OutsideTheoremScope, 0.0, z == Complex(0.0, 0.0), "Delta < -1"};
}

namespace {

[[noreturn]] void throw_term_pole(const char* side, std::size_t index, unsigned n, Complex arg) {
    std::ostringstream os;
    os << "K-Wright term n=" << n << ": " << side << " pair " << index << " puts Gamma_k at a pole (argument "
       << arg.real() << (arg.imag() < 0 ? "-" : "+") << std::abs(arg.imag()) << "i)";
    throw PoleError(os.str());
}

void check_poles(const WrightParams& params, unsigned n) {
    const double dn = n;
    for (std::size_t i = 0; i < params.upper.size(); ++i) {
        const Complex arg = params.upper[i].a + dn * params.upper[i].step;
        if (near_nonpositive_integer(arg / params.k)) throw_term_pole("upper", i, n, arg);
    }
    for (std::size_t j = 0; j < params.lower.size(); ++j) {
        const Complex arg = params.lower[j].a + dn * params.lower[j].step;
        if (near_nonpositive_integer(arg / params.k)) throw_term_pole("lower", j, n, arg);
    }
}

}  // namespace

Complex log_term_coefficient(const WrightParams& params, unsigned n) {
    check_poles(params, n);
    const double dn = n;
    Complex log_c = -std::lgamma(dn + 1.0);
    for (const auto& p : params.upper) log_c += log_gamma_k(p.a + dn * p.step, params.k);
    for (const auto& p : params.lower) log_c -= log_gamma_k(p.a + dn * p.step, params.k);
    return log_c;
}

Complex term_coefficient_direct(const WrightParams& params, unsigned n) {
    check_poles(params, n);
    const double dn = n;
    Complex c = 1.0 / std::tgamma(dn + 1.0);
    for (const auto& p : params.upper) c *= gamma_k(p.a + dn * p.step, params.k);
    for (const auto& p : params.lower) c /= gamma_k(p.a + dn * p.step, params.k);
    return c;
}

Complex wright_term(const WrightParams& params, Complex z, unsigned n) {
    if (n == 0) return std::exp(log_term_coefficient(params, 0));
    if (z == Complex(0.0, 0.0)) return {0.0, 0.0};
    return std::exp(log_term_coefficient(params, n) + static_cast<double>(n) * std::log(z));
}

SeriesResult eval_kwright_detailed(const WrightParams& params, Complex z, double tol, unsigned term_cap) {
    if (!(tol > 0.0)) throw DomainError("eval_kwright: tol must be positive");
    const ConvergenceClass cls = classify(params, z);
    if (!cls.convergent) {
        throw DomainError(std::string("eval_kwright: series not convergent at z (") + to_string(cls.kind) +
                          ": " + cls.note + ")");
    }
    if (term_cap == 0) term_cap = wright_term_cap();
    const Complex first = wright_term(params, z, 0);
    if (z == Complex(0.0, 0.0)) return {first, 0.0, 1};

    const Complex log_z = std::log(z);
    Complex sum = first;
    double prev_abs = std::abs(first);
    int small = 0;
    for (unsigned n = 1; n < term_cap; ++n) {
        const Complex term = std::exp(log_term_coefficient(params, n) + static_cast<double>(n) * log_z);
        if (!is_finite(term)) throw OverflowError("eval_kwright: term overflows");
        sum += term;
        const double t = std::abs(term);
        const double q = prev_abs > 0.0 ? t / prev_abs : 0.0;
        prev_abs = t;
        if (q < 1.0 && t <= tol * (1.0 - q) * std::abs(sum)) {
            if (++small >= 3) return {sum, t * q / (1.0 - q), n + 1};
        } else {
            small = 0;
        }
    }
    std::ostringstream os;
    os << "eval_kwright: no convergence within " << term_cap << " terms";
    throw NonConvergenceError(os.str());
}

Complex eval_kwright(const WrightParams& params, Complex z, double tol) {
    return eval_kwright_detailed(params, z, tol).value;
}

Complex kwright_partial_sum(const WrightParams& params, Complex z, unsigned n_terms) {
    params.validate();
    Complex sum(0.0, 0.0);
    for (unsigned n = 0; n < n_terms; ++n) sum += wright_term(params, z, n);
    return sum;
}

}  // namespace kwright
