#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "kwright/types.hpp"

namespace kwright {

/// One abscissa of a double-exponential rule. For rules on [0, 1] the
/// complement 1 - x is carried separately so that nodes near 1 keep their
/// full relative distance to the endpoint.
struct QuadNode {
    double x;
    double one_minus_x;
    double weight;
};

enum class RuleKind {
    TanhSinhUnit,  // [0, 1]
    ExpSinhHalfLine,  // (0, inf)
};

/// Nested double-exponential rule. Level 0 uses step 1 in the transformed
/// variable; each further level halves the step and adds only the new nodes.
class DoubleExponentialRule {
public:
    static constexpr int kMaxLevel = 12;

    static const DoubleExponentialRule& get(RuleKind kind);

    const std::vector<QuadNode>& new_nodes(int level) const { return levels_.at(level); }
    static double step(int level) { return 1.0 / static_cast<double>(1 << level); }

private:
    explicit DoubleExponentialRule(RuleKind kind);
    std::vector<std::vector<QuadNode>> levels_;
};

struct QuadratureOptions {
    double rel_tol = 1e-12;
    double abs_tol = 0.0;
    int min_level = 3;
    int max_level = 10;
};

template <typename V>
struct QuadratureResult {
    V value{};
    double est_error = 0.0;  // relative for ScaledComplex, absolute for Complex
    int levels = 0;
    std::size_t evaluations = 0;
    bool converged = false;
};

namespace detail {

inline Complex scale_by(Complex v, double h) { return v * h; }
inline ScaledComplex scale_by(ScaledComplex v, double h) { return v *= Complex(h, 0.0); }

inline bool level_converged(Complex now, Complex prev, const QuadratureOptions& opt, double& err) {
    err = std::abs(now - prev);
    return err <= opt.abs_tol || err <= opt.rel_tol * std::abs(now);
}

inline bool level_converged(const ScaledComplex& now, const ScaledComplex& prev,
                            const QuadratureOptions& opt, double& err) {
    if (now.is_zero() && prev.is_zero()) {
        err = 0.0;
        return true;
    }
    if (now.is_zero()) {
        err = 1.0;
        return false;
    }
    const Complex aligned = prev.is_zero() ? Complex(0.0, 0.0)
                                           : prev.mantissa * std::exp(prev.log_scale - now.log_scale);
    err = std::abs(now.mantissa - aligned) / std::abs(now.mantissa);
    if (opt.abs_tol > 0.0 && err * std::exp(now.log_abs()) <= opt.abs_tol) return true;
    return err <= opt.rel_tol;
}

}  // namespace detail

/// Level-doubling driver. `f(node, level, index)` returns weight-free integrand
/// values of type V (Complex or ScaledComplex); the driver applies weights.
template <typename V, typename F>
QuadratureResult<V> integrate_rule(RuleKind kind, F&& f, const QuadratureOptions& opt = {}) {
    const auto& rule = DoubleExponentialRule::get(kind);
    QuadratureResult<V> out;
    V running{};
    V previous{};
    const int top = std::min(opt.max_level, DoubleExponentialRule::kMaxLevel);
    for (int level = 0; level <= top; ++level) {
        const auto& nodes = rule.new_nodes(level);
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            V v = f(nodes[i], level, i);
            running += detail::scale_by(v, nodes[i].weight);
        }
        out.evaluations += nodes.size();
        const V estimate = detail::scale_by(running, DoubleExponentialRule::step(level));
        out.value = estimate;
        out.levels = level;
        if (level > 0) {
            double err = 0.0;
            const bool ok = detail::level_converged(estimate, previous, opt, err);
            out.est_error = err;
            if (ok && level >= opt.min_level) {
                out.converged = true;
                return out;
            }
        }
        previous = estimate;
    }
    return out;
}

/// Integrate f(x, 1 - x) over [0, 1].
template <typename V, typename F>
QuadratureResult<V> integrate_unit(F&& f, const QuadratureOptions& opt = {}) {
    return integrate_rule<V>(
        RuleKind::TanhSinhUnit,
        [&](const QuadNode& n, int, std::size_t) { return f(n.x, n.one_minus_x); }, opt);
}

/// Integrate f(x) over (0, inf).
template <typename V, typename F>
QuadratureResult<V> integrate_half_line(F&& f, const QuadratureOptions& opt = {}) {
    return integrate_rule<V>(
        RuleKind::ExpSinhHalfLine, [&](const QuadNode& n, int, std::size_t) { return f(n.x); }, opt);
}

/// Integrate a Complex-valued f over [a, b] (finite).
template <typename F>
QuadratureResult<Complex> integrate_interval(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
    const double len = b - a;
    auto r = integrate_unit<Complex>(
        [&](double u, double omu) { return f(u <= 0.5 ? a + len * u : b - len * omu); }, opt);
    r.value *= len;
    r.est_error *= std::abs(len);
    return r;
}

}  // namespace kwright
