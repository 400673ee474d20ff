#include "kwright/quadrature.hpp"

#include <cmath>

namespace kwright {

namespace {

constexpr double kTiny = 1e-300;

// Appends the nodes at +t and -t (a single node when t == 0). Returns false
// once the abscissae have left the representable range.
bool push_tanh_sinh(std::vector<QuadNode>& out, double t) {
    const double e = std::exp(-kPi * std::sinh(t));
    if (e < kTiny) return false;
    const double x = e / (1.0 + e);
    const double omx = 1.0 / (1.0 + e);
    const double w = kPi * std::cosh(t) * e / ((1.0 + e) * (1.0 + e));
    out.push_back({x, omx, w});
    if (t != 0.0) out.push_back({omx, x, w});
    return true;
}

bool push_exp_sinh(std::vector<QuadNode>& out, double t) {
    const double arg = 0.5 * kPi * std::sinh(t);
    if (std::abs(arg) > 690.0) return false;
    const double hi = std::exp(arg);
    const double lo = std::exp(-arg);
    const double c = 0.5 * kPi * std::cosh(t);
    out.push_back({hi, 0.0, hi * c});
    if (t != 0.0) out.push_back({lo, 0.0, lo * c});
    return true;
}

}  // namespace

DoubleExponentialRule::DoubleExponentialRule(RuleKind kind) {
    levels_.resize(kMaxLevel + 1);
    auto push = kind == RuleKind::TanhSinhUnit ? push_tanh_sinh : push_exp_sinh;
    for (int level = 0; level <= kMaxLevel; ++level) {
        const double h = step(level);
        auto& nodes = levels_[level];
        if (level == 0) {
            for (int j = 0;; ++j) {
                if (!push(nodes, j * h)) break;
            }
        } else {
            for (int j = 0;; ++j) {
                if (!push(nodes, (2 * j + 1) * h)) break;
            }
        }
    }
}

const DoubleExponentialRule& DoubleExponentialRule::get(RuleKind kind) {
    static const DoubleExponentialRule unit(RuleKind::TanhSinhUnit);
    static const DoubleExponentialRule half_line(RuleKind::ExpSinhHalfLine);
    return kind == RuleKind::TanhSinhUnit ? unit : half_line;
}

}  // namespace kwright
