#include "kwright/verification.hpp"

#include <cmath>

namespace kwright {

namespace {

double rel_error(Complex reference, Complex value) {
    const double scale = std::abs(reference);
    const double diff = std::abs(value - reference);
    return scale > 0.0 ? diff / scale : diff;
}

}  // namespace

MSMParams draw_msm(Sampler& s, Side side, OpKind kind, const DrawBox& box) {
    MSMParams op;
    op.alpha = s.uniform(box.param_lo, box.param_hi);
    op.alpha_prime = s.uniform(box.param_lo, box.param_hi);
    op.beta = s.uniform(box.param_lo, box.param_hi);
    op.beta_prime = s.uniform(box.param_lo, box.param_hi);
    op.gamma = s.uniform(box.order_lo, box.order_hi);
    op.side = side;
    op.kind = kind;
    return op;
}

SaigoParams draw_saigo(Sampler& s, Side side, OpKind kind, const DrawBox& box) {
    SaigoParams op;
    op.alpha = s.uniform(box.order_lo, box.order_hi);
    op.beta = s.uniform(box.param_lo, box.param_hi);
    op.gamma = s.uniform(box.param_lo, box.param_hi);
    op.side = side;
    op.kind = kind;
    return op;
}

EKParams draw_ek(Sampler& s, Side side, OpKind kind, const DrawBox& box) {
    EKParams op;
    op.alpha = s.uniform(box.order_lo, box.order_hi);
    op.gamma = s.uniform(box.param_lo, box.param_hi);
    op.side = side;
    op.kind = kind;
    return op;
}

double draw_above(Sampler& s, double bound, const DrawBox& box) {
    return bound + kDrawMargin + s.uniform(0.0, box.rho_span);
}

PowerSum lemma_monomial(Side side, Complex rho) {
    return PowerSum::monomial(side == Side::Left ? rho - 1.0 : -rho);
}

Comparison compare_power_image(const OperatorOracle& oracle, const PowerImage& image, Complex rho, double x) {
    Comparison c;
    c.closed_form = image.coefficient * std::exp(image.exponent * std::log(x));
    c.oracle = oracle(lemma_monomial(oracle.side(), rho), x).value;
    c.rel_error = rel_error(c.closed_form, c.oracle);
    return c;
}

Comparison compare_power_image(const MSMParams& op, Complex rho, double x, const OracleOptions& opt) {
    return compare_power_image(OperatorOracle(op, opt), power_image(op, rho), rho, x);
}

Comparison compare_series(const OperatorOracle& oracle, const TransformedWright& closed, const PowerWeight& w,
                          const WrightParams& f, double x, unsigned order) {
    Comparison c;
    c.closed_form = evaluate_image_truncated(closed, x, order);
    c.oracle = series_lhs_numeric(oracle, w, f, x, order);
    c.rel_error = rel_error(c.closed_form, c.oracle);
    return c;
}

}  // namespace kwright
