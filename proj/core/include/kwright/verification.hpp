#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "kwright/operators.hpp"
#include "kwright/oracle.hpp"

namespace kwright {

/// Every drawn inequality holds with at least this slack.
inline constexpr double kDrawMargin = 0.05;

/// Safe box for random real parameter draws.
struct DrawBox {
    double param_lo = -1.0;  // alpha, alpha', beta, beta' (MSM); beta, gamma (Saigo, EK)
    double param_hi = 1.0;
    double order_lo = 0.1;  // gamma (MSM) or alpha (Saigo, EK)
    double order_hi = 2.0;
    double rho_span = 1.5;  // rho ranges over bound + margin + [0, rho_span]
};

/// Uniform draws from a 64-bit Mersenne twister; the mapping to [0, 1) is
/// fixed here so results do not depend on the standard library.
class Sampler {
public:
    explicit Sampler(std::uint64_t seed) : rng_(seed) {}
    double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int pick(int n) { return static_cast<int>(uniform() * n); }

private:
    std::mt19937_64 rng_;
};

MSMParams draw_msm(Sampler& s, Side side, OpKind kind, const DrawBox& box = {});
SaigoParams draw_saigo(Sampler& s, Side side, OpKind kind, const DrawBox& box = {});
EKParams draw_ek(Sampler& s, Side side, OpKind kind, const DrawBox& box = {});
/// bound + kDrawMargin + U[0, rho_span].
double draw_above(Sampler& s, double bound, const DrawBox& box = {});

struct Comparison {
    Complex closed_form;
    Complex oracle;
    double rel_error = 0.0;
};

/// Monomial the lemmas act on: t^(rho-1) on the left, t^(-rho) on the right.
PowerSum lemma_monomial(Side side, Complex rho);

/// power_image against the numeric oracle at x.
Comparison compare_power_image(const MSMParams& op, Complex rho, double x, const OracleOptions& opt = {});
Comparison compare_power_image(const OperatorOracle& oracle, const PowerImage& image, Complex rho, double x);

/// Truncated closed form (terms 0..order) against the oracle applied to the truncated weighted series.
Comparison compare_series(const OperatorOracle& oracle, const TransformedWright& closed, const PowerWeight& w,
                          const WrightParams& f, double x, unsigned order);

}  // namespace kwright
