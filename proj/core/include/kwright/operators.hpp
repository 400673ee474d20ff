#pragma once

#include <string>

#include "kwright/kwright_series.hpp"
#include "kwright/types.hpp"

namespace kwright {

enum class Side { Left, Right };
enum class OpKind { Integral, Derivative, Caputo };

const char* to_string(Side side);
const char* to_string(OpKind kind);

/// Marichev-Saigo-Maeda operator I / D / cD with parameters (alpha, alpha', beta, beta', gamma).
struct MSMParams {
    Complex alpha;
    Complex alpha_prime;
    Complex beta;
    Complex beta_prime;
    Complex gamma;
    Side side = Side::Left;
    OpKind kind = OpKind::Integral;

    /// [Re(gamma)] + 1.
    int m() const;
};

/// Saigo operator with parameters (alpha, beta, gamma).
struct SaigoParams {
    Complex alpha;
    Complex beta;
    Complex gamma;
    Side side = Side::Left;
    OpKind kind = OpKind::Integral;

    /// [Re(alpha)] + 1.
    int m() const;
};

/// Erdelyi-Kober operator with order alpha and weight gamma; equals Saigo (alpha, 0, gamma).
struct EKParams {
    Complex alpha;
    Complex gamma;
    Side side = Side::Left;
    OpKind kind = OpKind::Integral;

    SaigoParams as_saigo() const { return {alpha, 0.0, gamma, side, kind}; }
};

/// Weight t^(rho/k - 1) (left) or t^(-rho/k) (right); series argument a t^(+-mu/k).
struct PowerWeight {
    Complex rho;
    double mu = 1.0;
    Complex a;
};

/// op applied to t^(rho-1) (left) or t^(-rho) (right) equals coefficient * x^exponent.
struct PowerImage {
    Complex coefficient;
    Complex exponent;
    bool near_boundary = false;
};

/// k^prefactor_k_exp * x^x_exponent * Psi^k[params](a x^(sign mu/k)).
struct TransformedWright {
    std::string source;  // e.g. "Theorem 3.1", "Corollary 4.4"
    Complex prefactor_k_exp;
    Complex x_exponent;
    WrightParams params;
    int argument_sign = 1;
    Complex a;
    double mu = 1.0;
    bool near_boundary = false;
};

/// Width of the band above a strict precondition bound that sets near_boundary.
inline constexpr double kBoundaryWarningBand = 1e-10;

/// Gamma-ratio images of power functions; rejects parameters that violate the
/// strict Re(rho) inequality of the matching clause with PreconditionError.
PowerImage power_image(const MSMParams& op, Complex rho);
PowerImage power_image(const SaigoParams& op, Complex rho);
PowerImage power_image(const EKParams& op, Complex rho);

/// B in the lemma hypothesis Re(rho) > B for this operator (Caputo's m shift included).
double rho_lower_bound(const MSMParams& op);
double rho_lower_bound(const SaigoParams& op);
double rho_lower_bound(const EKParams& op);

/// The printed gamma ratios with no hypothesis checks. Integral kinds accept
/// any gamma, which the duality between integrals and derivatives relies on.
PowerImage power_image_formula(const MSMParams& op, Complex rho);

/// MSM quintuple reproducing a Saigo operator (free parameter set to 0).
MSMParams reduce_saigo(const SaigoParams& op);

/// Theorem number of the MSM transform for (side, kind), e.g. "3.1".
std::string theorem_id(Side side, OpKind kind);
/// Corollary number for a Saigo (ek = false) or Erdelyi-Kober operator.
std::string corollary_id(Side side, OpKind kind, bool ek);

TransformedWright transform(const MSMParams& op, const PowerWeight& w, const WrightParams& f);
TransformedWright corollary_transform(const SaigoParams& op, const PowerWeight& w, const WrightParams& f);
TransformedWright corollary_transform(const EKParams& op, const PowerWeight& w, const WrightParams& f);

/// Removes upper/lower pairs that coincide to within `tol` (one-for-one).
TransformedWright simplify(TransformedWright t, double tol = 1e-14);

/// Numeric value of the right-hand side at x > 0.
Complex evaluate_image(const TransformedWright& t, double x, double tol = 1e-12);
/// Same, with the series tail estimate scaled into an absolute error.
SeriesResult evaluate_image_detailed(const TransformedWright& t, double x, double tol = 1e-12);

}  // namespace kwright
