#pragma once

#include <string>
#include <vector>

#include "kwright/types.hpp"

namespace kwright {

/// One (a, alpha) pair of the K-Wright function; `step` is alpha (nonzero, real).
struct WrightPair {
    Complex a;
    double step;

    bool operator==(const WrightPair&) const = default;
};

/// Parameters of pPsi_q^k: Sum_n prod Gamma_k(a_i + n alpha_i) / prod Gamma_k(b_j + n beta_j) z^n / n!.
struct WrightParams {
    double k = 1.0;
    std::vector<WrightPair> upper;
    std::vector<WrightPair> lower;

    /// Throws DomainError for k <= 0 or a zero step.
    void validate() const;
};

struct ConvergenceData {
    double delta_cap;     // Delta = sum beta_j/k - sum alpha_i/k
    double delta_radius;  // delta
    Complex mu;
};

enum class ConvergenceKind {
    Entire,
    DiskOfRadius,      // Delta = -1, |z| < delta
    DiskWithBoundary,  // Delta = -1, |z| = delta
    DivergentAtPoint,  // Delta = -1, |z| > delta
    OutsideTheoremScope,  // Delta < -1
};

struct ConvergenceClass {
    ConvergenceKind kind;
    double radius;  // delta; infinity for Entire
    bool convergent;
    std::string note;
};

inline constexpr double kUnitDeltaTolerance = 1e-12;
inline constexpr unsigned kDefaultWrightTermCap = 10000;

/// Term cap for series summation: KWRIGHT_TERM_CAP when set to a positive
/// integer, otherwise kDefaultWrightTermCap.
unsigned wright_term_cap();

const char* to_string(ConvergenceKind kind);

ConvergenceData convergence_data(const WrightParams& params);
ConvergenceClass classify(const WrightParams& params, Complex z);

/// log of prod Gamma_k(a_i + n alpha_i) / prod Gamma_k(b_j + n beta_j) / n!.
/// Throws PoleError naming n and the offending pair.
Complex log_term_coefficient(const WrightParams& params, unsigned n);

/// Same coefficient built from gamma_k products directly (no logarithms).
Complex term_coefficient_direct(const WrightParams& params, unsigned n);

/// n-th term of the series at z.
Complex wright_term(const WrightParams& params, Complex z, unsigned n);

struct SeriesResult {
    Complex value;
    double est_error;  // absolute tail estimate
    unsigned terms;
};

/// Sums the series after classify() has accepted z. DomainError when z is
/// outside the convergence region, NonConvergenceError at the term cap.
SeriesResult eval_kwright_detailed(const WrightParams& params, Complex z, double tol = 1e-12,
                                   unsigned term_cap = 0);
Complex eval_kwright(const WrightParams& params, Complex z, double tol = 1e-12);

/// Sum of the first n_terms terms, no convergence gate.
Complex kwright_partial_sum(const WrightParams& params, Complex z, unsigned n_terms);

}  // namespace kwright
