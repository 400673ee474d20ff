#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>

#include "kwright/kwright.hpp"

namespace kwtest {

using kwright::Complex;

inline double rel_err(Complex got, Complex want) {
    const double scale = std::abs(want);
    return scale == 0.0 ? std::abs(got) : std::abs(got - want) / scale;
}

// Composite Simpson on [a, b]; independent of the library's tanh-sinh rules.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Gauss 2F1 by its plain series; test-side reference for |z| <= 0.5.
inline Complex gauss_series(Complex a, Complex b, Complex c, Complex z, int terms = 400) {
    Complex term = 1.0, sum = 1.0;
    for (int n = 0; n < terms; ++n) {
        term *= (a + double(n)) * (b + double(n)) / ((c + double(n)) * double(n + 1)) * z;
        sum += term;
    }
    return sum;
}

// Real z < 1: plain series, or the Pfaff transform z / (z - 1) for z < -1/2.
inline Complex gauss_ref(Complex a, Complex b, Complex c, double z) {
    if (z >= -0.5) return gauss_series(a, b, c, z);
    return std::pow(1.0 - z, -a) * gauss_series(a, c - b, c, z / (z - 1.0));
}

// Truncated double sum of F3, m, n < terms.
inline Complex f3_double_sum(Complex a, Complex ap, Complex b, Complex bp, Complex g, Complex x, Complex y,
                             int terms = 200) {
    Complex sum = 0.0;
    Complex row = 1.0;  // (a)_m (b)_m x^m / (g)_m m!
    Complex g_m = 1.0;  // (g)_m, carried so inner terms use (g)_{m+n}
    for (int m = 0; m < terms; ++m) {
        Complex inner = row;
        for (int n = 0; n < terms; ++n) {
            sum += inner;
            inner *= (ap + double(n)) * (bp + double(n)) / ((g + double(m + n)) * double(n + 1)) * y;
            if (std::abs(inner) < 1e-20 * std::abs(sum)) break;
        }
        row *= (a + double(m)) * (b + double(m)) / ((g + double(m)) * double(m + 1)) * x;
        g_m *= g + double(m);
        if (std::abs(row) < 1e-20 * std::abs(sum)) break;
    }
    return sum;
}

inline double tgamma_c(double x) { return std::tgamma(x); }

}  // namespace kwtest
