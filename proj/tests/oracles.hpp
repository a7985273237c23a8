#pragma once

// Test-side oracles, deliberately independent of the library's numerical
// paths: a plain recursive adaptive Simpson rule (vs the tanh-sinh engine),
// <cmath> lgamma (vs the Lanczos kernel), and a rejection Beta sampler
// (vs the quantile inverse).

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

#include "betasig/random.hpp"

namespace oracle {

inline double simpson_rule(double fa, double fm, double fb, double h) {
    return (fa + 4.0 * fm + fb) * h / 6.0;
}

inline double simpson_recurse(const std::function<double(double)>& f, double a, double b,
                              double fa, double fm, double fb, double whole, double tol,
                              int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = simpson_rule(fa, flm, fm, m - a);
    const double right = simpson_rule(fm, frm, fb, b - m);
    const double err = left + right - whole;
    if (depth <= 0 || std::fabs(err) <= 15.0 * tol) {
        return left + right + err / 15.0;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

/// Adaptive Simpson on [a, b] for bounded integrands.
inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 48) {
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    return simpson_recurse(f, a, b, fa, fm, fb, simpson_rule(fa, fm, fb, b - a), tol,
                           max_depth);
}

/// Beta density via <cmath> lgamma only.
inline double beta_pdf_ref(double x, double a, double b) {
    const double ln_norm = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    return std::exp((a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - ln_norm);
}

/// Marsaglia-Tsang gamma sampler (shape only), boosted below shape 1.
inline double gamma_draw(std::mt19937_64& rng, double shape) {
    if (shape < 1.0) {
        const double u = betasig::uniform01(rng);
        return gamma_draw(rng, shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (int tries = 0; tries < 10000; ++tries) {
        auto [x, x2] = betasig::gauss_pair(rng);
        (void)x2;
        const double cube = 1.0 + c * x;
        if (cube <= 0.0) continue;
        const double v = cube * cube * cube;
        const double u = betasig::uniform01(rng);
        if (u == 0.0) continue;
        if (std::log(u) < 0.5 * x * x + d - d * v + d * std::log(v)) {
            return d * v;
        }
    }
    throw std::runtime_error("gamma_draw: rejection loop exhausted");
}

/// Beta(a,b) draw as Ga(a) / (Ga(a) + Ga(b)).
inline double beta_draw(std::mt19937_64& rng, double a, double b) {
    const double x = gamma_draw(rng, a);
    const double y = gamma_draw(rng, b);
    return x / (x + y);
}

} // namespace oracle
