#include "betasig/divergence.hpp"

#include <cmath>
#include <sstream>

#include "betasig/errors.hpp"
#include "betasig/quadrature.hpp"
#include "betasig/special_functions.hpp"

namespace betasig {

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

struct LogDensity {
    double am1, bm1, ln_norm;
    explicit LogDensity(const BetaParams& p)
        : am1(p.alpha - 1.0), bm1(p.beta - 1.0), ln_norm(ln_beta(p.alpha, p.beta)) {}
    double operator()(double ln_x, double ln_1mx) const {
        return am1 * ln_x + bm1 * ln_1mx - ln_norm;
    }
};

// Clamp a quadrature result onto [lo, hi], tolerating drift up to `slack`
// outside it; beyond that the value indicates a real defect.
double clamp_range(double v, double lo, double hi, double slack, const char* what) {
    if (v < lo) {
        if (v > lo - slack) return lo;
    } else if (v > hi) {
        if (v < hi + slack) return hi;
    } else {
        return v;
    }
    std::ostringstream msg;
    msg << what << ": value " << v << " violates [" << lo << ", " << hi
        << "] beyond numerical slack " << slack;
    throw NumericalError(msg.str());
}

} // namespace

double kl_beta(const BetaParams& p, const BetaParams& q) {
    const double a1 = p.alpha, b1 = p.beta;
    const double a2 = q.alpha, b2 = q.beta;
    const double v = ln_beta(a2, b2) - ln_beta(a1, b1) + (a1 - a2) * digamma(a1) +
                     (b1 - b2) * digamma(b1) +
                     (a2 - a1 + b2 - b1) * digamma(a1 + b1);
    if (v < 0.0) {
        if (v > -1e-12) return 0.0;
        std::ostringstream msg;
        msg << "kl_beta: closed form returned " << v
            << ", more negative than rounding can explain";
        throw NumericalError(msg.str());
    }
    return v;
}

double js_divergence(const BetaParams& p, const BetaParams& q) {
    const LogDensity lp(p), lq(q);
    const auto half_term = [](const LogDensity& num, const LogDensity& other) {
        return [&num, &other](double, double ln_x, double ln_1mx) {
            const double ln_p = num(ln_x, ln_1mx);
            const double ln_q = other(ln_x, ln_1mx);
            // ln m = logsumexp(ln_p, ln_q) - ln 2
            const double hi = std::max(ln_p, ln_q);
            const double ln_m = hi + std::log1p(std::exp(std::min(ln_p, ln_q) - hi)) - kLn2;
            return std::exp(ln_p) * (ln_p - ln_m);
        };
    };
    const double term_p = quad::integrate_unit(half_term(lp, lq), 1e-10);
    const double term_q = quad::integrate_unit(half_term(lq, lp), 1e-10);
    return clamp_range(0.5 * term_p + 0.5 * term_q, 0.0, kLn2, 1e-8, "js_divergence");
}

double js_distance(const BetaParams& p, const BetaParams& q) {
    return std::sqrt(js_divergence(p, q));
}

std::vector<double> pdf_crossings(const BetaParams& p, const BetaParams& q) {
    // ln(pdf_p / pdf_q)(x) = da*ln(x) + db*ln(1-x) + c. Its derivative
    // da/x - db/(1-x) changes sign at most once, so the difference is
    // monotone or single-peaked and crosses zero at most twice.
    const double da = p.alpha - q.alpha;
    const double db = p.beta - q.beta;
    const double c = ln_beta(q.alpha, q.beta) - ln_beta(p.alpha, p.beta);
    if (da == 0.0 && db == 0.0) return {}; // same shape: no transversal crossing

    const auto diff = [&](double x) {
        return da * std::log(x) + db * std::log1p(-x) + c;
    };
    // stay clear of the exact endpoints; mass outside is negligible anyway
    const double lo = 1e-12;
    const double hi = 1.0 - 1e-12;

    const auto bisect = [&](double a, double b, double fa) {
        for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
            const double mid = 0.5 * (a + b);
            const double fm = diff(mid);
            if ((fm < 0.0) == (fa < 0.0)) {
                a = mid;
                fa = fm;
            } else {
                b = mid;
            }
        }
        return 0.5 * (a + b);
    };

    std::vector<double> knots{lo};
    if ((da > 0.0 && db > 0.0) || (da < 0.0 && db < 0.0)) {
        const double peak = da / (da + db); // the single stationary point
        if (peak > lo && peak < hi) knots.push_back(peak);
    }
    knots.push_back(hi);

    std::vector<double> roots;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double fa = diff(knots[i]);
        const double fb = diff(knots[i + 1]);
        if (fa == 0.0) {
            roots.push_back(knots[i]);
        } else if ((fa < 0.0) != (fb < 0.0)) {
            roots.push_back(bisect(knots[i], knots[i + 1], fa));
        }
    }
    return roots;
}

double lp_distance(const BetaParams& p, const BetaParams& q, double order) {
    if (!(order >= 1.0) || !std::isfinite(order)) {
        std::ostringstream msg;
        msg << "lp_distance: order must be >= 1, got " << order;
        throw DomainError(msg.str());
    }
    const LogDensity lp(p), lq(q);
    const auto integrand = [&](double, double ln_x, double ln_1mx) {
        const double v1 = lp(ln_x, ln_1mx);
        const double v2 = lq(ln_x, ln_1mx);
        // |e^v1 - e^v2| = e^max * (1 - e^{-|v1-v2|}), stays finite in log space
        const double ln_abs_diff =
            std::max(v1, v2) + std::log(-std::expm1(-std::fabs(v1 - v2)));
        return std::exp(order * ln_abs_diff);
    };
    const std::vector<double> cuts = pdf_crossings(p, q);
    const double raw = quad::integrate_unit(integrand, 1e-10, cuts);
    return std::pow(std::max(raw, 0.0), 1.0 / order);
}

double overlap_area(const BetaParams& p, const BetaParams& q) {
    const LogDensity lp(p), lq(q);
    const auto integrand = [&](double, double ln_x, double ln_1mx) {
        return std::exp(std::min(lp(ln_x, ln_1mx), lq(ln_x, ln_1mx)));
    };
    const std::vector<double> cuts = pdf_crossings(p, q);
    const double raw = quad::integrate_unit(integrand, 1e-10, cuts);
    return clamp_range(raw, 0.0, 1.0, 1e-8, "overlap_area");
}

DivergenceReport divergence_report(const BetaParams& p, const BetaParams& q,
                                   double lp_order) {
    return {kl_beta(p, q), kl_beta(q, p), js_divergence(p, q),
            lp_distance(p, q, lp_order), lp_order, overlap_area(p, q)};
}

} // namespace betasig
