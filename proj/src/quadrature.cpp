#include "betasig/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "betasig/errors.hpp"

namespace betasig::quad {

namespace {

constexpr double kPi = 3.141592653589793238462643383279503;
constexpr double kTMax = 6.0;    // node range; distances bottom out near 1e-275
constexpr int kMaxLevels = 10;
constexpr double kH0 = 0.5;

struct Piece {
    double lo, hi;
    bool touches_zero, touches_one;
};

// Sum of the +-t node pair (or the single t = 0 node). x is reconstructed
// from its exact distance to the near endpoint, never by subtraction, so
// ln(x) / ln(1-x) stay accurate deep into the tails.
double node_pair(const UnitIntegrand& f, const Piece& pc, double t) {
    const double width = pc.hi - pc.lo;
    const double r = 0.5 * width;

    const double s = 0.5 * kPi * std::sinh(t);
    const double u = 1.0 / (1.0 + std::exp(2.0 * s)); // in (0, 1/2]; small for large t
    const double w = 2.0 * kPi * r * u * (1.0 - u) * std::cosh(t);

    const auto eval = [&](double dist_lo, double dist_hi) {
        const double x = (dist_lo < dist_hi) ? pc.lo + dist_lo : pc.hi - dist_hi;
        const double ln_x = pc.touches_zero ? std::log(dist_lo) : std::log(x);
        const double ln_1mx = pc.touches_one ? std::log(dist_hi) : std::log1p(-x);
        return f(x, ln_x, ln_1mx);
    };

    const double near = 2.0 * r * u;
    if (t == 0.0) {
        return w * eval(near, width - near); // u = 1/2: midpoint once
    }
    return w * (eval(width - near, near) + eval(near, width - near));
}

double integrate_one(const UnitIntegrand& f, const Piece& pc, double tol) {
    double h = kH0;
    double total = node_pair(f, pc, 0.0);
    for (int k = 1; k * h <= kTMax; ++k) {
        total += node_pair(f, pc, k * h);
    }
    double value = h * total;

    for (int level = 1; level <= kMaxLevels; ++level) {
        h *= 0.5;
        double fresh = 0.0;
        for (int k = 1; k * h <= kTMax; k += 2) { // odd multiples only
            fresh += node_pair(f, pc, k * h);
        }
        const double refined = 0.5 * value + h * fresh;
        if (!std::isfinite(refined)) {
            std::ostringstream msg;
            msg << "quadrature: integrand produced a non-finite value on ("
                << pc.lo << ", " << pc.hi << ")";
            throw NumericalError(msg.str());
        }
        const double delta = std::fabs(refined - value);
        value = refined;
        if (level >= 2 && delta <= tol * std::max(1.0, std::fabs(value))) {
            return value;
        }
    }
    std::ostringstream msg;
    msg << "quadrature: no convergence on (" << pc.lo << ", " << pc.hi
        << ") after " << kMaxLevels << " refinement levels (value=" << value << ")";
    throw NumericalError(msg.str());
}

} // namespace

double integrate_piece(const UnitIntegrand& f, double lo, double hi, double tol) {
    if (!(lo >= 0.0 && hi <= 1.0 && lo < hi)) {
        throw DomainError("quadrature: piece must satisfy 0 <= lo < hi <= 1");
    }
    return integrate_one(f, {lo, hi, lo == 0.0, hi == 1.0}, tol);
}

double integrate_unit(const UnitIntegrand& f, double tol,
                      std::span<const double> breakpoints) {
    std::vector<double> cuts;
    for (double b : breakpoints) {
        // Kinks hugging an endpoint carry negligible mass and the
        // double-exponential clustering resolves them anyway.
        if (b > 1e-6 && b < 1.0 - 1e-6) cuts.push_back(b);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    const double piece_tol = tol / static_cast<double>(cuts.size() + 1);
    double total = 0.0;
    double lo = 0.0;
    for (double c : cuts) {
        total += integrate_piece(f, lo, c, piece_tol);
        lo = c;
    }
    total += integrate_piece(f, lo, 1.0, piece_tol);
    return total;
}

} // namespace betasig::quad
