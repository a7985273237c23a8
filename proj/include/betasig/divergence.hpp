#pragma once

#include <vector>

#include "betasig/beta_model.hpp"

namespace betasig {

/// Distances between two fitted continuous signals.
struct DivergenceReport {
    double kl_forward; // KL(p || q)
    double kl_reverse; // KL(q || p)
    double js;         // Jensen-Shannon divergence, in [0, ln 2]
    double lp;         // L^order distance between the densities
    double lp_order;
    double overlap;    // integral of min(pdf_p, pdf_q), in [0, 1]
};

/// Closed-form KL(p || q) between Beta distributions:
///   ln(B(a2,b2)/B(a1,b1)) + (a1-a2) psi(a1) + (b1-b2) psi(b1)
///   + (a2-a1+b2-b1) psi(a1+b1).
/// Rounding can land the result a hair below zero; anything in (-1e-12, 0)
/// is clamped to 0 and larger negatives raise NumericalError.
double kl_beta(const BetaParams& p, const BetaParams& q);

/// Jensen-Shannon divergence by quadrature against the pointwise mixture
/// m = (pdf_p + pdf_q)/2. Always in [0, ln 2]; symmetric.
double js_divergence(const BetaParams& p, const BetaParams& q);

/// sqrt(js): the triangle-inequality-obeying metric used by the
/// separation-bound checks (raw KL and JS are not metrics).
double js_distance(const BetaParams& p, const BetaParams& q);

/// (integral |pdf_p - pdf_q|^order)^(1/order), order >= 1.
/// Note: diverges (and errors) when order * (1 - min shape) >= 1, e.g. the
/// L2 distance between densities with a shape of 0.5.
double lp_distance(const BetaParams& p, const BetaParams& q, double order);

/// integral of min(pdf_p, pdf_q): the intersection area of the two
/// densities. Satisfies overlap = 1 - L1/2.
double overlap_area(const BetaParams& p, const BetaParams& q);

/// Interior points where the two densities cross (at most two exist for
/// distinct Beta pairs). Used to split kinked integrands; exposed for tests.
std::vector<double> pdf_crossings(const BetaParams& p, const BetaParams& q);

DivergenceReport divergence_report(const BetaParams& p, const BetaParams& q,
                                   double lp_order = 1.0);

} // namespace betasig
