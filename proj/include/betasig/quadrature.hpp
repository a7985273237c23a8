#pragma once

#include <functional>
#include <span>

namespace betasig::quad {

/// Integrand over a subinterval of (0,1). The engine supplies ln(x) and
/// ln(1-x) computed without cancellation all the way into the endpoints,
/// so log-space densities stay accurate where x or 1-x underflows the
/// spacing of doubles near 1.
using UnitIntegrand = std::function<double(double x, double ln_x, double ln_1mx)>;

/// Integral of f over (0,1) by tanh-sinh (double-exponential) quadrature.
///
/// The substitution clusters nodes double-exponentially at both endpoints,
/// which integrates the algebraically singular tails of Beta densities with
/// shapes < 1 to full precision; a plain truncated rule loses ~1e-2 on those.
/// `breakpoints` lists interior kink locations (e.g. density crossings under
/// an absolute value); the interval is split there and each smooth piece is
/// integrated separately.
///
/// Converges when two successive levels agree to tol * max(1, |I|).
/// Throws NumericalError with diagnostics if a piece fails to converge or
/// the integrand produces a non-finite value.
double integrate_unit(const UnitIntegrand& f, double tol = 1e-10,
                      std::span<const double> breakpoints = {});

/// Single tanh-sinh piece on (lo, hi), 0 <= lo < hi <= 1.
double integrate_piece(const UnitIntegrand& f, double lo, double hi, double tol);

} // namespace betasig::quad
