#pragma once

#include <span>

#include "betasig/scored_sample.hpp"

namespace betasig {

/// Shape parameters of a Beta distribution; the parametric form of a
/// class-conditional score curve. Construction validates alpha > 0,
/// beta > 0, both finite.
struct BetaParams {
    double alpha;
    double beta;
    BetaParams(double alpha_, double beta_);
};

/// Mean and variance of a distribution on (0,1).
struct Moments {
    double mu;  // in (0, 1)
    double var; // in (0, mu*(1-mu))
};

enum class EpsilonSide { left, right };

/// A fitted pair of class-conditional score distributions.
struct SignalPair {
    BetaParams tr; // label-1 scores
    BetaParams fr; // label-0 scores
};

// Raw scores of exactly 0 or 1 are clipped into this closed interval
// before fitting; the Beta support is open.
inline constexpr double kScoreClipLo = 1e-6;
inline constexpr double kScoreClipHi = 1.0 - 1e-6;

double clip_score(double s);

/// Density of Beta(p) at interior x, evaluated in log space.
/// Throws DomainError for x outside (0,1) (endpoint values can be
/// infinite when a shape is below 1).
double beta_pdf(const BetaParams& p, double x);

/// CDF of Beta(p) at x in [0,1].
double beta_cdf(const BetaParams& p, double x);

/// mu = a/(a+b), var = ab / ((a+b)^2 (a+b+1)).
Moments beta_moments(const BetaParams& p);

/// Algebraic inverse of beta_moments:
///   alpha = ((1-mu)/var - 1/mu) * mu^2,  beta = (1/mu - 1) * alpha.
/// Throws DataError when no Beta has these moments (var >= mu*(1-mu)),
/// DomainError when the moments are malformed.
BetaParams beta_from_moments(const Moments& m);

/// Method-of-moments fit on samples in (0,1). Uses the population
/// variance (divide by n); this keeps the fit exactly differentiable in
/// each sample, which the score-gradient machinery relies on. Throws
/// DataError: fewer than 2 samples, zero variance (degenerate), or
/// infeasible moments.
BetaParams fit_beta_moments(std::span<const double> samples);

/// Splits samples by label, clips scores, fits each class.
/// Fit errors are rethrown tagged with the failing class.
SignalPair fit_signal_pair(std::span<const ScoredSample> samples);

/// Extremal reference signal with shape ratio pinned at epsilon/2:
/// left  -> (alpha, beta) = (c, c*eps/2), mass near 1;
/// right -> the mirror, mass near 0.
/// The ratio constraint fixes only beta/alpha; `concentration` is the free
/// scale.
BetaParams make_epsilon_beta(double epsilon, EpsilonSide side, double concentration);

/// left: beta/alpha < epsilon; right: alpha/beta < epsilon.
bool is_epsilon_beta(const BetaParams& p, double epsilon, EpsilonSide side);

} // namespace betasig
