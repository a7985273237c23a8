#pragma once

#include <cstdint>
#include <optional>

#include "betasig/beta_model.hpp"
#include "betasig/signals.hpp"

namespace betasig {

/// A fitted pair of score distributions plus the class balance: enough to
/// express every thresholded indicator as a smooth function of the
/// threshold, via expected confusion fractions
///   tp = prev * (1 - CDF_tr(t)),  fp = (1 - prev) * (1 - CDF_fr(t)),
///   fn = prev * CDF_tr(t),        tn = (1 - prev) * CDF_fr(t).
struct SmoothModel {
    BetaParams tr;
    BetaParams fr;
    double prevalence; // fraction of label-1 samples, in (0, 1)
    SmoothModel(BetaParams tr_, BetaParams fr_, double prevalence_);
};

/// |first_derivative| above this default flags a threshold as steep: the
/// metric would move by more than 0.2 under a 0.1 threshold drift.
inline constexpr double kDefaultSteepnessTolerance = 2.0;
inline constexpr double kDefaultDerivativeStep = 1e-4;

struct StabilityReport {
    double threshold;
    double value;
    double first_derivative;
    double second_derivative;
    bool flagged_steep; // |first_derivative| > steepness tolerance
};

struct PerturbationDelta {
    double before;
    double after;
    double delta; // after - before
};

struct CredibleInterval {
    double lo, hi;
};

enum class SeparationMetric { js_distance, l1 };

/// Pointwise evaluation of the extremal-separation inequalities for one
/// (P, Q) pair against the left/right epsilon-Beta references L, R:
///   lower: d(R,L) >= d(P,Q)          upper: d(R,L) <= d(L,P)+d(P,Q)+d(Q,R)
/// These are reported, never asserted: they are a heuristic, not a theorem.
/// Comparisons allow `slack` of numerical drift (quadrature tolerance).
struct BoundsReport {
    double d_RL;
    double d_PQ;
    double d_LP;
    double d_QR;
    double upper_bound_rhs; // d_LP + d_PQ + d_QR
    bool lower_holds;
    bool upper_holds;
    double slack;
};

/// Monte-Carlo summary of the bound checks over random (P, Q) pairs.
/// Deterministic given the seed.
struct BoundsMcSummary {
    int trials;
    int lower_violations;
    int upper_violations;
    double min_lower_margin; // min over trials of d_RL - d_PQ
    double min_upper_margin; // min over trials of rhs - d_RL
    std::uint64_t seed;
};

/// The requested indicator as a smooth function of the threshold.
/// nullopt when the metric's denominator vanishes at this threshold.
std::optional<double> smooth_metric(const SmoothModel& model, MetricKind metric,
                                    double threshold);

/// Central finite differences of smooth_metric. Requires t +- 2*step inside
/// (0,1). nullopt if the metric is undefined anywhere on the stencil.
std::optional<StabilityReport> metric_derivatives(
    const SmoothModel& model, MetricKind metric, double threshold,
    double step = kDefaultDerivativeStep,
    double steepness_tolerance = kDefaultSteepnessTolerance);

/// Metric change under a threshold shift; nullopt on undefined endpoints.
std::optional<PerturbationDelta> perturbation_delta(const SmoothModel& model,
                                                    MetricKind metric,
                                                    double threshold, double shift);

/// Equal-tail interval covering `mass` of the distribution:
/// [quantile((1-mass)/2), quantile((1+mass)/2)].
CredibleInterval credible_interval(const BetaParams& p, double mass);

BoundsReport check_separation_bounds(const BetaParams& p, const BetaParams& q,
                                     double epsilon, double concentration,
                                     SeparationMetric metric);

BoundsMcSummary separation_bounds_mc(double epsilon, double concentration,
                                     SeparationMetric metric, int trials,
                                     std::uint64_t seed, double shape_lo = 1.0,
                                     double shape_hi = 30.0);

} // namespace betasig
