#include "betasig/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "betasig/divergence.hpp"
#include "betasig/errors.hpp"
#include "betasig/random.hpp"
#include "betasig/special_functions.hpp"

namespace betasig {

SmoothModel::SmoothModel(BetaParams tr_, BetaParams fr_, double prevalence_)
    : tr(tr_), fr(fr_), prevalence(prevalence_) {
    if (!(prevalence > 0.0 && prevalence < 1.0)) {
        std::ostringstream msg;
        msg << "SmoothModel: prevalence must lie in (0,1), got " << prevalence_;
        throw DomainError(msg.str());
    }
}

std::optional<double> smooth_metric(const SmoothModel& model, MetricKind metric,
                                    double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        std::ostringstream msg;
        msg << "smooth_metric: threshold must lie strictly inside (0,1), got " << threshold;
        throw DomainError(msg.str());
    }
    const double cdf_tr = beta_cdf(model.tr, threshold);
    const double cdf_fr = beta_cdf(model.fr, threshold);
    const double prev = model.prevalence;
    const double tp = prev * (1.0 - cdf_tr);
    const double fn = prev * cdf_tr;
    const double fp = (1.0 - prev) * (1.0 - cdf_fr);
    const double tn = (1.0 - prev) * cdf_fr;
    return metrics_from_fractions(tp, fp, fn, tn).get(metric);
}

std::optional<StabilityReport> metric_derivatives(const SmoothModel& model,
                                                  MetricKind metric, double threshold,
                                                  double step,
                                                  double steepness_tolerance) {
    if (!(step > 0.0) || !std::isfinite(step)) {
        std::ostringstream msg;
        msg << "metric_derivatives: step must be positive, got " << step;
        throw DomainError(msg.str());
    }
    if (!(threshold - 2.0 * step > 0.0 && threshold + 2.0 * step < 1.0)) {
        std::ostringstream msg;
        msg << "metric_derivatives: need threshold +- 2*step inside (0,1), got t="
            << threshold << " step=" << step;
        throw DomainError(msg.str());
    }
    const auto center = smooth_metric(model, metric, threshold);
    const auto above = smooth_metric(model, metric, threshold + step);
    const auto below = smooth_metric(model, metric, threshold - step);
    if (!center || !above || !below) return std::nullopt;
    const double d1 = (*above - *below) / (2.0 * step);
    const double d2 = (*above - 2.0 * *center + *below) / (step * step);
    return StabilityReport{threshold, *center, d1, d2,
                           std::fabs(d1) > steepness_tolerance};
}

std::optional<PerturbationDelta> perturbation_delta(const SmoothModel& model,
                                                    MetricKind metric, double threshold,
                                                    double shift) {
    const double after_t = threshold + shift;
    if (!(after_t > 0.0 && after_t < 1.0)) {
        std::ostringstream msg;
        msg << "perturbation_delta: shifted threshold " << after_t << " outside (0,1)";
        throw DomainError(msg.str());
    }
    const auto before = smooth_metric(model, metric, threshold);
    const auto after = smooth_metric(model, metric, after_t);
    if (!before || !after) return std::nullopt;
    return PerturbationDelta{*before, *after, *after - *before};
}

CredibleInterval credible_interval(const BetaParams& p, double mass) {
    if (!(mass > 0.0 && mass < 1.0)) {
        std::ostringstream msg;
        msg << "credible_interval: mass must lie in (0,1), got " << mass;
        throw DomainError(msg.str());
    }
    const double tail = (1.0 - mass) / 2.0;
    return {beta_quantile(tail, p.alpha, p.beta),
            beta_quantile(1.0 - tail, p.alpha, p.beta)};
}

namespace {

double signal_distance(const BetaParams& a, const BetaParams& b, SeparationMetric metric) {
    switch (metric) {
        case SeparationMetric::js_distance: return js_distance(a, b);
        case SeparationMetric::l1: return lp_distance(a, b, 1.0);
    }
    throw DomainError("check_separation_bounds: unknown metric");
}

} // namespace

BoundsReport check_separation_bounds(const BetaParams& p, const BetaParams& q,
                                     double epsilon, double concentration,
                                     SeparationMetric metric) {
    const BetaParams left = make_epsilon_beta(epsilon, EpsilonSide::left, concentration);
    const BetaParams right = make_epsilon_beta(epsilon, EpsilonSide::right, concentration);
    constexpr double slack = 1e-8; // matches the quadrature tolerance scale
    BoundsReport rep{};
    rep.d_RL = signal_distance(right, left, metric);
    rep.d_PQ = signal_distance(p, q, metric);
    rep.d_LP = signal_distance(left, p, metric);
    rep.d_QR = signal_distance(q, right, metric);
    rep.upper_bound_rhs = rep.d_LP + rep.d_PQ + rep.d_QR;
    rep.lower_holds = rep.d_RL >= rep.d_PQ - slack;
    rep.upper_holds = rep.d_RL <= rep.upper_bound_rhs + slack;
    rep.slack = slack;
    return rep;
}

BoundsMcSummary separation_bounds_mc(double epsilon, double concentration,
                                     SeparationMetric metric, int trials,
                                     std::uint64_t seed, double shape_lo,
                                     double shape_hi) {
    if (trials < 0) {
        throw DomainError("separation_bounds_mc: trials must be >= 0");
    }
    if (!(shape_lo > 0.0 && shape_hi > shape_lo)) {
        throw DomainError("separation_bounds_mc: need 0 < shape_lo < shape_hi");
    }
    std::mt19937_64 rng(seed);
    BoundsMcSummary s{};
    s.trials = trials;
    s.seed = seed;
    s.min_lower_margin = std::numeric_limits<double>::infinity();
    s.min_upper_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
        const BetaParams p{uniform_in(rng, shape_lo, shape_hi),
                           uniform_in(rng, shape_lo, shape_hi)};
        const BetaParams q{uniform_in(rng, shape_lo, shape_hi),
                           uniform_in(rng, shape_lo, shape_hi)};
        const BoundsReport rep = check_separation_bounds(p, q, epsilon, concentration, metric);
        if (!rep.lower_holds) ++s.lower_violations;
        if (!rep.upper_holds) ++s.upper_violations;
        s.min_lower_margin = std::min(s.min_lower_margin, rep.d_RL - rep.d_PQ);
        s.min_upper_margin = std::min(s.min_upper_margin, rep.upper_bound_rhs - rep.d_RL);
    }
    return s;
}

} // namespace betasig
