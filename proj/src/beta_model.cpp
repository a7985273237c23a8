#include "betasig/beta_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "betasig/errors.hpp"
#include "betasig/special_functions.hpp"

namespace betasig {

BetaParams::BetaParams(double alpha_, double beta_) : alpha(alpha_), beta(beta_) {
    if (!(alpha > 0.0) || !(beta > 0.0) || !std::isfinite(alpha) || !std::isfinite(beta)) {
        std::ostringstream msg;
        msg << "BetaParams: shapes must be positive finite reals, got alpha=" << alpha_
            << " beta=" << beta_;
        throw DomainError(msg.str());
    }
}

double clip_score(double s) {
    return std::clamp(s, kScoreClipLo, kScoreClipHi);
}

double beta_pdf(const BetaParams& p, double x) {
    if (!(x > 0.0 && x < 1.0)) {
        std::ostringstream msg;
        msg << "beta_pdf: x must lie strictly inside (0,1), got " << x;
        throw DomainError(msg.str());
    }
    const double ln_pdf = (p.alpha - 1.0) * std::log(x) +
                          (p.beta - 1.0) * std::log1p(-x) - ln_beta(p.alpha, p.beta);
    return std::exp(ln_pdf);
}

double beta_cdf(const BetaParams& p, double x) {
    return reg_inc_beta(x, p.alpha, p.beta);
}

Moments beta_moments(const BetaParams& p) {
    const double s = p.alpha + p.beta;
    return {p.alpha / s, p.alpha * p.beta / (s * s * (s + 1.0))};
}

BetaParams beta_from_moments(const Moments& m) {
    if (!(m.mu > 0.0 && m.mu < 1.0) || !std::isfinite(m.mu)) {
        std::ostringstream msg;
        msg << "beta_from_moments: mean must lie in (0,1), got " << m.mu;
        throw DomainError(msg.str());
    }
    if (!(m.var > 0.0) || !std::isfinite(m.var)) {
        std::ostringstream msg;
        msg << "beta_from_moments: variance must be positive, got " << m.var;
        throw DomainError(msg.str());
    }
    const double bound = m.mu * (1.0 - m.mu);
    if (m.var >= bound) {
        // A silent clamp here would hide pathological (e.g. endpoint-bimodal)
        // score distributions, so this is a hard error.
        std::ostringstream msg;
        msg << "beta_from_moments: infeasible moments, var=" << m.var
            << " >= mu*(1-mu)=" << bound << "; no Beta distribution matches";
        throw DataError(msg.str());
    }
    const double alpha = ((1.0 - m.mu) / m.var - 1.0 / m.mu) * m.mu * m.mu;
    const double beta = (1.0 / m.mu - 1.0) * alpha;
    return {alpha, beta};
}

BetaParams fit_beta_moments(std::span<const double> samples) {
    if (samples.size() < 2) {
        std::ostringstream msg;
        msg << "fit_beta_moments: need at least 2 samples, got " << samples.size();
        throw DataError(msg.str());
    }
    const double n = static_cast<double>(samples.size());
    double lo = samples[0], hi = samples[0];
    double mean = 0.0;
    for (double s : samples) {
        mean += s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    if (lo == hi) {
        // all samples identical; the rounding noise of the mean could
        // otherwise masquerade as a (absurdly concentrated) real variance
        throw DataError("fit_beta_moments: zero sample variance (degenerate distribution)");
    }
    mean /= n;
    double var = 0.0;
    for (double s : samples) {
        const double d = s - mean;
        var += d * d;
    }
    var /= n; // population variance
    if (var <= 0.0) {
        throw DataError("fit_beta_moments: zero sample variance (degenerate distribution)");
    }
    return beta_from_moments({mean, var});
}

SignalPair fit_signal_pair(std::span<const ScoredSample> samples) {
    std::vector<double> tr_scores;
    std::vector<double> fr_scores;
    for (const ScoredSample& s : samples) {
        validate_sample(s);
        (s.label == 1 ? tr_scores : fr_scores).push_back(clip_score(s.score));
    }
    const auto fit_class = [](std::span<const double> scores, const char* cls) {
        if (scores.size() < 2) {
            std::ostringstream msg;
            msg << "fit_signal_pair: class " << cls << " has " << scores.size()
                << " sample(s); need at least 2 per class";
            throw DataError(msg.str());
        }
        try {
            return fit_beta_moments(scores);
        } catch (const DataError& e) {
            std::ostringstream msg;
            msg << "fit_signal_pair: class " << cls << ": " << e.what();
            throw DataError(msg.str());
        }
    };
    SignalPair pair{fit_class(tr_scores, "1 (TR)"), fit_class(fr_scores, "0 (FR)")};
    return pair;
}

BetaParams make_epsilon_beta(double epsilon, EpsilonSide side, double concentration) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        std::ostringstream msg;
        msg << "make_epsilon_beta: epsilon must lie in (0,1), got " << epsilon;
        throw DomainError(msg.str());
    }
    if (!(concentration > 0.0) || !std::isfinite(concentration)) {
        std::ostringstream msg;
        msg << "make_epsilon_beta: concentration must be positive, got " << concentration;
        throw DomainError(msg.str());
    }
    const double minor = concentration * epsilon / 2.0; // ratio eps/2 < eps
    if (side == EpsilonSide::left) {
        return {concentration, minor};
    }
    return {minor, concentration};
}

bool is_epsilon_beta(const BetaParams& p, double epsilon, EpsilonSide side) {
    if (side == EpsilonSide::left) {
        return p.beta / p.alpha < epsilon;
    }
    return p.alpha / p.beta < epsilon;
}

} // namespace betasig
