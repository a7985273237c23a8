#include "betasig/regularizer.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "betasig/beta_model.hpp"
#include "betasig/divergence.hpp"
#include "betasig/errors.hpp"
#include "betasig/random.hpp"
#include "betasig/signals.hpp"
#include "betasig/special_functions.hpp"

namespace betasig {

namespace {

struct ClassMoments {
    double n = 0.0;
    double mu = 0.0;
    double var = 0.0;
};

ClassMoments class_moments(std::span<const double> scores, std::span<const int> labels,
                           int cls) {
    ClassMoments m;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] == cls) {
            m.n += 1.0;
            m.mu += scores[i];
        }
    }
    if (m.n < 2.0) {
        std::ostringstream msg;
        msg << "kl_separation: class " << cls << " has " << m.n
            << " sample(s); need at least 2 per class";
        throw DataError(msg.str());
    }
    m.mu /= m.n;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (labels[i] == cls) {
            const double d = scores[i] - m.mu;
            m.var += d * d;
        }
    }
    m.var /= m.n;
    if (m.var <= 0.0) {
        std::ostringstream msg;
        msg << "kl_separation: class " << cls << " has zero score variance";
        throw DataError(msg.str());
    }
    return m;
}

// dKL/dscore for every sample; scores are assumed interior to (0,1) but
// are NOT rechecked against the clip bounds (the public wrapper does that;
// the curvature finite difference needs to nudge past them).
std::vector<double> grad_core(std::span<const double> scores, std::span<const int> labels,
                              double* kl_out) {
    const ClassMoments tr_m = class_moments(scores, labels, 1);
    const ClassMoments fr_m = class_moments(scores, labels, 0);
    const BetaParams tr = beta_from_moments({tr_m.mu, tr_m.var});
    const BetaParams fr = beta_from_moments({fr_m.mu, fr_m.var});
    if (kl_out != nullptr) *kl_out = kl_beta(tr, fr);

    const double a1 = tr.alpha, b1 = tr.beta;
    const double a2 = fr.alpha, b2 = fr.beta;
    const double psi_sum1 = digamma(a1 + b1);
    const double tri_sum1 = trigamma(a1 + b1);
    const double cross = a2 - a1 + b2 - b1;

    // partials of the closed-form KL in the four shape parameters
    const double dKL_da1 = (a1 - a2) * trigamma(a1) + cross * tri_sum1;
    const double dKL_db1 = (b1 - b2) * trigamma(b1) + cross * tri_sum1;
    const double dKL_da2 = digamma(a2) - digamma(a2 + b2) - digamma(a1) + psi_sum1;
    const double dKL_db2 = digamma(b2) - digamma(a2 + b2) - digamma(b1) + psi_sum1;

    // chain through the moment-to-shape map per class:
    // alpha = mu*k, beta = (1-mu)*k with k = mu(1-mu)/var - 1
    const auto chain = [](const ClassMoments& m, double dda, double ddb) {
        const double mu = m.mu, v = m.var;
        const double da_dmu = (2.0 * mu - 3.0 * mu * mu) / v - 1.0;
        const double da_dv = -mu * mu * (1.0 - mu) / (v * v);
        const double db_dmu = (1.0 - mu) * (1.0 - 3.0 * mu) / v + 1.0;
        const double db_dv = -mu * (1.0 - mu) * (1.0 - mu) / (v * v);
        return std::pair<double, double>{dda * da_dmu + ddb * db_dmu,
                                         dda * da_dv + ddb * db_dv};
    };
    const auto [dKL_dmu_tr, dKL_dv_tr] = chain(tr_m, dKL_da1, dKL_db1);
    const auto [dKL_dmu_fr, dKL_dv_fr] = chain(fr_m, dKL_da2, dKL_db2);

    std::vector<double> grad(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        const bool is_tr = labels[i] == 1;
        const ClassMoments& m = is_tr ? tr_m : fr_m;
        const double dmu = is_tr ? dKL_dmu_tr : dKL_dmu_fr;
        const double dv = is_tr ? dKL_dv_tr : dKL_dv_fr;
        grad[i] = dmu / m.n + dv * 2.0 * (scores[i] - m.mu) / m.n;
    }
    return grad;
}

void split_samples(std::span<const ScoredSample> samples, std::vector<double>& scores,
                   std::vector<int>& labels) {
    scores.reserve(samples.size());
    labels.reserve(samples.size());
    for (const ScoredSample& s : samples) {
        validate_sample(s);
        scores.push_back(s.score);
        labels.push_back(s.label);
    }
}

void require_interior(std::span<const double> scores) {
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] <= kScoreClipLo || scores[i] >= kScoreClipHi) {
            std::ostringstream msg;
            msg << "kl_separation_grad: score " << scores[i] << " at index " << i
                << " sits on the clipping boundary; the fit is not differentiable there";
            throw DataError(msg.str());
        }
    }
}

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

} // namespace

double kl_separation(std::span<const ScoredSample> samples) {
    const SignalPair pair = fit_signal_pair(samples);
    return kl_beta(pair.tr, pair.fr);
}

RegularizerGrad kl_separation_grad(std::span<const ScoredSample> samples) {
    std::vector<double> scores;
    std::vector<int> labels;
    split_samples(samples, scores, labels);
    require_interior(scores);

    RegularizerGrad out;
    out.gradient = grad_core(scores, labels, &out.kl_value);

    // diagonal curvature: central difference of the analytic gradient
    constexpr double h = 1e-5;
    out.curvature.resize(scores.size());
    std::vector<double> bumped(scores.begin(), scores.end());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        bumped[i] = scores[i] + h;
        const double up = grad_core(bumped, labels, nullptr)[i];
        bumped[i] = scores[i] - h;
        const double down = grad_core(bumped, labels, nullptr)[i];
        bumped[i] = scores[i];
        out.curvature[i] = (up - down) / (2.0 * h);
    }
    return out;
}

ObjectiveContribution export_objective(std::span<const double> scores,
                                       std::span<const int> labels, double lambda) {
    if (scores.size() != labels.size()) {
        std::ostringstream msg;
        msg << "export_objective: scores (" << scores.size() << ") and labels ("
            << labels.size() << ") must be aligned";
        throw DataError(msg.str());
    }
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        std::ostringstream msg;
        msg << "export_objective: lambda must be a nonnegative real, got " << lambda;
        throw DomainError(msg.str());
    }
    std::vector<ScoredSample> samples(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        samples[i] = {scores[i], labels[i]};
        validate_sample(samples[i]);
    }
    const RegularizerGrad g = kl_separation_grad(samples);
    ObjectiveContribution out;
    out.gradient.resize(scores.size());
    out.curvature.resize(scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        out.gradient[i] = -lambda * g.gradient[i];
        out.curvature[i] = -lambda * g.curvature[i];
    }
    return out;
}

DemoTrainResult demo_train(const std::vector<std::vector<double>>& features,
                           std::span<const int> labels, const DemoTrainConfig& config) {
    const std::size_t n = features.size();
    if (n == 0 || n != labels.size()) {
        throw DataError("demo_train: features and labels must be nonempty and aligned");
    }
    const std::size_t dim = features[0].size();
    bool has_pos = false, has_neg = false;
    for (std::size_t i = 0; i < n; ++i) {
        if (features[i].size() != dim) {
            throw DataError("demo_train: ragged feature matrix");
        }
        if (labels[i] == 1) has_pos = true;
        else if (labels[i] == 0) has_neg = true;
        else throw DataError("demo_train: labels must be 0 or 1");
    }
    if (!has_pos || !has_neg) {
        throw DataError("demo_train: both classes must be present");
    }
    if (!(config.learning_rate > 0.0) || config.epochs < 1 || !(config.lambda >= 0.0)) {
        throw DomainError("demo_train: need learning_rate > 0, epochs >= 1, lambda >= 0");
    }

    // small random init so the initial scores already carry variance
    std::mt19937_64 rng(config.seed);
    std::vector<double> w(dim + 1); // trailing bias
    for (std::size_t j = 0; j < w.size(); j += 2) {
        const auto [g1, g2] = gauss_pair(rng);
        w[j] = 0.01 * g1;
        if (j + 1 < w.size()) w[j + 1] = 0.01 * g2;
    }

    std::vector<int> label_vec(labels.begin(), labels.end());
    std::vector<double> scores(n);
    const auto forward = [&]() {
        for (std::size_t i = 0; i < n; ++i) {
            double z = w[dim];
            for (std::size_t j = 0; j < dim; ++j) z += w[j] * features[i][j];
            scores[i] = sigmoid(z);
        }
    };

    DemoTrainResult result;
    result.history.reserve(config.epochs);
    std::vector<double> grad_w(dim + 1);
    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        forward();
        // d loss / d z_i: BCE term plus the chained separation term
        std::vector<double> dz(n);
        for (std::size_t i = 0; i < n; ++i) {
            dz[i] = (scores[i] - label_vec[i]) / static_cast<double>(n);
        }
        if (config.lambda > 0.0) {
            const std::vector<double> g = grad_core(scores, label_vec, nullptr);
            for (std::size_t i = 0; i < n; ++i) {
                dz[i] -= config.lambda * g[i] * scores[i] * (1.0 - scores[i]);
            }
        }
        std::fill(grad_w.begin(), grad_w.end(), 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < dim; ++j) grad_w[j] += dz[i] * features[i][j];
            grad_w[dim] += dz[i];
        }
        for (std::size_t j = 0; j <= dim; ++j) w[j] -= config.learning_rate * grad_w[j];

        forward();
        double bce = 0.0;
        std::vector<ScoredSample> snapshot(n);
        for (std::size_t i = 0; i < n; ++i) {
            bce -= label_vec[i] == 1 ? std::log(scores[i]) : std::log1p(-scores[i]);
            snapshot[i] = {scores[i], label_vec[i]};
        }
        bce /= static_cast<double>(n);
        const double kl = kl_separation(snapshot);
        const double loss = bce - config.lambda * kl;
        if (!std::isfinite(loss)) {
            std::ostringstream msg;
            msg << "demo_train: loss diverged to " << loss << " at epoch " << epoch;
            throw NumericalError(msg.str());
        }
        const Metrics m = metrics_at(confusion_at(snapshot, 0.5));
        result.history.push_back({epoch, loss, *m.accuracy, m.mcc, kl});
    }
    result.weights = std::move(w);
    return result;
}

DemoDataset make_demo_dataset(int n, std::uint64_t seed, double spread) {
    if (n < 4) {
        throw DataError("make_demo_dataset: need at least 4 samples");
    }
    if (!(spread > 0.0)) {
        throw DomainError("make_demo_dataset: spread must be positive");
    }
    std::mt19937_64 rng(seed);
    DemoDataset ds;
    ds.features.reserve(n);
    ds.labels.reserve(n);
    for (int i = 0; i < n; ++i) {
        const int label = i % 2;
        const double center = label == 1 ? 1.0 : -1.0;
        const auto [g1, g2] = gauss_pair(rng);
        ds.features.push_back({center + spread * g1, center + spread * g2});
        ds.labels.push_back(label);
    }
    return ds;
}

} // namespace betasig
