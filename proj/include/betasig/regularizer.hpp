#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "betasig/scored_sample.hpp"

namespace betasig {

/// Sensitivity of the TR/FR separation to each individual score.
struct RegularizerGrad {
    std::vector<double> gradient;  // d KL / d score_i, aligned with the input order
    std::vector<double> curvature; // diagonal d^2 KL / d score_i^2 (finite difference)
    double kl_value;
};

/// The additive term an external booster folds into its own objective:
/// gradient and diagonal curvature of -lambda * kl_separation, in the
/// "gradient of the loss to be minimized" sign convention.
struct ObjectiveContribution {
    std::vector<double> gradient;
    std::vector<double> curvature;
};

struct DemoTrainConfig {
    double lambda = 0.1;        // separation weight; 0 disables the term
    double learning_rate = 0.5;
    int epochs = 60;
    std::uint64_t seed = 42;    // weight initialization
};

struct EpochStats {
    int epoch;
    double loss; // BCE - lambda * kl_separation
    double accuracy;
    std::optional<double> mcc; // undefined while one class is never predicted
    double kl_separation;
};

struct DemoTrainResult {
    std::vector<double> weights; // one per feature plus trailing bias
    std::vector<EpochStats> history;
};

struct DemoDataset {
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
};

/// KL(tr || fr) between the Betas fitted to each class's scores.
/// Large when the classes' score distributions are well separated.
double kl_separation(std::span<const ScoredSample> samples);

/// Analytic gradient of kl_separation with respect to every score, chained
/// through the moment fit: for sample i of class c,
///   d mu_c / d s_i = 1/n_c,   d var_c / d s_i = 2 (s_i - mu_c) / n_c,
/// composed with the moment-to-shape Jacobian and the KL partials in the
/// shape parameters (digamma/trigamma terms).
///
/// Every score must lie strictly inside the clipping interval: at the clip
/// boundary the fit is not differentiable and this throws DataError rather
/// than fabricating a zero gradient.
RegularizerGrad kl_separation_grad(std::span<const ScoredSample> samples);

/// The custom-objective contract: aligned (scores, labels) arrays in, the
/// regularizer's aligned (gradient, curvature) contribution out. Pure and
/// stateless; the fit is recomputed from the current scores on every call.
ObjectiveContribution export_objective(std::span<const double> scores,
                                       std::span<const int> labels, double lambda);

/// Full-batch gradient descent on
///   loss = BCE(sigmoid(X w + b), y) - lambda * kl_separation(scores)
/// with the separation gradient chained through the logistic derivative.
/// Deterministic given config.seed. Throws NumericalError (with the epoch
/// index) if the loss leaves the finite range.
DemoTrainResult demo_train(const std::vector<std::vector<double>>& features,
                           std::span<const int> labels, const DemoTrainConfig& config);

/// Two overlapping Gaussian clouds in 2-D: the synthetic data behind the
/// train-demo command. Labels alternate, so classes are balanced.
DemoDataset make_demo_dataset(int n, std::uint64_t seed, double spread = 1.5);

} // namespace betasig
