#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "betasig/beta_model.hpp"
#include "betasig/errors.hpp"
#include "betasig/random.hpp"
#include "betasig/regularizer.hpp"
#include "betasig/signals.hpp"

using namespace betasig;

namespace {

std::vector<ScoredSample> random_instance(std::mt19937_64& rng, int per_class) {
    std::vector<ScoredSample> samples;
    samples.reserve(2 * per_class);
    for (int i = 0; i < per_class; ++i) {
        samples.push_back({uniform_in(rng, 0.5, 0.95), 1});
        samples.push_back({uniform_in(rng, 0.05, 0.5), 0});
    }
    return samples;
}

double fd_gradient(std::vector<ScoredSample> samples, std::size_t i, double h) {
    samples[i].score += h;
    const double up = kl_separation(samples);
    samples[i].score -= 2.0 * h;
    const double down = kl_separation(samples);
    return (up - down) / (2.0 * h);
}

} // namespace

TEST_CASE("kl_separation on tight separated clusters is large") {
    std::mt19937_64 rng(50);
    std::vector<ScoredSample> samples;
    for (int i = 0; i < 100; ++i) {
        samples.push_back({uniform_in(rng, 0.89, 0.91), 1});
        samples.push_back({uniform_in(rng, 0.09, 0.11), 0});
    }
    CHECK(kl_separation(samples) >= 10.0);
}

TEST_CASE("kl_separation near zero when both classes share a distribution") {
    std::mt19937_64 rng(51);
    std::vector<ScoredSample> samples;
    for (int i = 0; i < 1000; ++i) {
        samples.push_back({uniform_in(rng, 0.2, 0.8), static_cast<int>(rng() % 2)});
    }
    CHECK(kl_separation(samples) <= 0.05);
}

TEST_CASE("kl_separation is invariant under sample reordering") {
    std::mt19937_64 rng(52);
    std::vector<ScoredSample> samples = random_instance(rng, 30);
    const double before = kl_separation(samples);
    std::reverse(samples.begin(), samples.end());
    // moments are permutation-invariant; only summation rounding may differ
    CHECK(kl_separation(samples) == doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central finite differences") {
    std::mt19937_64 rng(53);
    const std::vector<ScoredSample> samples = random_instance(rng, 25); // n = 50
    const RegularizerGrad grad = kl_separation_grad(samples);
    REQUIRE(grad.gradient.size() == samples.size());
    const double h = 1e-6;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const double fd = fd_gradient(samples, i, h);
        // floor shields zero-crossing coordinates from the ~5e-9 absolute
        // noise of the difference quotient itself
        const double rel = std::fabs(grad.gradient[i] - fd) /
                           std::max(std::fabs(fd), 1e-2);
        CHECK(rel <= 1e-5);
    }
}

TEST_CASE("minimal two-samples-per-class instance is differentiable") {
    const std::vector<ScoredSample> samples = {{0.7, 1}, {0.85, 1}, {0.2, 0}, {0.35, 0}};
    const RegularizerGrad grad = kl_separation_grad(samples);
    const double h = 1e-6;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(std::isfinite(grad.gradient[i]));
        CHECK(std::isfinite(grad.curvature[i]));
        const double fd = fd_gradient(samples, i, h);
        CHECK(std::fabs(grad.gradient[i] - fd) / std::max(std::fabs(fd), 1e-8) <= 1e-5);
    }
}

TEST_CASE("curvature matches the finite difference of kl_separation") {
    std::mt19937_64 rng(54);
    const std::vector<ScoredSample> samples = random_instance(rng, 10);
    const RegularizerGrad grad = kl_separation_grad(samples);
    const double h = 1e-4;
    for (std::size_t i = 0; i < samples.size(); i += 5) {
        std::vector<ScoredSample> up = samples;
        up[i].score += h;
        std::vector<ScoredSample> down = samples;
        down[i].score -= h;
        const double fd2 = (kl_separation(up) - 2.0 * kl_separation(samples) +
                            kl_separation(down)) /
                           (h * h);
        CHECK(std::fabs(grad.curvature[i] - fd2) /
                  std::max(std::fabs(fd2), 1.0) < 1e-3);
    }
}

TEST_CASE("gradient sign pushes class 1 toward more separation") {
    std::mt19937_64 rng(55);
    std::vector<ScoredSample> tight;
    for (int i = 0; i < 50; ++i) {
        tight.push_back({uniform_in(rng, 0.89, 0.91), 1});
        tight.push_back({uniform_in(rng, 0.09, 0.11), 0});
    }
    // shifting every class-1 score up increases the separation; the
    // class-1 gradient entries must sum positive, and the analytic sum
    // must agree with a uniform-shift finite difference
    const RegularizerGrad grad = kl_separation_grad(tight);
    double class1_sum = 0.0;
    for (std::size_t i = 0; i < tight.size(); ++i) {
        if (tight[i].label == 1) class1_sum += grad.gradient[i];
    }
    const double h = 1e-7;
    std::vector<ScoredSample> up = tight, down = tight;
    for (auto& s : up) {
        if (s.label == 1) s.score += h;
    }
    for (auto& s : down) {
        if (s.label == 1) s.score -= h;
    }
    const double fd = (kl_separation(up) - kl_separation(down)) / (2.0 * h);
    CHECK(class1_sum > 0.0);
    CHECK(fd > 0.0);
    CHECK(class1_sum == doctest::Approx(fd).epsilon(1e-4));

    // on moderately separated clusters the full separating direction
    // (+1 for class 1, -1 for class 0) also has positive alignment
    std::vector<ScoredSample> moderate;
    for (int i = 0; i < 50; ++i) {
        moderate.push_back({uniform_in(rng, 0.6, 0.8), 1});
        moderate.push_back({uniform_in(rng, 0.2, 0.4), 0});
    }
    const RegularizerGrad mg = kl_separation_grad(moderate);
    double dot = 0.0;
    for (std::size_t i = 0; i < moderate.size(); ++i) {
        dot += mg.gradient[i] * (moderate[i].label == 1 ? 1.0 : -1.0);
    }
    CHECK(dot > 0.0);
}

TEST_CASE("gradient entries permute with the samples") {
    std::mt19937_64 rng(56);
    std::vector<ScoredSample> samples = random_instance(rng, 15);
    const RegularizerGrad base = kl_separation_grad(samples);
    std::vector<std::size_t> perm(samples.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<ScoredSample> permuted(samples.size());
    for (std::size_t i = 0; i < perm.size(); ++i) permuted[i] = samples[perm[i]];
    const RegularizerGrad shuffled = kl_separation_grad(permuted);
    for (std::size_t i = 0; i < perm.size(); ++i) {
        CHECK(shuffled.gradient[i] ==
              doctest::Approx(base.gradient[perm[i]]).epsilon(1e-12));
    }
}

TEST_CASE("boundary scores are a hard error for the gradient") {
    const std::vector<ScoredSample> samples = {{kScoreClipLo, 1}, {0.8, 1},
                                               {0.2, 0},          {0.3, 0}};
    CHECK_THROWS_AS(kl_separation_grad(samples), DataError);
    const std::vector<ScoredSample> high = {{0.7, 1}, {0.8, 1},
                                            {0.2, 0}, {kScoreClipHi, 0}};
    CHECK_THROWS_AS(kl_separation_grad(high), DataError);
}

TEST_CASE("export_objective equals -lambda times the gradient") {
    std::mt19937_64 rng(57);
    const std::vector<ScoredSample> samples = random_instance(rng, 20);
    std::vector<double> scores;
    std::vector<int> labels;
    for (const auto& s : samples) {
        scores.push_back(s.score);
        labels.push_back(s.label);
    }
    const RegularizerGrad grad = kl_separation_grad(samples);
    const double lambda = 0.37;
    const ObjectiveContribution contrib = export_objective(scores, labels, lambda);
    REQUIRE(contrib.gradient.size() == scores.size());
    for (std::size_t i = 0; i < scores.size(); ++i) {
        CHECK(contrib.gradient[i] == -lambda * grad.gradient[i]);
        CHECK(contrib.curvature[i] == -lambda * grad.curvature[i]);
    }

    // doubling lambda doubles the contribution exactly
    const ObjectiveContribution twice = export_objective(scores, labels, 2.0 * lambda);
    for (std::size_t i = 0; i < scores.size(); ++i) {
        CHECK(twice.gradient[i] == 2.0 * contrib.gradient[i]);
    }

    // lambda = 0 contributes nothing
    const ObjectiveContribution zero = export_objective(scores, labels, 0.0);
    for (double g : zero.gradient) CHECK(g == 0.0);
    for (double c : zero.curvature) CHECK(c == 0.0);

    CHECK_THROWS_AS(export_objective(scores, labels, -1.0), DomainError);
    scores.pop_back();
    CHECK_THROWS_AS(export_objective(scores, labels, 1.0), DataError);
}

TEST_CASE("export_objective composes into the demo trainer's first step") {
    const DemoDataset data = make_demo_dataset(80, 21);
    DemoTrainConfig config;
    config.lambda = 0.25;
    config.learning_rate = 0.3;
    config.epochs = 1;
    config.seed = 21;
    const DemoTrainResult trained = demo_train(data.features, data.labels, config);

    // rebuild the same step from the exported objective contract:
    // dz = d BCE / dz + contribution * dsigmoid
    std::mt19937_64 rng(config.seed);
    std::vector<double> w(3);
    {
        const auto [g1, g2] = gauss_pair(rng);
        w[0] = 0.01 * g1;
        w[1] = 0.01 * g2;
        const auto [g3, g4] = gauss_pair(rng);
        (void)g4;
        w[2] = 0.01 * g3;
    }
    const std::size_t n = data.features.size();
    std::vector<double> scores(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double z = w[0] * data.features[i][0] + w[1] * data.features[i][1] + w[2];
        scores[i] = 1.0 / (1.0 + std::exp(-z));
    }
    const ObjectiveContribution contrib =
        export_objective(scores, data.labels, config.lambda);
    std::vector<double> grad(3, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double dz = (scores[i] - data.labels[i]) / static_cast<double>(n) +
                          contrib.gradient[i] * scores[i] * (1.0 - scores[i]);
        grad[0] += dz * data.features[i][0];
        grad[1] += dz * data.features[i][1];
        grad[2] += dz;
    }
    for (int j = 0; j < 3; ++j) {
        const double expected = w[j] - config.learning_rate * grad[j];
        CHECK(trained.weights[j] == doctest::Approx(expected).epsilon(1e-14));
    }
}

TEST_CASE("demo_train with lambda 0 reproduces plain logistic regression") {
    const DemoDataset data = make_demo_dataset(120, 99);
    DemoTrainConfig config;
    config.lambda = 0.0;
    config.learning_rate = 0.4;
    config.epochs = 25;
    config.seed = 99;
    const DemoTrainResult result = demo_train(data.features, data.labels, config);

    // reference implementation: textbook full-batch logistic regression with
    // the same seeded initialization
    std::mt19937_64 rng(config.seed);
    std::vector<double> w(3);
    {
        const auto [g1, g2] = gauss_pair(rng);
        w[0] = 0.01 * g1;
        w[1] = 0.01 * g2;
        const auto [g3, g4] = gauss_pair(rng);
        (void)g4;
        w[2] = 0.01 * g3;
    }
    const std::size_t n = data.features.size();
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        std::vector<double> grad(3, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            const double z =
                w[0] * data.features[i][0] + w[1] * data.features[i][1] + w[2];
            const double s = 1.0 / (1.0 + std::exp(-z));
            const double d = (s - data.labels[i]) / static_cast<double>(n);
            grad[0] += d * data.features[i][0];
            grad[1] += d * data.features[i][1];
            grad[2] += d;
        }
        for (int j = 0; j < 3; ++j) w[j] -= config.learning_rate * grad[j];
    }
    REQUIRE(result.weights.size() == 3);
    for (int j = 0; j < 3; ++j) {
        CHECK(result.weights[j] == w[j]); // bit-identical trajectories
    }
}

TEST_CASE("demo_train history is finite with nonnegative separation") {
    const DemoDataset data = make_demo_dataset(200, 5);
    DemoTrainConfig config;
    config.lambda = 0.1;
    config.epochs = 30;
    config.seed = 5;
    const DemoTrainResult result = demo_train(data.features, data.labels, config);
    REQUIRE(result.history.size() == 30);
    int epoch = 1;
    for (const EpochStats& e : result.history) {
        CHECK(e.epoch == epoch++);
        CHECK(std::isfinite(e.loss));
        CHECK(std::isfinite(e.kl_separation));
        CHECK(e.kl_separation >= 0.0);
        CHECK(e.accuracy >= 0.0);
        CHECK(e.accuracy <= 1.0);
    }
}

TEST_CASE("regularized run ends with at least the vanilla separation") {
    const DemoDataset data = make_demo_dataset(400, 7);
    DemoTrainConfig vanilla;
    vanilla.lambda = 0.0;
    vanilla.epochs = 50;
    vanilla.seed = 7;
    DemoTrainConfig regularized = vanilla;
    regularized.lambda = 0.1;
    const auto v = demo_train(data.features, data.labels, vanilla);
    const auto r = demo_train(data.features, data.labels, regularized);
    CHECK(r.history.back().kl_separation >= v.history.back().kl_separation);
    CHECK(r.history.back().accuracy >= v.history.back().accuracy - 0.02);
}

TEST_CASE("demo_train input validation") {
    const DemoDataset data = make_demo_dataset(50, 1);
    DemoTrainConfig config;
    CHECK_THROWS_AS(demo_train({}, std::vector<int>{}, config), DataError);
    CHECK_THROWS_AS(demo_train(data.features, std::vector<int>(50, 1), config), DataError);
    std::vector<std::vector<double>> ragged = data.features;
    ragged[3].push_back(0.0);
    CHECK_THROWS_AS(demo_train(ragged, data.labels, config), DataError);
    DemoTrainConfig bad = config;
    bad.learning_rate = 0.0;
    CHECK_THROWS_AS(demo_train(data.features, data.labels, bad), DomainError);
}

TEST_CASE("make_demo_dataset is deterministic and balanced") {
    const DemoDataset a = make_demo_dataset(100, 42);
    const DemoDataset b = make_demo_dataset(100, 42);
    CHECK(a.features == b.features);
    CHECK(a.labels == b.labels);
    int positives = 0;
    for (int label : a.labels) positives += label;
    CHECK(positives == 50);
    CHECK_THROWS_AS(make_demo_dataset(2, 1), DataError);
}
