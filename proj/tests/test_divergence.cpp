#include <doctest.h>

#include <cmath>
#include <random>

#include "betasig/divergence.hpp"
#include "betasig/errors.hpp"
#include "betasig/random.hpp"
#include "oracles.hpp"

using namespace betasig;

namespace {

constexpr double kLn2 = 0.69314718055994530941723212145818;

// independent KL oracle: adaptive Simpson over the bulk of (0,1) using
// <cmath>-only densities; adequate for the bounded integrands it is fed
double kl_numeric_ref(const BetaParams& p, const BetaParams& q) {
    const auto f = [&](double x) {
        const double px = oracle::beta_pdf_ref(x, p.alpha, p.beta);
        const double qx = oracle::beta_pdf_ref(x, q.alpha, q.beta);
        return px * std::log(px / qx);
    };
    return oracle::integrate(f, 1e-9, 1.0 - 1e-9, 1e-13);
}

} // namespace

TEST_CASE("kl_beta self-divergence is exactly zero") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        const BetaParams p{uniform_in(rng, 0.2, 30.0), uniform_in(rng, 0.2, 30.0)};
        CHECK(kl_beta(p, p) == 0.0);
    }
}

TEST_CASE("kl_beta hand-derived spot value: KL(B(1,1), B(2,1)) = 1 - ln 2") {
    CHECK(std::fabs(kl_beta({1.0, 1.0}, {2.0, 1.0}) - (1.0 - kLn2)) < 1e-12);
}

TEST_CASE("kl_beta(B(2,3), B(4,2)) matches the independent oracle") {
    const double want = kl_numeric_ref({2.0, 3.0}, {4.0, 2.0});
    CHECK(std::fabs(want - 1.0725077095673425) < 1e-8); // frozen oracle output
    CHECK(std::fabs(kl_beta({2.0, 3.0}, {4.0, 2.0}) - want) < 1e-6);
}

TEST_CASE("kl_beta stays nonnegative and separates unequal pairs") {
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 100; ++trial) {
        const double a = uniform_in(rng, 0.5, 20.0);
        const double b = uniform_in(rng, 0.5, 20.0);
        const BetaParams p{a, b};
        const BetaParams q{a * 1.01, b * 0.99}; // differ by >= 1%
        CHECK(kl_beta(p, q) > 1e-9);
        CHECK(kl_beta(q, p) > 1e-9);
    }
}

TEST_CASE("kl_beta is asymmetric on skewed pairs") {
    const BetaParams p{0.6, 8.0};
    const BetaParams q{9.0, 1.2};
    CHECK(std::fabs(kl_beta(p, q) - kl_beta(q, p)) > 0.1);
}

TEST_CASE("js divergence: identity, symmetry, range") {
    const BetaParams p{3.0, 5.0};
    CHECK(js_divergence(p, p) == doctest::Approx(0.0).epsilon(1e-10));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        const BetaParams a{uniform_in(rng, 0.5, 25.0), uniform_in(rng, 0.5, 25.0)};
        const BetaParams b{uniform_in(rng, 0.5, 25.0), uniform_in(rng, 0.5, 25.0)};
        const double ab = js_divergence(a, b);
        const double ba = js_divergence(b, a);
        CHECK(std::fabs(ab - ba) < 1e-10);
        CHECK(ab >= 0.0);
        CHECK(ab <= kLn2);
    }
}

TEST_CASE("js of near-disjoint supports approaches ln 2") {
    CHECK(js_divergence({50.0, 2.0}, {2.0, 50.0}) > 0.99 * kLn2);
}

TEST_CASE("sqrt(js) obeys the triangle inequality") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 30; ++trial) {
        const BetaParams a{uniform_in(rng, 0.5, 20.0), uniform_in(rng, 0.5, 20.0)};
        const BetaParams b{uniform_in(rng, 0.5, 20.0), uniform_in(rng, 0.5, 20.0)};
        const BetaParams c{uniform_in(rng, 0.5, 20.0), uniform_in(rng, 0.5, 20.0)};
        CHECK(js_distance(a, b) <= js_distance(a, c) + js_distance(c, b) + 1e-8);
    }
}

TEST_CASE("lp distance basics") {
    const BetaParams p{4.0, 4.0};
    CHECK(lp_distance(p, p, 1.0) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK_THROWS_AS(lp_distance(p, p, 0.5), DomainError);

    // L1(B(1,1), B(2,2)): piecewise-exact integral of |1 - 6x(1-x)|
    const double want = 0.3849001794597505; // frozen piecewise-antiderivative value
    CHECK(std::fabs(lp_distance({1.0, 1.0}, {2.0, 2.0}, 1.0) - want) < 1e-9);
}

TEST_CASE("lp triangle inequality on random triples") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 20; ++trial) {
        const BetaParams a{uniform_in(rng, 1.0, 20.0), uniform_in(rng, 1.0, 20.0)};
        const BetaParams b{uniform_in(rng, 1.0, 20.0), uniform_in(rng, 1.0, 20.0)};
        const BetaParams c{uniform_in(rng, 1.0, 20.0), uniform_in(rng, 1.0, 20.0)};
        for (double order : {1.0, 2.0}) {
            CHECK(lp_distance(a, b, order) <=
                  lp_distance(a, c, order) + lp_distance(c, b, order) + 1e-8);
        }
    }
}

TEST_CASE("overlap: identity, disjointness, L1 consistency") {
    const BetaParams p{5.0, 3.0};
    CHECK(overlap_area(p, p) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(overlap_area({50.0, 2.0}, {2.0, 50.0}) < 0.01);

    std::mt19937_64 rng(10);
    for (int trial = 0; trial < 20; ++trial) {
        const BetaParams a{uniform_in(rng, 0.5, 25.0), uniform_in(rng, 0.5, 25.0)};
        const BetaParams b{uniform_in(rng, 0.5, 25.0), uniform_in(rng, 0.5, 25.0)};
        const double ov = overlap_area(a, b);
        CHECK(ov >= 0.0);
        CHECK(ov <= 1.0);
        CHECK(std::fabs(ov - (1.0 - lp_distance(a, b, 1.0) / 2.0)) < 1e-6);
    }
}

TEST_CASE("pdf crossings are genuine sign changes") {
    std::mt19937_64 rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        const BetaParams a{uniform_in(rng, 0.5, 20.0), uniform_in(rng, 0.5, 20.0)};
        const BetaParams b{uniform_in(rng, 0.5, 20.0), uniform_in(rng, 0.5, 20.0)};
        const auto cuts = pdf_crossings(a, b);
        CHECK(cuts.size() <= 2);
        for (double c : cuts) {
            if (c > 1e-6 && c < 1.0 - 1e-6) {
                const double gap = std::fabs(beta_pdf(a, c) - beta_pdf(b, c));
                const double scale = beta_pdf(a, c) + beta_pdf(b, c);
                CHECK(gap <= 1e-6 * std::max(1.0, scale));
            }
        }
    }
}

TEST_CASE("divergence_report is assembled consistently") {
    const BetaParams p{6.0, 2.0};
    const BetaParams q{2.0, 4.0};
    const DivergenceReport rep = divergence_report(p, q, 1.0);
    CHECK(rep.kl_forward == doctest::Approx(kl_beta(p, q)));
    CHECK(rep.kl_reverse == doctest::Approx(kl_beta(q, p)));
    CHECK(rep.js == doctest::Approx(js_divergence(p, q)));
    CHECK(rep.lp == doctest::Approx(lp_distance(p, q, 1.0)));
    CHECK(rep.overlap == doctest::Approx(overlap_area(p, q)));
    CHECK(rep.lp_order == 1.0);
}
