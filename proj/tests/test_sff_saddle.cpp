#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "sykh/sff_saddle.hpp"

using namespace sykh;

namespace {

// Direct evaluation of the trace formula with a complex square root.
double s0_direct(double lambda, double u, double T) {
    const std::complex<double> root = std::sqrt(std::complex<double>(lambda * lambda - u * u, 0.0));
    const double tr = 8.0 * std::cosh(0.5 * T * root).real() + 2.0 * std::cosh(lambda * T) + 6.0;
    return std::log(tr);
}

// Brute-force maximum along lambda = gamma0 g^(q-1).
double reduced_max_by_grid(const ModelParams& p, double T) {
    double best = -INFINITY;
    const int n = 400000;
    for (int k = 0; k <= n; ++k) {
        const double g = double(k) / n;
        const double lambda = p.gamma0() * std::pow(g, p.q() - 1);
        const double v = s0_direct(lambda, p.U(), T) + p.gamma0() * T / p.q() * (std::pow(g, p.q()) - 1.0) -
                         lambda * T * g;
        best = std::max(best, v);
    }
    return best;
}

}  // namespace

TEST_CASE("s0 against the direct formula") {
    for (double lambda : {0.0, 0.3, 1.0, 2.5})
        for (double u : {0.0, 0.5, 2.0, 4.0})
            for (double T : {0.0, 0.7, 3.0, 9.0}) {
                CAPTURE(lambda);
                CAPTURE(u);
                CAPTURE(T);
                const double direct = s0_direct(lambda, u, T);
                if (std::isfinite(direct) && direct > -20.0) CHECK(s0(lambda, u, T) == doctest::Approx(direct).epsilon(1e-12));
            }
    CHECK(s0(0.0, 0.0, 0.0) == doctest::Approx(4.0 * std::numbers::ln2).epsilon(1e-15));
    CHECK_THROWS_AS(s0(1.0, 1.0, -1.0), std::invalid_argument);
}

TEST_CASE("s0 stays finite for large lambda T") {
    const double v = s0(100.0, 1.0, 100.0);
    REQUIRE(std::isfinite(v));
    // dominated by 2 cosh(lambda T) + 8 cosh(T sqrt(lambda^2 - U^2) / 2) ~ e^{lambda T}
    CHECK(v == doctest::Approx(1e4).epsilon(1e-12));
}

TEST_CASE("s0 at a zero of the trace") {
    // lambda = 0: trace = 8 + 8 cos(U T / 2), zero at U T = 2 pi
    const double v = s0(0.0, 1.0, 2.0 * std::numbers::pi);
    CHECK((v == -INFINITY || v < -30.0));
}

TEST_CASE("trace identity on a grid") {
    for (double lambda : {0.0, 0.5, 1.0, 2.0, 3.5})
        for (double u : {0.0, 0.5, 1.0, 2.0, 3.0})
            for (double T : {0.1, 0.5, 1.0, 2.0, 4.0}) {
                const double tr = trace_h1_numeric(lambda, ModelParams::from_gamma0(1.0, 4, u), T);
                CAPTURE(lambda);
                CAPTURE(u);
                CAPTURE(T);
                CHECK(std::abs(std::log(tr) / s0(lambda, u, T) - 1.0) < 1e-10);
            }
}

TEST_CASE("objective and diagonal value") {
    const auto p = ModelParams::from_gamma0(1.0, 4, 2.0);
    const double T = 3.0;
    CHECK(diagonal_value(p, T) == doctest::Approx(std::log(8.0 + 8.0 * std::cos(T)) - T / 4).epsilon(1e-13));
    CHECK(sff_objective(1.0, 1.0, p, T) == doctest::Approx(s0(1.0, 2.0, T) - T).epsilon(1e-13));
}

TEST_CASE("maximize_sff endpoints") {
    for (double u : {0.0, 1.0, 3.0}) {
        const auto p = ModelParams::from_gamma0(1.0, 4, u);
        const auto r0 = maximize_sff(p, 0.0);
        CHECK(r0.value == 4.0 * std::numbers::ln2);
        CHECK(r0.label == SaddleLabel::diagonal);
        CHECK(std::abs(maximize_sff(p, 20.0).value) < 0.01);
    }
    CHECK_THROWS_AS(maximize_sff(ModelParams(1.0, 4, 0.0), -1.0), std::invalid_argument);
}

TEST_CASE("maximize_sff against a brute-force scan") {
    for (int q : {2, 4, 6})
        for (double u : {0.5, 2.0, 3.0})
            for (double T : {0.5, 2.0, 5.0, 9.0}) {
                const auto p = ModelParams::from_gamma0(1.0, q, u);
                const auto r = maximize_sff(p, T);
                CAPTURE(q);
                CAPTURE(u);
                CAPTURE(T);
                CHECK(r.value == doctest::Approx(reduced_max_by_grid(p, T)).epsilon(1e-9));
                CHECK(r.value >= diagonal_value(p, T) - 1e-12);
                CHECK(r.value >= sff_objective(1.0, 1.0, p, T) - 1e-12);
                CHECK(r.lambda_star == doctest::Approx(std::pow(r.g_star, q - 1)).epsilon(1e-12));
                CHECK((r.label == SaddleLabel::diagonal) == (r.g_star < 1e-6));
            }
}

TEST_CASE("transition counts") {
    int previous = 0;
    for (auto [u, expected] : {std::pair{1.0, 1}, std::pair{2.0, 3}, std::pair{3.0, 5}}) {
        const auto p = ModelParams::from_gamma0(1.0, 4, u);
        const auto tc = count_transitions(p, 10.0, 2000);
        CAPTURE(u);
        CHECK(tc.count == expected);
        CHECK(tc.count >= previous);
        previous = tc.count;
        REQUIRE(tc.times.size() == std::size_t(tc.count));
        for (double t : tc.times) {
            const auto before = maximize_sff(p, t - 1e-4).label;
            const auto after = maximize_sff(p, t + 1e-4).label;
            CHECK(before != after);
        }
    }
}

TEST_CASE("transition count validation and threshold") {
    const auto p = ModelParams::from_gamma0(1.0, 4, 2.0);
    CHECK_THROWS_AS(count_transitions(p, 10.0, 999), std::invalid_argument);
    CHECK_THROWS_AS(count_transitions(p, 0.0, 1000), std::invalid_argument);
    CHECK_THROWS_AS(count_transitions(ModelParams::from_gamma0(1.0, 4, 200.0), 10.0, 1000), std::invalid_argument);
    CHECK(transition_threshold_estimate(4, 1) == doctest::Approx(std::numbers::pi / (4 * std::numbers::ln2)));
    CHECK(transition_threshold_estimate(4, 2) == doctest::Approx(2 * transition_threshold_estimate(4, 1)));
    CHECK_THROWS_AS(transition_threshold_estimate(4, 0), std::invalid_argument);
}

TEST_CASE("labels spell out") {
    CHECK(to_string(SaddleLabel::diagonal) == "diagonal");
    CHECK(to_string(SaddleLabel::connected) == "connected");
}
