#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "sykh/finite_n_oracle.hpp"

using namespace sykh;

namespace {

McConfig small_config() {
    McConfig cfg;
    cfg.n_sites = 3;
    cfg.q = 2;
    cfg.J = 1.0;
    cfg.dt = 0.05;
    cfg.t_max = 1.0;
    cfg.n_samples = 40;
    return cfg;
}

// q = 2, U = 0: each of the N-1 couplings touching the probe mode removes
// J dt / (2N) per step, so the disorder average decays at (N-1) J / (2N).
double greens_finite_n_q2(int n, double J, double t) { return 0.5 * std::exp(-(n - 1) * J * t / (2.0 * n)); }

}  // namespace

TEST_CASE("configuration validation") {
    McConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    CHECK(cfg.gamma0() == 2.0);
    cfg.t_max = 3.0;
    cfg.dt = 0.01;
    CHECK(cfg.n_steps() == 300);

    auto broken = [](auto mutate) {
        McConfig c;
        mutate(c);
        return c;
    };
    CHECK_THROWS_AS(broken([](McConfig& c) { c.n_sites = 6; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.q = 3; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.q = 4; c.n_sites = 3; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.dt = 0.1; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.U = 10.0; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.n_samples = 1; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.trace_vectors = 6; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.trace_vectors = 9; }).validate(), std::invalid_argument);
    CHECK_THROWS_AS(broken([](McConfig& c) { c.t_max = -1.0; }).validate(), std::invalid_argument);
}

TEST_CASE("seeds are distinct per sample and stream") {
    std::set<std::uint64_t> seen;
    for (std::uint64_t i = 0; i < 200; ++i)
        for (std::uint64_t s = 0; s < 3; ++s) seen.insert(sample_seed(7, i, s));
    CHECK(seen.size() == 600);
    CHECK(sample_seed(7, 3, 1) == sample_seed(7, 3, 1));
    CHECK(sample_seed(7, 3) != sample_seed(8, 3));
}

TEST_CASE("coupling draws") {
    McConfig cfg;
    cfg.n_sites = 4;
    cfg.q = 2;
    cfg.J = 1.0;
    cfg.dt = 0.02;
    std::mt19937_64 rng(5);
    CHECK(sample_couplings(cfg, rng).values.size() == 24);
    CHECK(coupling_variance(cfg) == doctest::Approx(1.0 / (4 * 0.02)));

    cfg.q = 4;
    cfg.n_sites = 5;
    CHECK(sample_couplings(cfg, rng).values.size() == 20);
    CHECK(coupling_variance(cfg) == doctest::Approx(6.0 / (125.0 * 0.02)));

    // empirical variance within 4 sigma of its sampling spread
    double s = 0, ss = 0;
    long n = 0;
    for (int k = 0; k < 5000; ++k)
        for (double v : sample_couplings(cfg, rng).values) {
            s += v;
            ss += v * v;
            ++n;
        }
    const double var = ss / n - (s / n) * (s / n);
    const double expect = coupling_variance(cfg);
    CHECK(std::abs(var - expect) < 4.0 * expect * std::sqrt(2.0 / n));

    cfg.J = 0.0;
    for (double v : sample_couplings(cfg, rng).values) CHECK(v == 0.0);
}

TEST_CASE("step Hamiltonian and propagator") {
    for (int q : {2, 4}) {
        McConfig cfg;
        cfg.n_sites = 4;
        cfg.q = q;
        cfg.J = 1.0;
        cfg.U = 1.5;
        cfg.dt = 0.02;
        std::mt19937_64 rng(9);
        const auto c = sample_couplings(cfg, rng);
        const DenseOperator h = step_hamiltonian(cfg, c);
        CAPTURE(q);
        CHECK(is_hermitian(h, 1e-12));
        const DenseOperator w = step_unitary(cfg, c);
        CHECK((w.adjoint() * w - DenseOperator::Identity(w.rows(), w.cols())).norm() < 1e-11);

        const MicroscopicModel model(cfg);
        CHECK((DenseOperator(model.hamiltonian(c)) - h).norm() < 1e-12);
        Eigen::MatrixXcd v = Eigen::MatrixXcd::Random(model.dim(), 3);
        const Eigen::MatrixXcd expect = w * v;
        model.evolve(c, cfg.dt, v);
        CHECK((v - expect).norm() < 1e-11 * expect.norm());
    }
}

TEST_CASE("zero couplings and U give the identity step") {
    McConfig cfg = small_config();
    cfg.J = 0.0;
    std::mt19937_64 rng(1);
    const auto w = step_unitary(cfg, sample_couplings(cfg, rng));
    CHECK((w - DenseOperator::Identity(w.rows(), w.cols())).norm() < 1e-15);
}

TEST_CASE("Hubbard term is U (n_up - 1/2)(n_down - 1/2)") {
    McConfig cfg;
    cfg.n_sites = 2;
    cfg.q = 2;
    cfg.J = 0.0;
    cfg.U = 1.0;
    cfg.dt = 0.01;
    std::mt19937_64 rng(1);
    const DenseOperator h = step_hamiltonian(cfg, sample_couplings(cfg, rng));
    const auto chi = build_majoranas(8);
    const Complex i(0, 1);
    const double r = 1.0 / std::sqrt(2.0);
    DenseOperator expect = DenseOperator::Zero(16, 16);
    const DenseOperator id = DenseOperator::Identity(16, 16);
    for (int site = 0; site < 2; ++site) {
        const DenseOperator up = r * (chi[4 * site] + i * chi[4 * site + 1]);
        const DenseOperator down = r * (chi[4 * site + 3] + i * chi[4 * site + 2]);
        expect += (up.adjoint() * up - 0.5 * id) * (down.adjoint() * down - 0.5 * id);
    }
    CHECK((h - expect).norm() < 1e-14);
}

TEST_CASE("probe is sqrt(2) chi with unit-modulus entries") {
    const MicroscopicModel model(small_config());
    const auto chi = build_majoranas(12);
    CHECK((model.probe().to_dense() - std::sqrt(2.0) * chi[0]).norm() < 1e-14);
    for (Eigen::Index j = 0; j < model.dim(); ++j) CHECK(std::abs(model.probe().value(j)) == 1.0);
}

TEST_CASE("pure Hubbard dynamics is exact for both trace paths") {
    // Only the probe site's Hubbard string anticommutes with the probe, so
    // G(t) = cos(U t / 2) / 2 and |Tr U|^2 = 16^N cos^(2N)(U t / 4).
    for (int n : {2, 4}) {
        McConfig cfg;
        cfg.n_sites = n;
        cfg.q = 2;
        cfg.J = 0.0;
        cfg.U = 2.0;
        cfg.dt = 0.02;
        cfg.t_max = 2.0;
        cfg.n_samples = 2;
        const auto g = greens_mc(cfg);
        const auto sff = sff_mc(cfg, 2.0);
        CAPTURE(n);
        for (std::size_t k = 0; k < g.t_grid.size(); k += 10) {
            const double t = g.t_grid[k];
            CHECK(std::abs(g.mean[k] - 0.5 * std::cos(t)) < 1e-12);
            CHECK(g.std_error[k] < 1e-12);
            const double tr = std::pow(16.0, n) * std::pow(std::cos(t / 2.0), 2 * n);
            CHECK(std::abs(sff.raw.mean[k] - tr) < 1e-9 * std::pow(16.0, n));
        }
    }
}

TEST_CASE("zero-time values are exact") {
    for (int n : {3, 4}) {
        McConfig cfg = small_config();
        cfg.n_sites = n;
        cfg.t_max = 0.1;
        const auto g = greens_mc(cfg);
        CHECK(g.mean[0] == 0.5);
        CHECK(g.std_error[0] == 0.0);
        const auto s = sff_mc(cfg, 0.1);
        CHECK(s.ln_sff_over_n[0] == doctest::Approx(4.0 * std::log(2.0)).epsilon(1e-15));
    }
}

TEST_CASE("seeded runs are reproducible") {
    McConfig cfg = small_config();
    cfg.n_sites = 4;
    const auto a = greens_mc(cfg);
    const auto b = greens_mc(cfg);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    cfg.master_seed = 2;
    CHECK(greens_mc(cfg).mean != a.mean);
}

TEST_CASE("q = 2 disorder average matches the finite-N decay law") {
    for (int n : {3, 4}) {
        McConfig cfg = small_config();
        cfg.n_sites = n;
        cfg.t_max = 2.0;
        cfg.n_samples = 80;
        const auto g = greens_mc(cfg);
        CAPTURE(n);
        for (std::size_t k = 0; k < g.t_grid.size(); k += 5) {
            const double expect = greens_finite_n_q2(n, cfg.J, g.t_grid[k]);
            CHECK(std::abs(g.mean[k] - expect) <= 4.0 * g.std_error[k] + 5e-3);
        }
    }
}

TEST_CASE("finite-N gap to the large-N form shrinks with N") {
    // large-N: G = e^{-gamma0 t / 2} / 2 with gamma0 = J for q = 2; finite N decays slower
    double previous = INFINITY;
    for (int n : {3, 4, 5}) {
        McConfig cfg = small_config();
        cfg.n_sites = n;
        cfg.n_samples = 60;
        const auto g = greens_mc(cfg);
        const double gap = g.mean.back() - 0.5 * std::exp(-0.5);
        CAPTURE(n);
        CHECK(gap < previous + 2.0 * g.std_error.back());
        previous = gap;
        CHECK(gap > 0.0);
    }
}

TEST_CASE("halving dt moves the mean by less than one standard error") {
    McConfig cfg = small_config();
    cfg.n_sites = 4;
    cfg.t_max = 1.5;
    cfg.n_samples = 60;
    const auto pair = greens_mc_dt_pair(cfg);
    REQUIRE(pair.difference.mean.size() == pair.coarse.mean.size());
    REQUIRE(pair.fine.mean.size() == 2 * pair.coarse.mean.size() - 1);
    for (std::size_t k = 1; k < pair.coarse.mean.size(); ++k) {
        CAPTURE(k);
        CHECK(std::abs(pair.difference.mean[k]) < pair.fine.std_error[2 * k]);
    }
}

TEST_CASE("accumulated evolution stays unitary") {
    McConfig cfg = small_config();
    cfg.n_sites = 2;
    cfg.U = 1.0;
    const MicroscopicModel model(cfg);
    Eigen::MatrixXcd v = Eigen::MatrixXcd::Identity(model.dim(), model.dim());
    std::mt19937_64 rng(4);
    for (int k = 0; k < 200; ++k) model.evolve(sample_couplings(cfg, rng), cfg.dt, v);
    CHECK((v.adjoint() * v - Eigen::MatrixXcd::Identity(model.dim(), model.dim())).norm() < 1e-12);
}

TEST_CASE("mismatched couplings are rejected") {
    const MicroscopicModel model(small_config());
    Couplings c;
    c.values.assign(3, 0.0);
    CHECK_THROWS_AS(model.hamiltonian(c), std::invalid_argument);
    CHECK_THROWS_AS(sff_mc(small_config(), -1.0), std::invalid_argument);
}
