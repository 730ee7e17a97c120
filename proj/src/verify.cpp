#include "sykh/verify.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

#include "sykh/finite_n_oracle.hpp"
#include "sykh/observables_single.hpp"
#include "sykh/otoc_chaos.hpp"
#include "sykh/sff_saddle.hpp"

namespace sykh {

namespace {

struct Check {
    const char* module;
    const char* name;
    double tolerance;
    std::function<double()> measure;  // returns an error magnitude compared with <= tolerance
};

double max_abs(std::initializer_list<double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

std::vector<Check> checks() {
    std::vector<Check> out;

    out.push_back({"majorana_algebra", "clifford_relations_16_modes", 1e-14,
                   [] { return clifford_defect(build_majoranas(16)); }});
    out.push_back({"majorana_algebra", "expm_hermitian_vs_eigendecomposition", 1e-12, [] {
                       const MajoranaSet chi = build_majoranas(6);
                       DenseOperator h = chi[0] * chi[3] * Complex(0, 1) + 0.7 * chi[1] * chi[2] * chi[4] * chi[5];
                       h = 0.5 * (h + h.adjoint()).eval();
                       Eigen::SelfAdjointEigenSolver<DenseOperator> es(h);
                       const DenseOperator ref = es.eigenvectors() *
                                                 (es.eigenvalues().array() * Complex(0, -1.3)).exp().matrix().asDiagonal() *
                                                 es.eigenvectors().adjoint();
                       return (matrix_exponential(Complex(0, -1) * h, 1.3) - ref).cwiseAbs().maxCoeff();
                   }});

    out.push_back({"effective_models", "h1_epr_residual", kEigenResidualTolerance, [] {
                       return build_h1(ModelParams::from_gamma0(1.0, 4, 1.5), 1.0).eigenpair("EPR").residual;
                   }});
    out.push_back({"effective_models", "h2_epr_residuals", kEigenResidualTolerance, [] {
                       const auto m = build_h2(ModelParams::from_gamma0(0.8, 4, 1.7), false);
                       return std::max(m.eigenpair("EPR1").residual, m.eigenpair("EPR2").residual);
                   }});
    out.push_back({"effective_models", "h2_epr_eigenvalue_is_2gamma0", 1e-11, [] {
                       const auto m = build_h2(ModelParams::from_gamma0(0.8, 4, 1.7), false);
                       return std::abs(m.eigenpair("EPR1").value - 1.6);
                   }});

    out.push_back({"observables_single", "greens_numeric_vs_closed", 1e-9, [] {
                       double worst = 0.0;
                       for (double u : {0.0, 0.5, 1.0, 3.0, 5.0}) {
                           const auto p = ModelParams::from_gamma0(1.0, 4, u);
                           const TwoPointEvaluator ev(p);
                           for (int k = 0; k <= 40; ++k)
                               worst = std::max(worst, std::abs(ev.evaluate(0.25 * k).g - greens_closed(p, 0.25 * k)));
                       }
                       return worst;
                   }});
    out.push_back({"observables_single", "greens_at_zero_is_half", 1e-15, [] {
                       return std::abs(greens_numeric(ModelParams::from_gamma0(1.0, 4, 2.0), 0.0) - 0.5);
                   }});
    out.push_back({"observables_single", "spectral_numeric_vs_closed", 1e-6, [] {
                       const auto p = ModelParams::from_gamma0(1.0, 4, 3.0);
                       const std::vector<double> w{-4.0, -1.5, 0.0, 0.7, 2.0, 6.0};
                       const auto rho = spectral_numeric(p, w, default_spectral_window(p));
                       double worst = 0.0;
                       for (std::size_t k = 0; k < w.size(); ++k)
                           worst = std::max(worst, std::abs(rho[k] - spectral_closed(p, w[k])));
                       return worst;
                   }});
    out.push_back({"observables_single", "peak_split_brackets_critical_u", 0.0, [] {
                       const double uc = std::sqrt(27.0 / 7.0);
                       const auto below = spectral_peaks(ModelParams::from_gamma0(1.0, 4, uc * (1 - 1e-3)));
                       const auto above = spectral_peaks(ModelParams::from_gamma0(1.0, 4, uc * (1 + 1e-3)));
                       return (below.size() == 1 && above.size() == 2) ? 0.0 : 1.0;
                   }});

    out.push_back({"sff_saddle", "value_at_zero_is_4ln2", 0.0, [] {
                       return std::abs(maximize_sff(ModelParams::from_gamma0(1.0, 4, 2.0), 0.0).value -
                                       4.0 * std::numbers::ln2);
                   }});
    out.push_back({"sff_saddle", "trace_identity", 1e-10, [] {
                       double worst = 0.0;
                       for (double lam : {0.0, 0.6, 2.5})
                           for (double u : {0.3, 1.0, 2.0})
                               for (double T : {0.5, 3.0}) {
                                   const auto p = ModelParams::from_gamma0(1.0, 4, u);
                                   const double ref = s0(lam, u, T);
                                   worst = std::max(worst, std::abs(std::log(trace_h1_numeric(lam, p, T)) - ref) /
                                                               std::max(1.0, std::abs(ref)));
                               }
                       return worst;
                   }});
    out.push_back({"sff_saddle", "three_transitions_at_u2", 0.0, [] {
                       return std::abs(count_transitions(ModelParams::from_gamma0(1.0, 4, 2.0), 10.0, 1000).count - 3.0);
                   }});

    out.push_back({"otoc_chaos", "rung_at_zero_is_identity", 1e-12, [] {
                       const RungEvaluator ev(ModelParams::from_gamma0(1.0, 4, 1.0));
                       return (ev.rung_matrix(0.0) - FlavorMatrix::Identity()).cwiseAbs().maxCoeff();
                   }});
    out.push_back({"otoc_chaos", "kernel_numeric_vs_closed", 1e-9, [] {
                       double worst = 0.0;
                       for (int q : {2, 8})
                           for (double u : {0.5, 2.0}) {
                               const auto p = ModelParams::from_gamma0(1.0, q, u);
                               const RungEvaluator ev(p);
                               for (double h : {-3.0, -0.5, 0.4, 1.5})
                                   worst = std::max(worst, std::abs(ev.kernel(h, q) - kr_closed(p, h)));
                           }
                       return worst;
                   }});
    out.push_back({"otoc_chaos", "brownian_limit", 1e-8, [] {
                       double worst = 0.0;
                       for (int q : {2, 4, 8, 12}) {
                           const auto r = chaos_point(ModelParams::from_gamma0(1.0, q, 0.0));
                           worst = std::max({worst, std::abs(r.kappa - (q - 2)), std::abs(r.bound_product - 1.0)});
                       }
                       return worst;
                   }});

    out.push_back({"finite_n_oracle", "step_unitarity", 1e-11, [] {
                       McConfig cfg;
                       cfg.n_sites = 2;
                       cfg.q = 2;
                       cfg.J = 1.0;
                       cfg.U = 1.0;
                       cfg.dt = 0.05;
                       std::mt19937_64 rng(sample_seed(11, 0));
                       const DenseOperator w = step_unitary(cfg, sample_couplings(cfg, rng));
                       return (w.adjoint() * w - DenseOperator::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
                   }});
    out.push_back({"finite_n_oracle", "mc_zero_time_and_reproducibility", 0.0, [] {
                       McConfig cfg;
                       cfg.n_sites = 2;
                       cfg.q = 2;
                       cfg.J = 1.0;
                       cfg.U = 2.0;
                       cfg.dt = 0.025;
                       cfg.t_max = 0.5;
                       cfg.n_samples = 8;
                       cfg.master_seed = 5;
                       const auto a = greens_mc(cfg);
                       const auto b = greens_mc(cfg);
                       const auto s = sff_mc(cfg, 0.0);
                       const double repro = a.mean == b.mean && a.std_error == b.std_error ? 0.0 : 1.0;
                       return max_abs({a.mean[0] - 0.5, a.std_error[0], s.ln_sff_over_n[0] - 4.0 * std::numbers::ln2, repro});
                   }});
    return out;
}

}  // namespace

std::vector<CheckResult> run_invariants() {
    std::vector<CheckResult> results;
    for (const auto& c : checks()) {
        double measured = std::numeric_limits<double>::quiet_NaN();
        bool pass = false;
        try {
            measured = c.measure();
            pass = measured <= c.tolerance;
        } catch (const std::exception&) {
        }
        results.push_back({c.module, c.name, pass, measured, c.tolerance});
    }
    return results;
}

}  // namespace sykh
