#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "sykh/effective_models.hpp"

namespace sykh {

/// Growth data at one parameter point.
///
/// bound_product is t_B (kappa + gamma0). bound_product_gamma uses the
/// two-point decay rate Gamma = 2 gamma0 - sqrt(gamma0^2 - U^2) (2 gamma0
/// for U > gamma0) in place of gamma0; the two agree at U = 0.
struct ChaosResult {
    double u_over_gamma0;
    int q;
    double kappa;
    double t_branch;
    double bound_product;
    double bound_product_gamma;
};

struct KernelSample {
    double h;
    double k_numeric;
    double k_closed;
};

using FlavorMatrix = Eigen::Matrix4d;

/// Rung function and ladder kernel from the two-replica effective model.
/// Only gamma0 and U enter; q appears as the (q-1) gamma0 prefactor of the kernel.
class RungEvaluator {
public:
    explicit RungEvaluator(const ModelParams& params, bool measure_spectrum = false);

    /// F_ab(t), flavors 0-based. Throws ConventionMismatchError if the
    /// imaginary residue exceeds 1e-12 (relative to max(1, |F|)).
    double rung(double t, int a, int b) const;
    FlavorMatrix rung_matrix(double t) const;
    /// F(t_k), t_k = k dt, k = 0..n-1, by repeated application of one step propagator.
    std::vector<FlavorMatrix> rung_on_grid(double dt, std::size_t n) const;

    /// k_R(h) = gamma0 (q-1) sum_b <sink_0| (shift - h - H)^{-1} |source_b> / <EPR2|EPR1>
    double kernel(double h, int q) const;

    /// Measured eigenvalue of EPR1 (expected 2 gamma0).
    double shift() const { return shift_; }
    Complex overlap() const { return overlap_; }
    const EffectiveModel& model() const { return model_; }

private:
    ModelParams params_;
    EffectiveModel model_;
    double shift_;
    Complex overlap_;
    // sinks_[a] = <EPR2|(chi^L1_a - i chi^R1_a)(chi^L2_a - i chi^R2_a) / <EPR2|EPR1>, stored conjugated
    std::array<StateVector, kFlavors> sinks_;
    // sources_[b] = chi^L2_b chi^L1_b |EPR1>
    std::array<StateVector, kFlavors> sources_;
    Complex sink_dot(int a, const StateVector& v) const;
};

double rung_f(const ModelParams& params, double t, int a, int b);
double kr_numeric(const ModelParams& params, double h);

/// Rational closed form of the ladder kernel. Throws KernelPoleError when
/// |denominator| <= 1e-14 gamma0^4.
double kr_closed(const ModelParams& params, double h);
/// d k_R / d h by the quotient rule on the exact polynomial coefficients.
double kr_closed_derivative(const ModelParams& params, double h);

/// Numerator and denominator coefficients (ascending powers of h).
struct KernelPolynomials {
    std::vector<double> numerator;    // degree 3
    std::vector<double> denominator;  // degree 4
};
KernelPolynomials kernel_polynomials(const ModelParams& params);

enum class CrossCheck { none, numeric };

/// Largest real kappa with k_R(-kappa) = 1 in [-0.999 gamma0, (q-2) gamma0 + 2U + 5 gamma0].
/// Candidates are the real roots of numerator - denominator, polished by
/// Newton steps. With CrossCheck::numeric the root is confirmed against the
/// resolvent kernel to 1e-8.
double lyapunov(const ModelParams& params, CrossCheck check = CrossCheck::numeric);

/// t_B = k_R'(-kappa); confirmed by a central difference (step 1e-6 gamma0) to 1e-6 relative.
double branching_time(const ModelParams& params, double kappa);
double branching_time(const ModelParams& params);

ChaosResult chaos_point(const ModelParams& params, CrossCheck check = CrossCheck::none);

struct ChaosPeak {
    int q;
    double max_bound_product;
    double arg_u_over_gamma0;
    double max_bound_product_gamma;
    double arg_u_over_gamma0_gamma;
};

struct ChaosScan {
    std::vector<ChaosResult> rows;  // q-major, U-minor, failed points omitted
    std::vector<ChaosPeak> peaks;   // one per q
    std::vector<std::string> failures;
};

/// Rates in units of gamma0 = 1.
ChaosScan scan_chaos(std::span<const int> q_list, std::span<const double> u_grid,
                     CrossCheck check = CrossCheck::none);

struct VolterraResult {
    double dt;
    std::vector<double> t;
    std::vector<FlavorMatrix> rung;
    std::vector<FlavorMatrix> otoc;
    // max_k |O_dt(t_k) - O_dt/2(t_k)| / 3, relative to max(1, |O_dt/2|); 0 when skipped
    double richardson_error = 0.0;

    std::vector<double> component(int a, int b) const;
    /// sum_b OTOC_ab(t_k)
    std::vector<double> row_sum(int a) const;
};

/// Solves OTOC(t) = F(t) + (q-1) gamma0 int_0^t F(t-t') OTOC(t') dt' for all
/// four flavors by trapezoidal marching. Requires dt <= 0.01 / max(gamma0, U, kappa).
VolterraResult otoc_volterra(const ModelParams& params, double t_max, double dt, bool richardson = true);

/// Sampled OTOC_ab (flavors 0-based).
std::vector<double> otoc_volterra(const ModelParams& params, double t_max, double dt, int a, int b);

/// Least-squares slope of ln(sum_b OTOC_ab) over t in [t_from, t_to].
double growth_rate(const VolterraResult& result, int a, double t_from, double t_to);

}  // namespace sykh
