#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "sykh/effective_models.hpp"

namespace sykh {

enum class SaddleLabel { diagonal, connected };

std::string_view to_string(SaddleLabel label);

/// One point of the large-N spectral form factor.
struct SffResult {
    double T;
    double value;  // ln SFF / N
    double lambda_star;
    double g_star;
    SaddleLabel label;
};

/// ln Tr e^{H1(lambda) T} = ln(8 cosh(T sqrt(lambda^2-U^2)/2) + 2 cosh(lambda T) + 6),
/// using the cosine branch for lambda < U. Returns -infinity when the
/// argument falls below 1e-300 (a genuine zero of the trace).
double s0(double lambda, double U, double T);

/// S0(lambda) + (gamma0 T / q)(g^q - 1) - lambda T g
double sff_objective(double lambda, double g, const ModelParams& params, double T);

/// Objective at lambda = g = 0: ln(8 + 8 cos(U T / 2)) - gamma0 T / q.
double diagonal_value(const ModelParams& params, double T);

/// Dominant saddle of the spectral form factor at time T.
///
/// The objective is convex in g, so the saddle is taken as
///   max over lambda of min over g in [0, 1],
/// which reduces to a one-dimensional maximization along the g-stationarity
/// curve lambda = gamma0 g^(q-1). The reduced function is scanned on a
/// uniform g grid and every local maximum is refined with Brent's method.
/// The label is diagonal when the maximizer lies within 1e-6 of (0, 0).
SffResult maximize_sff(const ModelParams& params, double T);

std::vector<SffResult> sff_scan(const ModelParams& params, std::span<const double> times);

struct TransitionCount {
    int count = 0;
    std::vector<double> times;  // refined to 1e-6 / gamma0
};

/// Counts diagonal <-> connected switches on the grid T_k = k T_max / n_grid,
/// k = 1..n_grid. Requires n_grid >= 1000 and spacing < pi / (4 U).
TransitionCount count_transitions(const ModelParams& params, double T_max, int n_grid);

/// n pi / (q ln 2): the U / gamma0 above which the n-th diagonal maximum is
/// surrounded by two transitions.
double transition_threshold_estimate(int q, int n);

/// Tr e^{H1(lambda) T} from the dense effective Hamiltonian.
double trace_h1_numeric(double lambda, const ModelParams& params, double T);

}  // namespace sykh
