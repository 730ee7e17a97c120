#pragma once

#include <span>
#include <vector>

#include "sykh/effective_models.hpp"

namespace sykh {

struct TwoPointResult {
    double t;
    double g_numeric;
    double g_closed;
    double decay_rate;
    double osc_frequency;
};

/// Infinite-temperature G(t) in closed form. Uses the trigonometric branch
/// for U > gamma0 and a series branch when |gamma0^2 - U^2| < 1e-8 gamma0^2.
double greens_closed(const ModelParams& params, double t);

/// G(t) as the EPR-sandwich ratio of the single-replica effective evolution.
/// Builds H1 once; evaluate() is cheap afterwards.
class TwoPointEvaluator {
public:
    struct Sample {
        double g;
        Complex numerator;
        Complex denominator;           // <EPR| e^{H t} |EPR>, explicit
        double denominator_from_eigenvalue;  // e^{E t} with the measured E
    };

    explicit TwoPointEvaluator(const ModelParams& params);

    Sample evaluate(double t) const;
    /// G at t_k = k dt, k = 0..n-1, by repeated application of e^{H dt}.
    std::vector<double> on_grid(double dt, std::size_t n) const;

    double epr_eigenvalue() const { return epr_eigenvalue_; }
    const EffectiveModel& model() const { return model_; }

private:
    EffectiveModel model_;
    StateVector epr_;
    StateVector probe_;  // chi^L_1 |EPR>
    StateVector probe_bra_;  // (<EPR| chi^L_1)^dag
    double epr_eigenvalue_;
};

double greens_numeric(const ModelParams& params, double t);

std::vector<TwoPointResult> two_point_scan(const ModelParams& params, std::span<const double> times);

struct DecayAndFrequency {
    double decay_rate;  // Gamma, with G ~ e^{-Gamma t / 2}
    double frequency;   // omega, zero for U <= gamma0
};

DecayAndFrequency decay_and_frequency(const ModelParams& params);

/// Closed-form single-particle spectral function.
double spectral_closed(const ModelParams& params, double omega);

struct SpectralWindow {
    double t_max;  // must satisfy t_max * gamma0 >= 20
    double dt;
    double tail_tolerance = 1e-7;
};

/// Default window: t_max = 40 / gamma0, dt = 0.0025 / gamma0.
SpectralWindow default_spectral_window(const ModelParams& params);

/// rho(omega) = -2 Im G^R(omega) with G^R(t) = -2i theta(t) G(t), i.e.
/// 4 * int_0^t_max cos(omega t) G(t) dt by composite Simpson on the numeric G.
/// Throws InsufficientWindowError when the estimated neglected tail exceeds
/// the window's tail tolerance.
double spectral_numeric(const ModelParams& params, double omega, const SpectralWindow& window);
std::vector<double> spectral_numeric(const ModelParams& params, std::span<const double> omegas,
                                     const SpectralWindow& window);

/// Frequencies of the global maxima of spectral_closed: {0} for a single
/// central peak, {-w, +w} otherwise, refined to 1e-8 gamma0.
std::vector<double> spectral_peaks(const ModelParams& params);

}  // namespace sykh
