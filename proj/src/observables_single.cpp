#include "sykh/observables_single.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/toms748_solve.hpp>

namespace sykh {

double greens_closed(const ModelParams& params, double t) {
    if (!(t >= 0.0)) throw std::invalid_argument("greens_closed: t must be >= 0");
    const double g0 = params.gamma0();
    const double u = params.U();
    const double s2 = g0 * g0 - u * u;
    const double envelope = 0.5 * std::exp(-g0 * t);

    if (std::abs(s2) < 1e-8 * g0 * g0 || g0 == 0.0) {
        // z = s^2 t^2 / 4; sinh(sqrt z)/sqrt z and cosh(sqrt z) to third order
        const double z = s2 * t * t / 4.0;
        const double sinhc = 1.0 + z / 6.0 + z * z / 120.0 + z * z * z / 5040.0;
        const double cosh_term = 1.0 + z / 2.0 + z * z / 24.0 + z * z * z / 720.0;
        return envelope * (g0 * t / 2.0 * sinhc + cosh_term);
    }
    if (s2 > 0.0) {
        const double s = std::sqrt(s2);
        return envelope * (g0 * std::sinh(s * t / 2.0) / s + std::cosh(s * t / 2.0));
    }
    const double w = std::sqrt(-s2);
    return envelope * (g0 * std::sin(w * t / 2.0) / w + std::cos(w * t / 2.0));
}

TwoPointEvaluator::TwoPointEvaluator(const ModelParams& params)
    : model_(build_h1(params, params.gamma0())) {
    epr_ = model_.state("EPR");
    const auto& chi = model_.majoranas.monomials[mode_of(Branch::L, 0)];
    probe_ = chi.apply(epr_);
    probe_bra_ = chi.adjoint().apply(epr_);
    epr_eigenvalue_ = model_.eigenpair("EPR").value;
}

TwoPointEvaluator::Sample TwoPointEvaluator::evaluate(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("greens_numeric: t must be >= 0");
    const DenseOperator propagator = matrix_exponential(model_.hamiltonian, t);
    Sample s;
    s.numerator = probe_bra_.dot(propagator * probe_);
    s.denominator = epr_.dot(propagator * epr_);
    s.denominator_from_eigenvalue = std::exp(epr_eigenvalue_ * t);
    if (std::abs(s.denominator) < 1e-14)
        throw DegenerateNormalizationError("greens_numeric: vanishing EPR normalization");
    s.g = (s.numerator / s.denominator).real();
    return s;
}

std::vector<double> TwoPointEvaluator::on_grid(double dt, std::size_t n) const {
    if (!(dt > 0.0)) throw std::invalid_argument("on_grid: dt must be positive");
    const DenseOperator step = matrix_exponential(model_.hamiltonian, dt);
    std::vector<double> out(n);
    StateVector v = probe_;
    StateVector w = epr_;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex den = epr_.dot(w);
        if (std::abs(den) < 1e-14)
            throw DegenerateNormalizationError("greens_numeric: vanishing EPR normalization");
        out[k] = (probe_bra_.dot(v) / den).real();
        v = step * v;
        w = step * w;
    }
    return out;
}

double greens_numeric(const ModelParams& params, double t) {
    return TwoPointEvaluator(params).evaluate(t).g;
}

std::vector<TwoPointResult> two_point_scan(const ModelParams& params, std::span<const double> times) {
    const TwoPointEvaluator evaluator(params);
    const auto rates = decay_and_frequency(params);
    std::vector<TwoPointResult> out(times.size());
#pragma omp parallel for schedule(static)
    for (std::size_t k = 0; k < times.size(); ++k) {
        out[k] = {times[k], evaluator.evaluate(times[k]).g, greens_closed(params, times[k]),
                  rates.decay_rate, rates.frequency};
    }
    return out;
}

DecayAndFrequency decay_and_frequency(const ModelParams& params) {
    const double g0 = params.gamma0();
    const double u = params.U();
    if (u <= g0) return {2.0 * g0 - std::sqrt(g0 * g0 - u * u), 0.0};
    return {2.0 * g0, 0.5 * std::sqrt(u * u - g0 * g0)};
}

double spectral_closed(const ModelParams& params, double omega) {
    const double g0 = params.gamma0();
    const double u2 = params.U() * params.U();
    const double w2 = omega * omega;
    const double num = 4.0 * g0 * (9.0 * g0 * g0 + 3.0 * u2 + 4.0 * w2);
    const double shifted = u2 - 4.0 * w2;
    const double den = 9.0 * g0 * g0 * g0 * g0 + g0 * g0 * (6.0 * u2 + 40.0 * w2) + shifted * shifted;
    return num / den;
}

SpectralWindow default_spectral_window(const ModelParams& params) {
    return {40.0 / params.gamma0(), 0.0025 / params.gamma0()};
}

std::vector<double> spectral_numeric(const ModelParams& params, std::span<const double> omegas,
                                     const SpectralWindow& window) {
    const double g0 = params.gamma0();
    if (!(window.t_max * g0 >= 20.0))
        throw std::invalid_argument("spectral_numeric: t_max * gamma0 must be >= 20");
    if (!(window.dt > 0.0) || window.dt > window.t_max)
        throw std::invalid_argument("spectral_numeric: dt must lie in (0, t_max]");

    auto intervals = static_cast<std::size_t>(std::ceil(window.t_max / window.dt));
    if (intervals % 2 != 0) ++intervals;
    const double h = window.t_max / static_cast<double>(intervals);
    const std::vector<double> g = TwoPointEvaluator(params).on_grid(h, intervals + 1);

    // Tail of 4 int G beyond t_max, with G ~ e^{-Gamma t/2}.
    const double gamma = decay_and_frequency(params).decay_rate;
    double late = 0.0;
    for (std::size_t k = intervals - intervals / 10; k <= intervals; ++k) late = std::max(late, std::abs(g[k]));
    const double tail = 8.0 * late / gamma;
    if (tail > window.tail_tolerance) throw InsufficientWindowError(tail);

    std::vector<double> out(omegas.size());
#pragma omp parallel for schedule(static)
    for (std::size_t w = 0; w < omegas.size(); ++w) {
        double sum = 0.0;
        for (std::size_t k = 0; k <= intervals; ++k) {
            const double weight = (k == 0 || k == intervals) ? 1.0 : (k % 2 ? 4.0 : 2.0);
            sum += weight * std::cos(omegas[w] * h * static_cast<double>(k)) * g[k];
        }
        out[w] = 4.0 * sum * h / 3.0;
    }
    return out;
}

double spectral_numeric(const ModelParams& params, double omega, const SpectralWindow& window) {
    const double w[] = {omega};
    return spectral_numeric(params, std::span<const double>(w), window).front();
}

namespace {

// Sign-carrying factor of d rho / d omega: N' D - N D'.
double spectral_slope(const ModelParams& params, double omega) {
    const double g0 = params.gamma0();
    const double u2 = params.U() * params.U();
    const double w2 = omega * omega;
    const double num = 9.0 * g0 * g0 + 3.0 * u2 + 4.0 * w2;
    const double shifted = u2 - 4.0 * w2;
    const double den = 9.0 * g0 * g0 * g0 * g0 + g0 * g0 * (6.0 * u2 + 40.0 * w2) + shifted * shifted;
    const double dnum = 8.0 * omega;
    const double dden = 80.0 * g0 * g0 * omega - 16.0 * omega * shifted;
    return dnum * den - num * dden;
}

}  // namespace

std::vector<double> spectral_peaks(const ModelParams& params) {
    const double g0 = params.gamma0();
    const double hi = params.U() + 4.0 * g0;
    constexpr int n = 4000;
    const double step = hi / n;
    int best = 0;
    double best_value = spectral_closed(params, 0.0);
    for (int k = 1; k <= n; ++k) {
        const double v = spectral_closed(params, k * step);
        if (v > best_value) {
            best_value = v;
            best = k;
        }
    }
    if (best == 0) return {0.0};

    double lo_w = (best - 1) * step;
    double hi_w = std::min(hi, (best + 1) * step);
    if (lo_w == 0.0) lo_w = 1e-3 * step;
    auto slope = [&](double w) { return spectral_slope(params, w); };
    if (!(slope(lo_w) > 0.0 && slope(hi_w) < 0.0)) return {-best * step, best * step};
    boost::uintmax_t iterations = 200;
    const double tol = 1e-10 * g0;
    const auto bracket = boost::math::tools::toms748_solve(
        slope, lo_w, hi_w, [tol](double a, double b) { return std::abs(b - a) <= tol; }, iterations);
    const double peak = 0.5 * (bracket.first + bracket.second);
    return {-peak, peak};
}

}  // namespace sykh
