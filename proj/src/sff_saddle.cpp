#include "sykh/sff_saddle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/tools/minima.hpp>

namespace sykh {

std::string_view to_string(SaddleLabel label) {
    return label == SaddleLabel::diagonal ? "diagonal" : "connected";
}

double s0(double lambda, double U, double T) {
    if (!(T >= 0.0)) throw std::invalid_argument("s0: T must be >= 0");
    constexpr double floor = 1e-300;
    const double a = lambda * T;
    const double d = lambda * lambda - U * U;
    // ln x evaluated as m + ln(x e^{-m}) to stay finite for large lambda T
    double b = 0.0;
    double m = std::abs(a);
    if (d >= 0.0) {
        b = 0.5 * T * std::sqrt(d);
        m = std::max(m, b);
    }
    double scaled = std::exp(std::abs(a) - m) + std::exp(-std::abs(a) - m) + 6.0 * std::exp(-m);
    if (d >= 0.0)
        scaled += 4.0 * (std::exp(b - m) + std::exp(-b - m));
    else
        scaled += 8.0 * std::cos(0.5 * T * std::sqrt(-d)) * std::exp(-m);
    if (!(scaled > 0.0)) return -std::numeric_limits<double>::infinity();
    const double result = m + std::log(scaled);
    if (result < std::log(floor)) return -std::numeric_limits<double>::infinity();
    return result;
}

double sff_objective(double lambda, double g, const ModelParams& params, double T) {
    const double q = params.q();
    return s0(lambda, params.U(), T) + params.gamma0() * T / q * (std::pow(g, q) - 1.0) - lambda * T * g;
}

double diagonal_value(const ModelParams& params, double T) { return sff_objective(0.0, 0.0, params, T); }

namespace {

struct Reduced {
    const ModelParams& params;
    double T;
    double lambda_of(double g) const { return params.gamma0() * std::pow(g, params.q() - 1); }
    double operator()(double g) const { return sff_objective(lambda_of(g), g, params, T); }
};

}  // namespace

SffResult maximize_sff(const ModelParams& params, double T) {
    if (!(T >= 0.0)) throw std::invalid_argument("maximize_sff: T must be >= 0");
    const Reduced f{params, T};
    constexpr int n = 2000;
    std::vector<double> values(n + 1);
    for (int k = 0; k <= n; ++k) values[k] = f(static_cast<double>(k) / n);

    double best_g = 0.0;
    double best_value = values[0];
    auto consider = [&](double g, double v) {
        if (v > best_value + 1e-13) {
            best_value = v;
            best_g = g;
        }
    };
    for (int k = 1; k <= n; ++k) {
        const bool left_ok = values[k] >= values[k - 1];
        const bool right_ok = k == n || values[k] >= values[k + 1];
        if (!(left_ok && right_ok) || !std::isfinite(values[k])) continue;
        if (k == n) {
            consider(1.0, values[n]);
            continue;
        }
        const double lo = static_cast<double>(k - 1) / n;
        const double hi = static_cast<double>(k + 1) / n;
        boost::uintmax_t iterations = 200;
        const auto [g, neg] = boost::math::tools::brent_find_minima(
            [&f](double x) { return -f(x); }, lo, hi, std::numeric_limits<double>::digits, iterations);
        consider(g, -neg);
        consider(static_cast<double>(k) / n, values[k]);
    }

    SffResult r;
    r.T = T;
    r.value = best_value;
    r.g_star = best_g;
    r.lambda_star = f.lambda_of(best_g);
    r.label = (best_g < 1e-6 && r.lambda_star < 1e-6) ? SaddleLabel::diagonal : SaddleLabel::connected;
    return r;
}

std::vector<SffResult> sff_scan(const ModelParams& params, std::span<const double> times) {
    std::vector<SffResult> out(times.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < times.size(); ++k) out[k] = maximize_sff(params, times[k]);
    return out;
}

TransitionCount count_transitions(const ModelParams& params, double T_max, int n_grid) {
    if (n_grid < 1000) throw std::invalid_argument("count_transitions: n_grid must be >= 1000");
    if (!(T_max > 0.0)) throw std::invalid_argument("count_transitions: T_max must be positive");
    const double spacing = T_max / n_grid;
    if (params.U() > 0.0 && !(spacing < std::numbers::pi / (4.0 * params.U())))
        throw std::invalid_argument("count_transitions: grid spacing too coarse for U");

    std::vector<double> grid(n_grid);
    for (int k = 0; k < n_grid; ++k) grid[k] = (k + 1) * spacing;
    const auto results = sff_scan(params, grid);

    TransitionCount out;
    const double tol = 1e-6 / params.gamma0();
    for (int k = 1; k < n_grid; ++k) {
        if (results[k].label == results[k - 1].label) continue;
        double lo = grid[k - 1];
        double hi = grid[k];
        const SaddleLabel left = results[k - 1].label;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            (maximize_sff(params, mid).label == left ? lo : hi) = mid;
        }
        out.times.push_back(0.5 * (lo + hi));
    }
    out.count = static_cast<int>(out.times.size());
    return out;
}

double transition_threshold_estimate(int q, int n) {
    if (n < 1) throw std::invalid_argument("transition_threshold_estimate: n must be >= 1");
    if (q < 1) throw std::invalid_argument("transition_threshold_estimate: q must be positive");
    return n * std::numbers::pi / (q * std::numbers::ln2);
}

double trace_h1_numeric(double lambda, const ModelParams& params, double T) {
    if (!(T >= 0.0)) throw std::invalid_argument("trace_h1_numeric: T must be >= 0");
    const EffectiveModel model = build_h1(params, lambda);
    const Complex trace = matrix_exponential(model.hamiltonian, T).trace();
    if (std::abs(trace.imag()) > 1e-9 * std::max(1.0, std::abs(trace)))
        throw ConventionMismatchError("trace_h1_numeric: trace has an imaginary part");
    return trace.real();
}

}  // namespace sykh
