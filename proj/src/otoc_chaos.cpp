#include "sykh/otoc_chaos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <unsupported/Eigen/Polynomials>

#include "sykh/observables_single.hpp"

namespace sykh {

namespace {

constexpr Complex kI{0.0, 1.0};

using Poly = std::vector<double>;

Poly mul(const Poly& a, const Poly& b) {
    Poly out(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
    return out;
}

Poly add(Poly a, const Poly& b, double scale = 1.0) {
    if (a.size() < b.size()) a.resize(b.size(), 0.0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += scale * b[i];
    return a;
}

double eval(const Poly& p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Poly derivative(const Poly& p) {
    Poly out(p.size() > 1 ? p.size() - 1 : 1, 0.0);
    for (std::size_t i = 1; i < p.size(); ++i) out[i - 1] = static_cast<double>(i) * p[i];
    return out;
}

double checked_real(Complex z, double tol, const char* where) {
    if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z.real())))
        throw ConventionMismatchError(std::string(where) + ": imaginary residue " + std::to_string(z.imag()));
    return z.real();
}

}  // namespace

RungEvaluator::RungEvaluator(const ModelParams& params, bool measure_spectrum)
    : params_(params), model_(build_h2(params, measure_spectrum)) {
    const StateVector& epr1 = model_.state("EPR1");
    const StateVector& epr2 = model_.state("EPR2");
    shift_ = model_.eigenpair("EPR1").value;
    overlap_ = epr2.dot(epr1);
    if (std::abs(overlap_) < 1e-14) throw DegenerateNormalizationError("rung: <EPR2|EPR1> vanishes");

    const auto& ops = model_.majoranas.ops;
    for (int a = 0; a < kFlavors; ++a) {
        const DenseOperator first = ops[mode_of(Branch2::L1, a)] - kI * ops[mode_of(Branch2::R1, a)];
        const DenseOperator second = ops[mode_of(Branch2::L2, a)] - kI * ops[mode_of(Branch2::R2, a)];
        sinks_[a] = (first * second).adjoint() * epr2 / std::conj(overlap_);
        sources_[a] = ops[mode_of(Branch2::L2, a)] * (ops[mode_of(Branch2::L1, a)] * epr1);
    }
}

Complex RungEvaluator::sink_dot(int a, const StateVector& v) const { return sinks_[a].dot(v); }

FlavorMatrix RungEvaluator::rung_matrix(double t) const {
    if (!(t >= 0.0)) throw std::invalid_argument("rung: t must be >= 0");
    DenseOperator shifted = model_.hamiltonian;
    shifted.diagonal().array() -= shift_;
    const DenseOperator propagator = matrix_exponential(shifted, t);
    FlavorMatrix out;
    for (int b = 0; b < kFlavors; ++b) {
        const StateVector v = propagator * sources_[b];
        for (int a = 0; a < kFlavors; ++a) out(a, b) = checked_real(sink_dot(a, v), 1e-12, "rung");
    }
    return out;
}

double RungEvaluator::rung(double t, int a, int b) const {
    if (a < 0 || a >= kFlavors || b < 0 || b >= kFlavors)
        throw std::invalid_argument("rung: flavor index out of range");
    return rung_matrix(t)(a, b);
}

std::vector<FlavorMatrix> RungEvaluator::rung_on_grid(double dt, std::size_t n) const {
    if (!(dt > 0.0)) throw std::invalid_argument("rung_on_grid: dt must be positive");
    DenseOperator shifted = model_.hamiltonian;
    shifted.diagonal().array() -= shift_;
    const DenseOperator step = matrix_exponential(shifted, dt);
    Eigen::MatrixXcd v(shifted.rows(), kFlavors);
    for (int b = 0; b < kFlavors; ++b) v.col(b) = sources_[b];

    std::vector<FlavorMatrix> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        for (int b = 0; b < kFlavors; ++b)
            for (int a = 0; a < kFlavors; ++a)
                out[k](a, b) = checked_real(sinks_[a].dot(v.col(b)), 1e-10, "rung_on_grid");
        if (k + 1 < n) v = step * v;
    }
    return out;
}

double RungEvaluator::kernel(double h, int q) const {
    StateVector total = StateVector::Zero(sources_[0].size());
    for (const auto& s : sources_) total += s;
    const StateVector x = resolvent_apply(model_.hamiltonian, Complex(shift_ - h, 0.0), total);
    const Complex value = params_.gamma0() * (q - 1) * sink_dot(0, x);
    return checked_real(value, 1e-10, "kr_numeric");
}

double rung_f(const ModelParams& params, double t, int a, int b) {
    return RungEvaluator(params).rung(t, a, b);
}

double kr_numeric(const ModelParams& params, double h) { return RungEvaluator(params).kernel(h, params.q()); }

KernelPolynomials kernel_polynomials(const ModelParams& params) {
    const double g = params.gamma0();
    const double u2 = params.U() * params.U();
    const Poly shifted{-2.0 * g, 1.0};            // h - 2 g
    const Poly sq = mul(shifted, shifted);        // (h - 2 g)^2
    const Poly quad{g * g, -4.0 * g, 1.0};        // g^2 - 4 g h + h^2

    Poly num = add(mul(sq, Poly{3.0 * g, -1.0}), Poly{7.0 * g * u2, -2.0 * u2});
    for (double& c : num) c *= g * (params.q() - 1);
    const Poly den = add(mul(sq, add(quad, Poly{2.0 * g * g})), quad, u2);
    return {num, den};
}

double kr_closed(const ModelParams& params, double h) {
    const auto p = kernel_polynomials(params);
    const double den = eval(p.denominator, h);
    const double g = params.gamma0();
    if (std::abs(den) <= 1e-14 * g * g * g * g) throw KernelPoleError(h);
    return eval(p.numerator, h) / den;
}

double kr_closed_derivative(const ModelParams& params, double h) {
    const auto p = kernel_polynomials(params);
    const double den = eval(p.denominator, h);
    const double g = params.gamma0();
    if (std::abs(den) <= 1e-14 * g * g * g * g) throw KernelPoleError(h);
    const double num = eval(p.numerator, h);
    return (eval(derivative(p.numerator), h) * den - num * eval(derivative(p.denominator), h)) / (den * den);
}

double lyapunov(const ModelParams& params, CrossCheck check) {
    const double g = params.gamma0();
    const auto p = kernel_polynomials(params);
    const Poly diff = add(p.numerator, p.denominator, -1.0);
    const Poly slope = derivative(diff);

    Eigen::VectorXd coeffs(diff.size());
    for (std::size_t i = 0; i < diff.size(); ++i) coeffs(static_cast<Eigen::Index>(i)) = diff[i];
    Eigen::PolynomialSolver<double, Eigen::Dynamic> solver(coeffs);

    const double kappa_lo = -0.999 * g;
    const double kappa_hi = (params.q() - 2) * g + 2.0 * params.U() + 5.0 * g;
    double best = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < solver.roots().size(); ++i) {
        const Complex root = solver.roots()(i);
        if (std::abs(root.imag()) > 1e-6 * std::max(g, std::abs(root))) continue;
        double h = root.real();
        for (int it = 0; it < 30; ++it) {
            const double d = eval(slope, h);
            if (d == 0.0) break;
            const double step = eval(diff, h) / d;
            h -= step;
            if (std::abs(step) <= 1e-16 * std::max(g, std::abs(h))) break;
        }
        const double kappa = -h;
        if (kappa < kappa_lo || kappa > kappa_hi) continue;
        if (std::abs(eval(p.denominator, h)) <= 1e-14 * g * g * g * g) continue;
        best = std::max(best, kappa);
    }
    if (!std::isfinite(best))
        throw NoGrowthExponentError("lyapunov: no admissible root of k_R(-kappa) = 1");

    if (std::abs(kr_closed(params, -best) - 1.0) > 1e-10)
        throw NumericalError("lyapunov: closed-form kernel misses 1 at the root");
    if (check == CrossCheck::numeric) {
        // The resolvent is singular exactly at h = 0 (the EPR1 eigenvalue), so
        // compare one small step away there.
        const double h = std::abs(best) < 1e-6 * g ? 1e-3 * g : -best;
        const double numeric = kr_numeric(params, h);
        const double closed = kr_closed(params, h);
        if (std::abs(numeric - closed) > 1e-8 * std::max(1.0, std::abs(closed)))
            throw ConventionMismatchError("lyapunov: resolvent kernel disagrees with closed form");
    }
    return best;
}

double branching_time(const ModelParams& params, double kappa) {
    const double h = -kappa;
    const double analytic = kr_closed_derivative(params, h);
    const double step = 1e-6 * params.gamma0();
    const double fd = (kr_closed(params, h + step) - kr_closed(params, h - step)) / (2.0 * step);
    if (std::abs(fd - analytic) > 1e-6 * std::max(1e-3, std::abs(analytic)))
        throw NumericalError("branching_time: finite-difference check failed");
    return analytic;
}

double branching_time(const ModelParams& params) { return branching_time(params, lyapunov(params, CrossCheck::none)); }

ChaosResult chaos_point(const ModelParams& params, CrossCheck check) {
    const double g = params.gamma0();
    const double kappa = lyapunov(params, check);
    const double tb = branching_time(params, kappa);
    const double gamma = decay_and_frequency(params).decay_rate;
    // Gamma = 2 g0 - sqrt(g0^2 - U^2) reduces to g0 at U = 0
    return {params.U() / g, params.q(), kappa, tb, tb * (kappa + g), tb * (kappa + gamma)};
}

ChaosScan scan_chaos(std::span<const int> q_list, std::span<const double> u_grid, CrossCheck check) {
    const std::size_t nu = u_grid.size();
    const std::size_t total = q_list.size() * nu;
    std::vector<ChaosResult> results(total);
    std::vector<std::string> errors(total);
    std::vector<char> ok(total, 0);

#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < total; ++k) {
        const int q = q_list[k / nu];
        const double u = u_grid[k % nu];
        try {
            results[k] = chaos_point(ModelParams::from_gamma0(1.0, q, u), check);
            ok[k] = 1;
        } catch (const std::exception& e) {
            errors[k] = "q=" + std::to_string(q) + " U=" + std::to_string(u) + ": " + e.what();
        }
    }

    ChaosScan scan;
    for (std::size_t iq = 0; iq < q_list.size(); ++iq) {
        ChaosPeak peak{q_list[iq], -std::numeric_limits<double>::infinity(), std::nan(""),
                       -std::numeric_limits<double>::infinity(), std::nan("")};
        for (std::size_t iu = 0; iu < nu; ++iu) {
            const std::size_t k = iq * nu + iu;
            if (!ok[k]) {
                scan.failures.push_back(errors[k]);
                continue;
            }
            const auto& r = results[k];
            scan.rows.push_back(r);
            if (r.bound_product > peak.max_bound_product) {
                peak.max_bound_product = r.bound_product;
                peak.arg_u_over_gamma0 = r.u_over_gamma0;
            }
            if (r.bound_product_gamma > peak.max_bound_product_gamma) {
                peak.max_bound_product_gamma = r.bound_product_gamma;
                peak.arg_u_over_gamma0_gamma = r.u_over_gamma0;
            }
        }
        scan.peaks.push_back(peak);
    }
    return scan;
}

std::vector<double> VolterraResult::component(int a, int b) const {
    std::vector<double> out(otoc.size());
    for (std::size_t k = 0; k < otoc.size(); ++k) out[k] = otoc[k](a, b);
    return out;
}

std::vector<double> VolterraResult::row_sum(int a) const {
    std::vector<double> out(otoc.size());
    for (std::size_t k = 0; k < otoc.size(); ++k) out[k] = otoc[k].row(a).sum();
    return out;
}

namespace {

std::vector<FlavorMatrix> march(const std::vector<FlavorMatrix>& f, double c, double dt) {
    const std::size_t n = f.size();
    std::vector<FlavorMatrix> o(n);
    o[0] = f[0];
    const FlavorMatrix lhs = FlavorMatrix::Identity() - 0.5 * c * dt * f[0];
    const Eigen::PartialPivLU<FlavorMatrix> lu(lhs);
    for (std::size_t k = 1; k < n; ++k) {
        FlavorMatrix acc = 0.5 * f[k] * o[0];
        for (std::size_t j = 1; j < k; ++j) acc.noalias() += f[k - j] * o[j];
        o[k] = lu.solve(f[k] + c * dt * acc);
    }
    return o;
}

}  // namespace

VolterraResult otoc_volterra(const ModelParams& params, double t_max, double dt, bool richardson) {
    if (!(t_max > 0.0)) throw std::invalid_argument("otoc_volterra: t_max must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("otoc_volterra: dt must be positive");
    const double g = params.gamma0();
    double rate = std::max(g, params.U());
    try {
        rate = std::max(rate, lyapunov(params, CrossCheck::none));
    } catch (const NoGrowthExponentError&) {
    }
    if (dt > (0.01 / rate) * (1.0 + 1e-12))
        throw std::invalid_argument("otoc_volterra: dt must be <= 0.01 / max(gamma0, U, kappa)");

    const auto n = static_cast<std::size_t>(std::llround(t_max / dt)) + 1;
    const double c = (params.q() - 1) * g;
    const RungEvaluator evaluator(params);

    VolterraResult out;
    out.dt = dt;
    out.t.resize(n);
    for (std::size_t k = 0; k < n; ++k) out.t[k] = dt * static_cast<double>(k);
    out.rung = evaluator.rung_on_grid(dt, n);
    out.otoc = march(out.rung, c, dt);

    if (richardson) {
        const auto fine = march(evaluator.rung_on_grid(0.5 * dt, 2 * n - 1), c, 0.5 * dt);
        double err = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const FlavorMatrix& ref = fine[2 * k];
            const double scale = std::max(1.0, ref.cwiseAbs().maxCoeff());
            err = std::max(err, (out.otoc[k] - ref).cwiseAbs().maxCoeff() / (3.0 * scale));
        }
        out.richardson_error = err;
    }
    return out;
}

std::vector<double> otoc_volterra(const ModelParams& params, double t_max, double dt, int a, int b) {
    if (a < 0 || a >= kFlavors || b < 0 || b >= kFlavors)
        throw std::invalid_argument("otoc_volterra: flavor index out of range");
    return otoc_volterra(params, t_max, dt, false).component(a, b);
}

double growth_rate(const VolterraResult& result, int a, double t_from, double t_to) {
    const auto sums = result.row_sum(a);
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (std::size_t k = 0; k < sums.size(); ++k) {
        const double t = result.t[k];
        if (t < t_from || t > t_to) continue;
        if (!(sums[k] > 0.0)) throw NumericalError("growth_rate: OTOC sum is not positive in the window");
        const double y = std::log(sums[k]);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("growth_rate: fewer than two samples in the window");
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
}

}  // namespace sykh
