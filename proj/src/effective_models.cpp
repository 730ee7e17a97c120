#include "sykh/effective_models.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace sykh {

ModelParams::ModelParams(double coupling_rate, int body_count, double hubbard)
    : coupling_rate_(coupling_rate), body_count_(body_count), hubbard_(hubbard) {
    if (!std::isfinite(coupling_rate) || coupling_rate < 0.0)
        throw std::invalid_argument("ModelParams: J must be finite and >= 0");
    if (body_count < 2) throw std::invalid_argument("ModelParams: q must be >= 2");
    if (!std::isfinite(hubbard) || hubbard < 0.0)
        throw std::invalid_argument("ModelParams: U must be finite and >= 0");
    gamma0_ = std::ldexp(coupling_rate_, 2 - body_count_);
}

ModelParams ModelParams::from_gamma0(double gamma0, int body_count, double hubbard) {
    if (body_count < 2) throw std::invalid_argument("ModelParams: q must be >= 2");
    return {std::ldexp(gamma0, body_count - 2), body_count, hubbard};
}

ModelParams ModelParams::with_body_count(int body_count) const {
    return from_gamma0(gamma0_, body_count, hubbard_);
}

const StateVector& EffectiveModel::state(const std::string& label) const {
    auto it = boundary_states.find(label);
    if (it == boundary_states.end()) throw std::out_of_range("no boundary state '" + label + "'");
    return it->second;
}

const DeclaredEigenpair& EffectiveModel::eigenpair(const std::string& label) const {
    for (const auto& p : eigenpairs)
        if (p.state == label) return p;
    throw std::out_of_range("no declared eigenpair for '" + label + "'");
}

double annihilation_residual(const MajoranaSet& majoranas,
                             const std::vector<std::pair<int, int>>& pairs, const StateVector& v) {
    double worst = 0.0;
    const Complex i(0.0, 1.0);
    for (const auto& [p, r] : pairs) {
        const StateVector w = majoranas.monomials[p].apply(v) - i * majoranas.monomials[r].apply(v);
        worst = std::max(worst, w.norm());
    }
    return worst;
}

StateVector build_epr_state(const MajoranaSet& majoranas,
                            const std::vector<std::pair<int, int>>& pairs) {
    std::vector<bool> used(majoranas.n_modes, false);
    for (const auto& [p, r] : pairs) {
        for (int m : {p, r}) {
            if (m < 0 || m >= majoranas.n_modes)
                throw std::invalid_argument("build_epr_state: mode index out of range");
            if (used[m]) throw std::invalid_argument("build_epr_state: pairs are not disjoint");
            used[m] = true;
        }
    }
    const Eigen::Index dim = majoranas.dim;
    const Complex i(0.0, 1.0);
    Eigen::MatrixXcd stacked(dim * static_cast<Eigen::Index>(pairs.size()), dim);
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        const auto& [p, r] = pairs[k];
        stacked.middleRows(static_cast<Eigen::Index>(k) * dim, dim) = majoranas[p] - i * majoranas[r];
    }
    const Eigen::MatrixXcd kernel = null_space(stacked, 1e-8);
    if (kernel.cols() != 1) throw InconsistentPairingError(kernel.cols());

    StateVector v = kernel.col(0).normalized();
    const double peak = v.cwiseAbs().maxCoeff();
    Eigen::Index anchor = 0;
    while (std::abs(v[anchor]) < peak * (1.0 - 1e-9)) ++anchor;
    v *= std::abs(v[anchor]) / v[anchor];
    v[anchor] = std::abs(v[anchor]);
    return v;
}

std::vector<std::pair<int, int>> epr_pairs_single() {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < kFlavors; ++a) out.emplace_back(mode_of(Branch::L, a), mode_of(Branch::R, a));
    return out;
}

std::vector<std::pair<int, int>> epr1_pairs() {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < kFlavors; ++a) {
        out.emplace_back(mode_of(Branch2::L1, a), mode_of(Branch2::R1, a));
        out.emplace_back(mode_of(Branch2::L2, a), mode_of(Branch2::R2, a));
    }
    return out;
}

std::vector<std::pair<int, int>> epr2_pairs() {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < kFlavors; ++a) {
        out.emplace_back(mode_of(Branch2::L1, a), mode_of(Branch2::R2, a));
        out.emplace_back(mode_of(Branch2::R1, a), mode_of(Branch2::L2, a));
    }
    return out;
}

namespace {

void add_term(DenseOperator& h, Complex coeff, const MonomialOperator& term) {
    for (Eigen::Index j = 0; j < term.dim(); ++j) h(term.row(j), j) += coeff * term.value(j);
}

template <typename B>
MonomialOperator hubbard_string(const MajoranaSet& set, B branch) {
    return set.product({mode_of(branch, 0), mode_of(branch, 1), mode_of(branch, 2), mode_of(branch, 3)});
}

double largest_real_eigenvalue(const DenseOperator& h) {
    Eigen::ComplexEigenSolver<DenseOperator> solver(h, false);
    if (solver.info() != Eigen::Success) throw NumericalError("dense eigensolve failed");
    return solver.eigenvalues().real().maxCoeff();
}

}  // namespace

EffectiveModel build_h1(const ModelParams& params, double lambda) {
    if (!std::isfinite(lambda) || lambda < 0.0)
        throw std::invalid_argument("build_h1: lambda must be finite and >= 0");
    const Complex i(0.0, 1.0);
    EffectiveModel model;
    model.majoranas = build_majoranas(8);
    const auto& set = model.majoranas;
    model.hamiltonian = DenseOperator::Zero(set.dim, set.dim);
    for (int a = 0; a < kFlavors; ++a)
        add_term(model.hamiltonian, i * (lambda / 2.0),
                 set.product({mode_of(Branch::L, a), mode_of(Branch::R, a)}));
    add_term(model.hamiltonian, -i * params.U(), hubbard_string(set, Branch::L));
    add_term(model.hamiltonian, i * params.U(), hubbard_string(set, Branch::R));

    const StateVector epr = build_epr_state(set, epr_pairs_single());
    const StateVector h_epr = model.hamiltonian * epr;
    const Complex rayleigh = epr.dot(h_epr);
    const double residual = (h_epr - rayleigh * epr).norm();
    const double scale = std::max(1.0, lambda + params.U());
    if (residual > kConventionTolerance * scale || std::abs(rayleigh.imag()) > kConventionTolerance * scale)
        throw ConventionMismatchError("build_h1: EPR is not an eigenstate with real eigenvalue (residual " +
                                      std::to_string(residual) + ")");
    model.boundary_states.emplace("EPR", epr);
    model.eigenpairs.push_back({"EPR", EigenSide::right, rayleigh.real(), residual});
    model.extremal_eigenvalue = largest_real_eigenvalue(model.hamiltonian);
    return model;
}

EffectiveModel build_h2(const ModelParams& params, bool measure_spectrum) {
    const Complex i(0.0, 1.0);
    const double g0 = params.gamma0();
    const double u = params.U();
    EffectiveModel model;
    model.majoranas = build_majoranas(16);
    const auto& set = model.majoranas;
    auto& h = model.hamiltonian;
    h = DenseOperator::Zero(set.dim, set.dim);

    for (int a = 0; a < kFlavors; ++a) {
        const int l1 = mode_of(Branch2::L1, a), r1 = mode_of(Branch2::R1, a);
        const int l2 = mode_of(Branch2::L2, a), r2 = mode_of(Branch2::R2, a);
        // -(g0/2) (chi^L1 - i chi^R1)(chi^L2 - i chi^R2)
        add_term(h, -g0 / 2.0, set.product({l1, l2}));
        add_term(h, i * g0 / 2.0, set.product({l1, r2}));
        add_term(h, i * g0 / 2.0, set.product({r1, l2}));
        add_term(h, g0 / 2.0, set.product({r1, r2}));
        // i(g0/2)(chi^L1 chi^R1 + chi^L2 chi^R2)
        add_term(h, i * g0 / 2.0, set.product({l1, r1}));
        add_term(h, i * g0 / 2.0, set.product({l2, r2}));
    }
    add_term(h, -i * u, hubbard_string(set, Branch2::L1));
    add_term(h, i * u, hubbard_string(set, Branch2::R1));
    add_term(h, -i * u, hubbard_string(set, Branch2::L2));
    add_term(h, i * u, hubbard_string(set, Branch2::R2));

    const StateVector epr1 = build_epr_state(set, epr1_pairs());
    const StateVector epr2 = build_epr_state(set, epr2_pairs());
    // Residuals are taken against the expected 2 gamma0; the stored values are
    // the measured Rayleigh quotients.
    const double expected = 2.0 * g0;
    const StateVector h_epr1 = h * epr1;
    const StateVector h_adj_epr2 = h.adjoint() * epr2;
    const Complex value1 = epr1.dot(h_epr1);
    const Complex value2 = std::conj(epr2.dot(h_adj_epr2));
    const double res1 = (h_epr1 - expected * epr1).norm();
    const double res2 = (h_adj_epr2 - expected * epr2).norm();
    const double scale = std::max(1.0, g0 + u);
    if (res1 > kConventionTolerance * scale || res2 > kConventionTolerance * scale)
        throw ConventionMismatchError("build_h2: EPR eigenstate residuals " + std::to_string(res1) + ", " +
                                      std::to_string(res2));
    model.boundary_states.emplace("EPR1", epr1);
    model.boundary_states.emplace("EPR2", epr2);
    model.eigenpairs.push_back({"EPR1", EigenSide::right, value1.real(), res1});
    model.eigenpairs.push_back({"EPR2", EigenSide::left, value2.real(), res2});
    model.extremal_eigenvalue = measure_spectrum ? largest_real_eigenvalue(h)
                                                 : std::numeric_limits<double>::quiet_NaN();
    return model;
}

}  // namespace sykh
