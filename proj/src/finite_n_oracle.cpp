#include "sykh/finite_n_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace sykh {

void McConfig::validate() const {
    if (n_sites < 1 || 4 * n_sites > kMaxModes)
        throw std::invalid_argument("McConfig: 4 n_sites must lie in [4, 20]");
    if (q < 2 || q % 2 != 0) throw std::invalid_argument("McConfig: q must be even and >= 2");
    if (n_sites < q) throw std::invalid_argument("McConfig: n_sites must be >= q");
    if (!(J >= 0.0) || !(U >= 0.0) || !std::isfinite(J) || !std::isfinite(U))
        throw std::invalid_argument("McConfig: J and U must be finite and >= 0");
    if (!(dt > 0.0)) throw std::invalid_argument("McConfig: dt must be positive");
    if (dt * std::max(J, U) > 0.05 * (1.0 + 1e-12))
        throw std::invalid_argument("McConfig: dt max(J, U) must be <= 0.05");
    if (!(t_max >= 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("McConfig: t_max must be >= 0");
    if (n_samples < 2) throw std::invalid_argument("McConfig: n_samples must be >= 2");
    if (trace_vectors < 8 || trace_vectors % 2 != 0)
        throw std::invalid_argument("McConfig: trace_vectors must be even and >= 8");
}

double McConfig::gamma0() const { return std::ldexp(J, 2 - q); }

int McConfig::n_steps() const { return static_cast<int>(std::llround(t_max / dt)); }

std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t index, std::uint64_t stream) {
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    return mix(mix(mix(master_seed) ^ index) ^ (stream * 0xd1b54a32d192ed03ULL));
}

namespace {

std::vector<std::vector<int>> subsets_of(int n, int q) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(q);
    for (int i = 0; i < q; ++i) cur[i] = i;
    while (true) {
        out.push_back(cur);
        int i = q - 1;
        while (i >= 0 && cur[i] == n - q + i) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < q; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

long binomial(int n, int k) {
    long r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

int mode(int site, int flavor) { return 4 * site + flavor; }

Complex i_power(int k) {
    static const Complex table[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return table[((k % 4) + 4) % 4];
}

}  // namespace

double coupling_variance(const McConfig& cfg) {
    double fact = 1.0;
    for (int k = 2; k < cfg.q; ++k) fact *= k;
    return fact * cfg.J / (std::pow(static_cast<double>(cfg.n_sites), cfg.q - 1) * cfg.dt);
}

Couplings sample_couplings(const McConfig& cfg, std::mt19937_64& rng) {
    cfg.validate();
    Couplings c;
    c.q = cfg.q;
    c.n_sites = cfg.n_sites;
    c.values.resize(static_cast<std::size_t>(4 * binomial(cfg.n_sites, cfg.q)));
    if (cfg.J == 0.0) return c;
    std::normal_distribution<double> normal(0.0, std::sqrt(coupling_variance(cfg)));
    for (double& v : c.values) v = normal(rng);
    return c;
}

MicroscopicModel::MicroscopicModel(const McConfig& cfg) : cfg_(cfg) {
    cfg.validate();
    const MajoranaSet chi = build_majoranas(4 * cfg.n_sites, false);
    dim_ = chi.dim;
    subsets_ = subsets_of(cfg.n_sites, cfg.q);
    const Complex phase = i_power(cfg.q * (cfg.q - 1) / 2);
    for (int a = 0; a < 4; ++a) {
        for (const auto& s : subsets_) {
            std::vector<int> modes;
            for (int site : s) modes.push_back(mode(site, a));
            MonomialOperator term = chi.product(modes);
            term *= phase;
            terms_.push_back(std::move(term));
        }
    }
    term_norm_ = std::ldexp(1.0, -cfg.q / 2);
    for (int i = 0; i < cfg.n_sites; ++i)
        chi.product({mode(i, 0), mode(i, 1), mode(i, 2), mode(i, 3)}).append_triplets(cfg.U, hubbard_);

    // sqrt(2) chi_{site 0, flavor 0}, rounded onto its exact unit-modulus entries
    const MonomialOperator& c0 = chi.monomials[mode(0, 0)];
    std::vector<Eigen::Index> rows(dim_);
    std::vector<Complex> values(dim_);
    for (Eigen::Index j = 0; j < dim_; ++j) {
        rows[j] = c0.row(j);
        const Complex v = c0.value(j) * std::sqrt(2.0);
        values[j] = {std::round(v.real()), std::round(v.imag())};
    }
    probe_ = MonomialOperator(std::move(rows), std::move(values));
}

Eigen::SparseMatrix<Complex, Eigen::RowMajor> MicroscopicModel::hamiltonian(const Couplings& couplings) const {
    if (couplings.values.size() != terms_.size())
        throw std::invalid_argument("hamiltonian: couplings do not match the model");
    std::vector<Eigen::Triplet<Complex>> triplets = hubbard_;
    triplets.reserve(hubbard_.size() + terms_.size() * static_cast<std::size_t>(dim_));
    for (std::size_t t = 0; t < terms_.size(); ++t)
        if (couplings.values[t] != 0.0) terms_[t].append_triplets(couplings.values[t], triplets);
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> h(dim_, dim_);
    h.setFromTriplets(triplets.begin(), triplets.end());
    return h;
}

void MicroscopicModel::evolve(const Couplings& couplings, double dt, Eigen::MatrixXcd& v) const {
    const auto h = hamiltonian(couplings);
    double bound = cfg_.n_sites * std::abs(cfg_.U) / 4.0;
    for (double c : couplings.values) bound += std::abs(c) * term_norm_;
    const int substeps = std::max(1, static_cast<int>(std::ceil(bound * dt)));
    const double step = dt / substeps;
    Eigen::MatrixXcd term;
    for (int s = 0; s < substeps; ++s) {
        term = v;
        for (int k = 1; k <= 60; ++k) {
            term = (h * term) * Complex(0.0, -step / k);
            v += term;
            if (term.norm() <= 1e-17 * v.norm()) break;
        }
    }
}

DenseOperator step_hamiltonian(const McConfig& cfg, const Couplings& couplings) {
    return DenseOperator(MicroscopicModel(cfg).hamiltonian(couplings));
}

DenseOperator step_unitary(const McConfig& cfg, const Couplings& couplings) {
    const DenseOperator h = step_hamiltonian(cfg, couplings);
    const DenseOperator w = matrix_exponential(Complex(0.0, -1.0) * h, cfg.dt);
    const double defect =
        (w.adjoint() * w - DenseOperator::Identity(w.rows(), w.cols())).cwiseAbs().maxCoeff();
    if (defect > 1e-11) throw NumericalError("step_unitary: unitarity defect " + std::to_string(defect));
    return w;
}

namespace {

// Probe columns: the basis (exact trace) or Z4 random-phase vectors.
Eigen::MatrixXcd draw_probes(Eigen::Index dim, int count, std::mt19937_64& rng) {
    if (dim <= kExactTraceMaxDim) return Eigen::MatrixXcd::Identity(dim, dim);
    static const Complex phases[] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    Eigen::MatrixXcd out(dim, count);
    for (Eigen::Index c = 0; c < count; ++c)
        for (Eigen::Index r = 0; r < dim; ++r) out(r, c) = phases[rng() >> 62];
    return out;
}

McEstimate reduce(const Eigen::MatrixXd& samples, double dt) {
    const auto n = samples.rows();
    McEstimate est;
    est.n_samples_used = static_cast<int>(n);
    std::vector<double> column(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < samples.cols(); ++k) {
        double sum = 0.0;
        for (Eigen::Index s = 0; s < n; ++s) sum += samples(s, k);
        const double mean = sum / n;
        double ss = 0.0;
        for (Eigen::Index s = 0; s < n; ++s) ss += (samples(s, k) - mean) * (samples(s, k) - mean);
        for (Eigen::Index s = 0; s < n; ++s) column[s] = samples(s, k);
        std::sort(column.begin(), column.end());
        const double median = n % 2 ? column[n / 2] : 0.5 * (column[n / 2 - 1] + column[n / 2]);
        est.t_grid.push_back(dt * static_cast<double>(k));
        est.mean.push_back(mean);
        est.std_error.push_back(std::sqrt(ss / (n - 1)) / std::sqrt(static_cast<double>(n)));
        est.median.push_back(median);
    }
    return est;
}

// G estimate from the evolved block [U psi, U P psi].
double greens_estimate(const MicroscopicModel& model, const Eigen::MatrixXcd& v, double probe_norm) {
    const Eigen::Index k = v.cols() / 2;
    Eigen::MatrixXcd pv = Eigen::MatrixXcd::Zero(v.rows(), k);
    model.probe().accumulate(1.0, v.rightCols(k), pv);
    Complex acc = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) acc += v.col(c).dot(pv.col(c));
    return 0.5 * acc.real() / probe_norm;
}

Eigen::MatrixXcd greens_start(const MicroscopicModel& model, const Eigen::MatrixXcd& probes) {
    Eigen::MatrixXcd v(probes.rows(), 2 * probes.cols());
    v.leftCols(probes.cols()) = probes;
    Eigen::MatrixXcd pp = Eigen::MatrixXcd::Zero(probes.rows(), probes.cols());
    model.probe().accumulate(1.0, probes, pp);
    v.rightCols(probes.cols()) = pp;
    return v;
}

}  // namespace

McEstimate greens_mc(const McConfig& cfg) {
    cfg.validate();
    const MicroscopicModel model(cfg);
    const int steps = cfg.n_steps();
    Eigen::MatrixXd samples(cfg.n_samples, steps + 1);

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < cfg.n_samples; ++s) {
        std::mt19937_64 rng(sample_seed(cfg.master_seed, static_cast<std::uint64_t>(s), 0));
        const Eigen::MatrixXcd probes = draw_probes(model.dim(), cfg.trace_vectors, rng);
        const double norm = probes.squaredNorm();
        Eigen::MatrixXcd v = greens_start(model, probes);
        samples(s, 0) = greens_estimate(model, v, norm);
        for (int k = 1; k <= steps; ++k) {
            model.evolve(sample_couplings(cfg, rng), cfg.dt, v);
            samples(s, k) = greens_estimate(model, v, norm);
        }
    }
    return reduce(samples, cfg.dt);
}

SffMcEstimate sff_mc(const McConfig& cfg, double T) {
    cfg.validate();
    if (!(T >= 0.0)) throw std::invalid_argument("sff_mc: T must be >= 0");
    const MicroscopicModel model(cfg);
    const int steps = static_cast<int>(std::llround(T / cfg.dt));
    const double dim = static_cast<double>(model.dim());
    Eigen::MatrixXd samples(cfg.n_samples, steps + 1);

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < cfg.n_samples; ++s) {
        std::mt19937_64 rng(sample_seed(cfg.master_seed, static_cast<std::uint64_t>(s), 1));
        const Eigen::MatrixXcd probes = draw_probes(model.dim(), cfg.trace_vectors, rng);
        const bool exact = model.dim() <= kExactTraceMaxDim;
        const Eigen::Index half = probes.cols() / 2;
        Eigen::MatrixXcd v = probes;
        // Exact: |Tr U|^2. Random phase: Re(X_a conj X_b) from two independent halves.
        auto estimate = [&]() {
            if (exact) return std::norm(v.trace());
            Complex xa = 0.0, xb = 0.0;
            double na = 0.0, nb = 0.0;
            for (Eigen::Index c = 0; c < half; ++c) {
                xa += probes.col(c).dot(v.col(c));
                na += probes.col(c).squaredNorm();
                xb += probes.col(half + c).dot(v.col(half + c));
                nb += probes.col(half + c).squaredNorm();
            }
            return (xa * dim / na * std::conj(xb * dim / nb)).real();
        };
        samples(s, 0) = estimate();
        for (int k = 1; k <= steps; ++k) {
            model.evolve(sample_couplings(cfg, rng), cfg.dt, v);
            samples(s, k) = estimate();
        }
    }

    SffMcEstimate out;
    out.raw = reduce(samples, cfg.dt);
    for (double m : out.raw.mean)
        out.ln_sff_over_n.push_back(m > 0.0 ? std::log(m) / cfg.n_sites : std::numeric_limits<double>::quiet_NaN());
    return out;
}

DtPair greens_mc_dt_pair(const McConfig& cfg) {
    cfg.validate();
    McConfig fine_cfg = cfg;
    fine_cfg.dt = 0.5 * cfg.dt;
    const MicroscopicModel model(cfg);
    const int steps = cfg.n_steps();
    Eigen::MatrixXd fine(cfg.n_samples, 2 * steps + 1);
    Eigen::MatrixXd coarse(cfg.n_samples, steps + 1);
    Eigen::MatrixXd diff(cfg.n_samples, steps + 1);

#pragma omp parallel for schedule(dynamic)
    for (int s = 0; s < cfg.n_samples; ++s) {
        std::mt19937_64 rng(sample_seed(cfg.master_seed, static_cast<std::uint64_t>(s), 2));
        const Eigen::MatrixXcd probes = draw_probes(model.dim(), cfg.trace_vectors, rng);
        const double norm = probes.squaredNorm();
        Eigen::MatrixXcd vf = greens_start(model, probes);
        Eigen::MatrixXcd vc = vf;
        fine(s, 0) = coarse(s, 0) = greens_estimate(model, vf, norm);
        diff(s, 0) = 0.0;
        for (int k = 1; k <= steps; ++k) {
            const Couplings c1 = sample_couplings(fine_cfg, rng);
            const Couplings c2 = sample_couplings(fine_cfg, rng);
            Couplings avg = c1;
            for (std::size_t t = 0; t < avg.values.size(); ++t) avg.values[t] = 0.5 * (c1.values[t] + c2.values[t]);
            model.evolve(c1, fine_cfg.dt, vf);
            fine(s, 2 * k - 1) = greens_estimate(model, vf, norm);
            model.evolve(c2, fine_cfg.dt, vf);
            fine(s, 2 * k) = greens_estimate(model, vf, norm);
            model.evolve(avg, cfg.dt, vc);
            coarse(s, k) = greens_estimate(model, vc, norm);
            diff(s, k) = fine(s, 2 * k) - coarse(s, k);
        }
    }
    return {reduce(fine, fine_cfg.dt), reduce(coarse, cfg.dt), reduce(diff, cfg.dt)};
}

}  // namespace sykh
