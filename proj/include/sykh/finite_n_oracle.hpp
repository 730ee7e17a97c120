#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Sparse>

#include "sykh/majorana_algebra.hpp"

namespace sykh {

/// Monte-Carlo settings for the microscopic model on n_sites sites with
/// four Majorana flavors each (4 n_sites modes).
struct McConfig {
    int n_sites = 4;
    int q = 2;
    double J = 2.0;
    double U = 0.0;
    double dt = 0.01;
    double t_max = 3.0;
    int n_samples = 100;
    std::uint64_t master_seed = 1;
    // Random-phase probe vectors per sample when the trace is not taken exactly.
    int trace_vectors = 8;

    /// Throws std::invalid_argument unless 4 n_sites <= 20, n_sites >= q >= 2,
    /// dt > 0, dt max(J, U) <= 0.05, t_max >= 0, n_samples >= 2, trace_vectors >= 8 and even.
    void validate() const;
    double gamma0() const;
    int n_steps() const;  // round(t_max / dt)
};

/// Hilbert dimensions up to this size use the exact trace.
inline constexpr Eigen::Index kExactTraceMaxDim = 64;

struct McEstimate {
    std::vector<double> t_grid;
    std::vector<double> mean;
    std::vector<double> std_error;  // sample std / sqrt(n_samples_used)
    std::vector<double> median;
    int n_samples_used = 0;
};

struct SffMcEstimate {
    McEstimate raw;                    // |Tr U(T)|^2
    std::vector<double> ln_sff_over_n; // ln(mean) / N, NaN where the mean is not positive
};

/// Coupling draws for one time step, flavor-major over the lexicographic
/// list of q-subsets of sites.
struct Couplings {
    int q = 0;
    int n_sites = 0;
    std::vector<double> values;
};

std::uint64_t sample_seed(std::uint64_t master_seed, std::uint64_t index, std::uint64_t stream = 0);

/// Gaussian couplings with variance (q-1)! J / (N^(q-1) dt).
Couplings sample_couplings(const McConfig& cfg, std::mt19937_64& rng);
double coupling_variance(const McConfig& cfg);

/// Step Hamiltonian and dense exp(-i H dt). step_unitary throws
/// NumericalError if ||W^dag W - I|| exceeds 1e-11.
DenseOperator step_hamiltonian(const McConfig& cfg, const Couplings& couplings);
DenseOperator step_unitary(const McConfig& cfg, const Couplings& couplings);

/// Precomputed operator content of the microscopic model.
class MicroscopicModel {
public:
    explicit MicroscopicModel(const McConfig& cfg);

    Eigen::Index dim() const { return dim_; }
    int n_terms() const { return static_cast<int>(terms_.size()); }
    const std::vector<std::vector<int>>& subsets() const { return subsets_; }

    Eigen::SparseMatrix<Complex, Eigen::RowMajor> hamiltonian(const Couplings& couplings) const;
    /// v <- exp(-i H dt) v by a Taylor series, split into sub-steps of norm bound <= 1.
    void evolve(const Couplings& couplings, double dt, Eigen::MatrixXcd& v) const;
    /// sqrt(2) chi for site 0, flavor 0: a monomial with exact entries of unit modulus.
    const MonomialOperator& probe() const { return probe_; }

private:
    McConfig cfg_;
    Eigen::Index dim_;
    std::vector<std::vector<int>> subsets_;
    std::vector<MonomialOperator> terms_;  // i^{q(q-1)/2} chi...chi per flavor and subset
    std::vector<Eigen::Triplet<Complex>> hubbard_;
    MonomialOperator probe_;
    double term_norm_;
};

/// Disorder-averaged G(t) = 2^{-2N} tr[U^dag chi U chi] on t_k = k dt.
McEstimate greens_mc(const McConfig& cfg);

/// Disorder-averaged |Tr U(T)|^2 on t_k = k dt up to T.
SffMcEstimate sff_mc(const McConfig& cfg, double T);

/// Paired estimates for the dt-convergence check: the fine run uses dt / 2
/// and the coarse run cfg.dt with each coupling the average of the two fine
/// draws it spans (same probes, same variance law). difference holds the
/// per-time mean and std_error of fine - coarse on the coarse grid.
struct DtPair {
    McEstimate fine;
    McEstimate coarse;
    McEstimate difference;
};
DtPair greens_mc_dt_pair(const McConfig& cfg);

}  // namespace sykh
