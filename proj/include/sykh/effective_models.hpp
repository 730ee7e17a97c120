#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "sykh/majorana_algebra.hpp"

namespace sykh {

/// Physical couplings of the Brownian SYK-Hubbard model (hbar = 1).
///   J  Brownian coupling rate
///   q  SYK body count
///   U  on-site Hubbard strength
/// gamma0() = J / 2^(q-2) is the natural unit for every reported rate and
/// time. The saddle self-energy is J / 2^(q-1) = gamma0 / 2, and with the
/// Brownian variance (q-1)! J / (N^(q-1) dt) the U = 0 two-point function
/// decays as e^{-gamma0 t / 2}.
class ModelParams {
public:
    ModelParams(double coupling_rate, int body_count, double hubbard);

    /// Parameters with J chosen so that gamma0 takes the requested value.
    static ModelParams from_gamma0(double gamma0, int body_count, double hubbard);

    double J() const { return coupling_rate_; }
    int q() const { return body_count_; }
    double U() const { return hubbard_; }
    double gamma0() const { return gamma0_; }

    ModelParams with_hubbard(double hubbard) const { return {coupling_rate_, body_count_, hubbard}; }
    ModelParams with_body_count(int body_count) const;

private:
    double coupling_rate_;
    int body_count_;
    double hubbard_;
    double gamma0_;
};

enum class EigenSide { right, left };

/// A boundary state the construction asserts to be an eigenvector.
/// value is the measured Rayleigh quotient; residual is ||H v - value v||
/// (right) or ||v^dag H - value v^dag|| (left) against the expected value.
struct DeclaredEigenpair {
    std::string state;
    EigenSide side;
    double value;
    double residual;
};

struct EffectiveModel {
    MajoranaSet majoranas;
    DenseOperator hamiltonian;
    std::map<std::string, StateVector> boundary_states;
    std::vector<DeclaredEigenpair> eigenpairs;
    // Largest real part of the spectrum, from a dense eigensolve.
    double extremal_eigenvalue = 0.0;

    const StateVector& state(const std::string& label) const;
    const DeclaredEigenpair& eigenpair(const std::string& label) const;
};

// Mode layout. Flavors are 0-based (paper flavor a corresponds to a-1).
//   single replica: L_a -> a,      R_a -> 4 + a
//   two replicas:   L1_a -> a, R1_a -> 4 + a, L2_a -> 8 + a, R2_a -> 12 + a
inline constexpr int kFlavors = 4;
enum class Branch { L, R };
enum class Branch2 { L1, R1, L2, R2 };
constexpr int mode_of(Branch b, int flavor) { return 4 * static_cast<int>(b) + flavor; }
constexpr int mode_of(Branch2 b, int flavor) { return 4 * static_cast<int>(b) + flavor; }

/// State annihilated by every (chi_p - i chi_r) for the given (p, r) pairs,
/// normalized, with its largest-magnitude amplitude made real positive
/// (first such index on ties). Throws InconsistentPairingError unless the
/// joint kernel is one-dimensional.
StateVector build_epr_state(const MajoranaSet& majoranas, const std::vector<std::pair<int, int>>& pairs);

/// max_k || (chi_p - i chi_r) v || over the pairs
double annihilation_residual(const MajoranaSet& majoranas,
                             const std::vector<std::pair<int, int>>& pairs, const StateVector& v);

std::vector<std::pair<int, int>> epr_pairs_single();
std::vector<std::pair<int, int>> epr1_pairs();
std::vector<std::pair<int, int>> epr2_pairs();

/// Single-replica effective Hamiltonian with the self-energy rate lambda
/// (lambda = gamma0 on the Keldysh contour):
///   H = i sum_a (lambda/2) chi^L_a chi^R_a - iU chi^L_1..4 + iU chi^R_1..4
/// Boundary state "EPR". Its eigenvalue is measured as a Rayleigh quotient;
/// throws ConventionMismatchError if it is not an eigenstate with real
/// eigenvalue to 1e-11.
EffectiveModel build_h1(const ModelParams& params, double lambda);

/// Two-replica effective Hamiltonian on 16 modes with boundary states "EPR1"
/// (right eigenstate) and "EPR2" (left eigenstate), both at eigenvalue
/// 2 gamma0. Throws ConventionMismatchError on residual above 1e-10.
EffectiveModel build_h2(const ModelParams& params, bool measure_spectrum = true);

inline constexpr double kEigenResidualTolerance = 1e-11;
inline constexpr double kConventionTolerance = 1e-10;

}  // namespace sykh
