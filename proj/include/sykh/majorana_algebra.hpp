#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include <Eigen/Sparse>

#include "sykh/types.hpp"

namespace sykh {

/// An operator with exactly one nonzero entry per column (a phased
/// permutation). Products of Jordan-Wigner Majoranas are always of this form,
/// which makes them cheap to multiply and to apply.
class MonomialOperator {
public:
    MonomialOperator() = default;
    // rows must be a permutation of 0..n-1.
    MonomialOperator(std::vector<Eigen::Index> rows, std::vector<Complex> values);
    static MonomialOperator identity(Eigen::Index dim);

    Eigen::Index dim() const { return static_cast<Eigen::Index>(row_.size()); }

    // Column j maps to row row(j) with amplitude value(j).
    Eigen::Index row(Eigen::Index j) const { return row_[j]; }
    Complex value(Eigen::Index j) const { return value_[j]; }

    MonomialOperator operator*(const MonomialOperator& rhs) const;
    MonomialOperator& operator*=(Complex c);
    MonomialOperator adjoint() const;

    StateVector apply(const StateVector& v) const;
    // out += coeff * (this * in), column by column
    void accumulate(Complex coeff, const Eigen::MatrixXcd& in, Eigen::MatrixXcd& out) const;
    DenseOperator to_dense() const;
    // Appends (row, col, coeff * value) triplets for sparse assembly.
    void append_triplets(Complex coeff, std::vector<Eigen::Triplet<Complex>>& out) const;

private:
    std::vector<Eigen::Index> row_;
    std::vector<Complex> value_;
};

/// Dense Jordan-Wigner representation of n Majorana modes with
/// {chi_i, chi_j} = delta_ij, so chi_i^2 = 1/2.
///
/// Ordering: the n/2 qubits are laid out most-significant first in the basis
/// index (qubit 0 is the leftmost Kronecker factor). Mode 2k is
/// Z...Z X I...I / sqrt(2) and mode 2k+1 is Z...Z Y I...I / sqrt(2), with k
/// Z factors in front. All sign conventions downstream inherit from this.
struct MajoranaSet {
    int n_modes = 0;
    Eigen::Index dim = 0;
    std::vector<DenseOperator> ops;
    std::vector<MonomialOperator> monomials;

    const DenseOperator& operator[](int mode) const { return ops[mode]; }

    // Ordered product chi_{m0} chi_{m1} ... as a monomial operator.
    MonomialOperator product(std::span<const int> modes) const;
    MonomialOperator product(std::initializer_list<int> modes) const {
        return product(std::span<const int>(modes.begin(), modes.size()));
    }
};

inline constexpr int kMaxModes = 20;

/// Throws std::invalid_argument for odd, non-positive or > kMaxModes counts.
/// With with_dense = false only the monomial form is built and ops stays empty.
MajoranaSet build_majoranas(int n_modes, bool with_dense = true);

/// max_{i,j} || {chi_i, chi_j} - delta_ij I ||_max
double clifford_defect(const MajoranaSet& set);

bool is_hermitian(const DenseOperator& op, double tol);
bool is_anti_hermitian(const DenseOperator& op, double tol);

/// exp(A t) by scaling and squaring with a degree-{3,5,7,9,13} Pade
/// approximant, degree chosen from the 1-norm of A t. Valid for
/// non-Hermitian and non-diagonalizable A.
DenseOperator matrix_exponential(const DenseOperator& a, double t);

/// Solves (z - A) x = v. Throws SingularResolventError when the relative
/// residual exceeds 1e-10.
StateVector resolvent_apply(const DenseOperator& a, Complex z, const StateVector& v);
Eigen::MatrixXcd resolvent_apply(const DenseOperator& a, Complex z, const Eigen::MatrixXcd& rhs);

inline constexpr double kResolventTolerance = 1e-10;

/// Orthonormal basis (as columns) of { v : ||A v|| <= tol ||A||_2 }.
/// An empty kernel yields a matrix with zero columns.
Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& a, double tol);

}  // namespace sykh
