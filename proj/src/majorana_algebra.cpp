#include "sykh/majorana_algebra.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>

namespace sykh {

MonomialOperator::MonomialOperator(std::vector<Eigen::Index> rows, std::vector<Complex> values)
    : row_(std::move(rows)), value_(std::move(values)) {
    if (row_.size() != value_.size())
        throw std::invalid_argument("monomial operator: rows/values size mismatch");
    std::vector<bool> seen(row_.size(), false);
    for (auto r : row_) {
        if (r < 0 || r >= dim() || seen[r])
            throw std::invalid_argument("monomial operator: rows are not a permutation");
        seen[r] = true;
    }
}

MonomialOperator MonomialOperator::identity(Eigen::Index dim) {
    MonomialOperator m;
    m.row_.resize(dim);
    m.value_.assign(dim, Complex(1.0, 0.0));
    for (Eigen::Index j = 0; j < dim; ++j) m.row_[j] = j;
    return m;
}

MonomialOperator MonomialOperator::operator*(const MonomialOperator& rhs) const {
    if (dim() != rhs.dim()) throw std::invalid_argument("monomial product: dimension mismatch");
    MonomialOperator out;
    out.row_.resize(rhs.dim());
    out.value_.resize(rhs.dim());
    for (Eigen::Index j = 0; j < rhs.dim(); ++j) {
        const Eigen::Index mid = rhs.row_[j];
        out.row_[j] = row_[mid];
        out.value_[j] = value_[mid] * rhs.value_[j];
    }
    return out;
}

MonomialOperator& MonomialOperator::operator*=(Complex c) {
    for (auto& v : value_) v *= c;
    return *this;
}

MonomialOperator MonomialOperator::adjoint() const {
    MonomialOperator out;
    out.row_.resize(dim());
    out.value_.resize(dim());
    for (Eigen::Index j = 0; j < dim(); ++j) {
        out.row_[row_[j]] = j;
        out.value_[row_[j]] = std::conj(value_[j]);
    }
    return out;
}

StateVector MonomialOperator::apply(const StateVector& v) const {
    StateVector out = StateVector::Zero(dim());
    for (Eigen::Index j = 0; j < dim(); ++j) out[row_[j]] += value_[j] * v[j];
    return out;
}

void MonomialOperator::accumulate(Complex coeff, const Eigen::MatrixXcd& in,
                                  Eigen::MatrixXcd& out) const {
    for (Eigen::Index c = 0; c < in.cols(); ++c) {
        const Complex* src = in.col(c).data();
        Complex* dst = out.col(c).data();
        for (Eigen::Index j = 0; j < dim(); ++j) dst[row_[j]] += coeff * value_[j] * src[j];
    }
}

DenseOperator MonomialOperator::to_dense() const {
    DenseOperator out = DenseOperator::Zero(dim(), dim());
    for (Eigen::Index j = 0; j < dim(); ++j) out(row_[j], j) = value_[j];
    return out;
}

void MonomialOperator::append_triplets(Complex coeff,
                                       std::vector<Eigen::Triplet<Complex>>& out) const {
    for (Eigen::Index j = 0; j < dim(); ++j) out.emplace_back(row_[j], j, coeff * value_[j]);
}

MonomialOperator MajoranaSet::product(std::span<const int> modes) const {
    MonomialOperator out = MonomialOperator::identity(dim);
    for (int m : modes) {
        if (m < 0 || m >= n_modes) throw std::invalid_argument("Majorana index out of range");
        out = out * monomials[m];
    }
    return out;
}

namespace {

// X or Y on qubit k with a Z string on qubits 0..k-1, scaled by 1/sqrt(2).
MonomialOperator jordan_wigner_mode(int mode, int n_qubits) {
    const int k = mode / 2;
    const bool is_y = (mode % 2) == 1;
    const Eigen::Index dim = Eigen::Index{1} << n_qubits;
    const std::uint64_t flip = std::uint64_t{1} << (n_qubits - 1 - k);
    const std::uint64_t string_mask = ((std::uint64_t{1} << k) - 1) << (n_qubits - k);
    const double scale = 1.0 / std::sqrt(2.0);

    std::vector<Eigen::Index> rows(dim);
    std::vector<Complex> values(dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        const auto bits = static_cast<std::uint64_t>(j);
        Complex amp((std::popcount(bits & string_mask) % 2) ? -scale : scale, 0.0);
        // Y|0> = i|1>, Y|1> = -i|0>
        if (is_y) amp *= (bits & flip) ? Complex(0.0, -1.0) : Complex(0.0, 1.0);
        rows[j] = static_cast<Eigen::Index>(bits ^ flip);
        values[j] = amp;
    }
    return MonomialOperator(std::move(rows), std::move(values));
}

}  // namespace

MajoranaSet build_majoranas(int n_modes, bool with_dense) {
    if (n_modes <= 0 || n_modes % 2 != 0)
        throw std::invalid_argument("build_majoranas: n_modes must be even and positive, got " +
                                    std::to_string(n_modes));
    if (n_modes > kMaxModes)
        throw std::invalid_argument("build_majoranas: n_modes " + std::to_string(n_modes) +
                                    " exceeds limit " + std::to_string(kMaxModes));
    MajoranaSet set;
    set.n_modes = n_modes;
    const int n_qubits = n_modes / 2;
    set.dim = Eigen::Index{1} << n_qubits;
    set.monomials.reserve(n_modes);
    if (with_dense) set.ops.reserve(n_modes);
    for (int m = 0; m < n_modes; ++m) {
        set.monomials.push_back(jordan_wigner_mode(m, n_qubits));
        if (with_dense) set.ops.push_back(set.monomials.back().to_dense());
    }
    return set;
}

double clifford_defect(const MajoranaSet& set) {
    if (static_cast<int>(set.ops.size()) != set.n_modes)
        throw std::invalid_argument("clifford_defect: dense operators not built");
    double worst = 0.0;
    const DenseOperator id = DenseOperator::Identity(set.dim, set.dim);
    for (int i = 0; i < set.n_modes; ++i) {
        for (int j = i; j < set.n_modes; ++j) {
            DenseOperator ac = set.ops[i] * set.ops[j] + set.ops[j] * set.ops[i];
            if (i == j) ac -= id;
            worst = std::max(worst, ac.cwiseAbs().maxCoeff());
        }
    }
    return worst;
}

bool is_hermitian(const DenseOperator& op, double tol) {
    return op.rows() == op.cols() && (op - op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_anti_hermitian(const DenseOperator& op, double tol) {
    return op.rows() == op.cols() && (op + op.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

namespace {

// Pade numerator/denominator pieces: exp(A) ~ (V - U)^{-1} (V + U).
void pade_terms(const DenseOperator& a, int degree, DenseOperator& u, DenseOperator& v) {
    const Eigen::Index n = a.rows();
    const DenseOperator id = DenseOperator::Identity(n, n);
    const DenseOperator a2 = a * a;
    switch (degree) {
    case 3: {
        const double b[] = {120.0, 60.0, 12.0, 1.0};
        u = a * (b[3] * a2 + b[1] * id);
        v = b[2] * a2 + b[0] * id;
        break;
    }
    case 5: {
        const double b[] = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
        const DenseOperator a4 = a2 * a2;
        u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
        v = b[4] * a4 + b[2] * a2 + b[0] * id;
        break;
    }
    case 7: {
        const double b[] = {17297280.0, 8648640.0, 1995840.0, 277200.0,
                            25200.0,    1512.0,    56.0,      1.0};
        const DenseOperator a4 = a2 * a2;
        const DenseOperator a6 = a4 * a2;
        u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
        v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
        break;
    }
    case 9: {
        const double b[] = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                            2162160.0,     110880.0,     3960.0,       90.0,        1.0};
        const DenseOperator a4 = a2 * a2;
        const DenseOperator a6 = a4 * a2;
        const DenseOperator a8 = a6 * a2;
        u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
        v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
        break;
    }
    default: {
        const double b[] = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                            1187353796428800.0,  129060195264000.0,   10559470521600.0,
                            670442572800.0,      33522128640.0,       1323241920.0,
                            40840800.0,          960960.0,            16380.0,
                            182.0,               1.0};
        const DenseOperator a4 = a2 * a2;
        const DenseOperator a6 = a4 * a2;
        DenseOperator inner = a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2);
        inner += b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id;
        u = a * inner;
        v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2);
        v += b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
        break;
    }
    }
}

}  // namespace

DenseOperator matrix_exponential(const DenseOperator& a, double t) {
    if (a.rows() != a.cols()) throw std::invalid_argument("matrix_exponential: matrix not square");
    if (!std::isfinite(t) || !a.allFinite())
        throw std::invalid_argument("matrix_exponential: non-finite input");
    const Eigen::Index n = a.rows();
    if (n == 0) return a;

    DenseOperator scaled = a * t;
    const double norm1 = scaled.cwiseAbs().colwise().sum().maxCoeff();
    if (norm1 == 0.0) return DenseOperator::Identity(n, n);

    // Higham (2005) backward-error thresholds
    constexpr std::array<std::pair<int, double>, 4> small = {{
        {3, 1.495585217958292e-2},
        {5, 2.539398330063230e-1},
        {7, 9.504178996162932e-1},
        {9, 2.097847961257068e0},
    }};
    constexpr double theta13 = 5.371920351148152e0;

    int degree = 13;
    int squarings = 0;
    for (const auto& [m, theta] : small) {
        if (norm1 <= theta) {
            degree = m;
            break;
        }
    }
    if (degree == 13 && norm1 > theta13) {
        squarings = std::max(0, static_cast<int>(std::ceil(std::log2(norm1 / theta13))));
        scaled /= std::ldexp(1.0, squarings);
    }

    DenseOperator u, v;
    pade_terms(scaled, degree, u, v);
    DenseOperator result = (v - u).partialPivLu().solve(v + u);
    for (int s = 0; s < squarings; ++s) result = result * result;
    return result;
}

Eigen::MatrixXcd resolvent_apply(const DenseOperator& a, Complex z, const Eigen::MatrixXcd& rhs) {
    if (a.rows() != a.cols() || a.rows() != rhs.rows())
        throw std::invalid_argument("resolvent_apply: dimension mismatch");
    DenseOperator shifted = -a;
    shifted.diagonal().array() += z;
    Eigen::MatrixXcd x = shifted.partialPivLu().solve(rhs);
    double residual = 0.0;
    for (Eigen::Index c = 0; c < rhs.cols(); ++c) {
        const double scale = rhs.col(c).norm();
        if (scale == 0.0) continue;
        const double r = (shifted * x.col(c) - rhs.col(c)).norm() / scale;
        residual = std::isfinite(r) ? std::max(residual, r) : r;
        if (!std::isfinite(residual)) break;
    }
    if (!x.allFinite() || !std::isfinite(residual) || residual > kResolventTolerance)
        throw SingularResolventError(residual);
    return x;
}

StateVector resolvent_apply(const DenseOperator& a, Complex z, const StateVector& v) {
    return resolvent_apply(a, z, Eigen::MatrixXcd(v)).col(0);
}

Eigen::MatrixXcd null_space(const Eigen::MatrixXcd& a, double tol) {
    if (!(tol > 0.0)) throw std::invalid_argument("null_space: tol must be positive");
    const Eigen::Index n = a.cols();
    if (a.rows() == 0) return Eigen::MatrixXcd::Identity(n, n);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const double largest = sigma.size() > 0 ? sigma(0) : 0.0;
    Eigen::Index rank = 0;
    while (rank < sigma.size() && sigma(rank) > tol * largest) ++rank;
    return svd.matrixV().rightCols(n - rank);
}

}  // namespace sykh
