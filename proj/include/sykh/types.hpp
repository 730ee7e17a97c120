#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace sykh {

using Complex = std::complex<double>;

// Dense operators are plain complex matrices; hermiticity is checked, never assumed.
using DenseOperator = Eigen::MatrixXcd;
using StateVector = Eigen::VectorXcd;

// Exception hierarchy. Argument validation throws std::invalid_argument;
// numerical failures throw one of the types below.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SingularResolventError : public NumericalError {
public:
    SingularResolventError(double residual)
        : NumericalError("resolvent solve residual too large: " + std::to_string(residual)),
          residual_(residual) {}
    double residual() const { return residual_; }

private:
    double residual_;
};

class InconsistentPairingError : public NumericalError {
public:
    InconsistentPairingError(long kernel_dim)
        : NumericalError("EPR annihilation conditions leave a kernel of dimension " +
                         std::to_string(kernel_dim) + " (expected 1)"),
          kernel_dim_(kernel_dim) {}
    long kernel_dim() const { return kernel_dim_; }

private:
    long kernel_dim_;
};

// Raised when a boundary state fails its eigenstate check; signals a
// Jordan-Wigner sign or labeling inconsistency.
class ConventionMismatchError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class DegenerateNormalizationError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

class InsufficientWindowError : public NumericalError {
public:
    InsufficientWindowError(double estimate)
        : NumericalError("Fourier window truncation estimate " + std::to_string(estimate) +
                         " exceeds tolerance"),
          estimate_(estimate) {}
    double estimate() const { return estimate_; }

private:
    double estimate_;
};

class KernelPoleError : public NumericalError {
public:
    KernelPoleError(double h)
        : NumericalError("ladder kernel has a pole at h = " + std::to_string(h)), h_(h) {}
    double h() const { return h_; }

private:
    double h_;
};

class NoGrowthExponentError : public NumericalError {
public:
    using NumericalError::NumericalError;
};

}  // namespace sykh
