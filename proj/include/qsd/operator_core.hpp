#pragma once

#include <complex>

#include <Eigen/Dense>

namespace qsd {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Numerical tolerances shared across the library. Dimensions stay small
// (states and outcome counts around twenty at most), so double-precision
// eigensolvers sit comfortably inside these.
namespace tol {
inline constexpr double herm = 1e-10;  // max absolute asymmetry
inline constexpr double psd = 1e-9;    // eigenvalue floor for PSD tests
inline constexpr double recon = 1e-9;  // reconstruction / completeness
inline constexpr double rank = 1e-10;  // relative support cutoff
inline constexpr double cert = 1e-8;   // certificate tolerance
}  // namespace tol

double hermitian_asymmetry(const ComplexMatrix& m);

/// Square complex matrix validated Hermitian at construction.
class HermitianOperator {
public:
    explicit HermitianOperator(ComplexMatrix m);

    const ComplexMatrix& matrix() const { return mat_; }
    Eigen::Index dim() const { return mat_.rows(); }

private:
    ComplexMatrix mat_;
};

struct EigenDecomposition {
    RealVector eigenvalues;      // ascending
    ComplexMatrix eigenvectors;  // orthonormal columns, aligned with eigenvalues

    ComplexMatrix reconstruct() const;
};

struct PsdCheck {
    bool psd = false;
    double margin = 0.0;  // smallest eigenvalue
};

EigenDecomposition eig(const HermitianOperator& h);

/// Spectral power on the support of a PSD operator; exponent is +1/2 or -1/2.
/// Eigenvalues at or below the relative cutoff tol::rank * lambda_max are
/// treated as exact zeros and omitted.
HermitianOperator frac_power(const HermitianOperator& h, double exponent);

PsdCheck is_psd(const HermitianOperator& h);

/// Orthogonal projector onto the support of a PSD operator.
ComplexMatrix support_projector(const HermitianOperator& h);

}  // namespace qsd
