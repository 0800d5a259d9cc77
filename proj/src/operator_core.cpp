#include "qsd/operator_core.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qsd {

namespace {

std::string format_value(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

}  // namespace

double hermitian_asymmetry(const ComplexMatrix& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

HermitianOperator::HermitianOperator(ComplexMatrix m) : mat_(std::move(m)) {
    if (mat_.rows() == 0 || mat_.rows() != mat_.cols()) {
        throw std::invalid_argument("HermitianOperator: matrix must be square and non-empty");
    }
    const double asym = hermitian_asymmetry(mat_);
    if (asym > tol::herm) {
        throw std::invalid_argument("HermitianOperator: symmetry violation, max |A - A^dag| = " +
                                    format_value(asym) + " exceeds " + format_value(tol::herm));
    }
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.adjoint();
}

EigenDecomposition eig(const HermitianOperator& h) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eig: eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

HermitianOperator frac_power(const HermitianOperator& h, double exponent) {
    if (exponent != 0.5 && exponent != -0.5) {
        throw std::invalid_argument("frac_power: exponent must be +1/2 or -1/2");
    }
    const EigenDecomposition d = eig(h);
    const Eigen::Index n = h.dim();
    const double min_eval = d.eigenvalues(0);
    if (min_eval < -tol::psd) {
        throw std::domain_error("frac_power: operator is not positive semidefinite, eigenvalue " +
                                format_value(min_eval) + " below " + format_value(-tol::psd));
    }
    const double lambda_max = std::max(d.eigenvalues(n - 1), 0.0);
    const double cutoff = tol::rank * lambda_max;
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const double lambda = d.eigenvalues(i);
        if (lambda <= cutoff) {
            continue;
        }
        out.noalias() += std::pow(lambda, exponent) *
                         (d.eigenvectors.col(i) * d.eigenvectors.col(i).adjoint());
    }
    out = 0.5 * (out + out.adjoint().eval());
    return HermitianOperator(std::move(out));
}

PsdCheck is_psd(const HermitianOperator& h) {
    const EigenDecomposition d = eig(h);
    const double margin = d.eigenvalues(0);
    return {margin >= -tol::psd, margin};
}

ComplexMatrix support_projector(const HermitianOperator& h) {
    const EigenDecomposition d = eig(h);
    const Eigen::Index n = h.dim();
    const double lambda_max = std::max(d.eigenvalues(n - 1), 0.0);
    const double cutoff = tol::rank * lambda_max;
    ComplexMatrix proj = ComplexMatrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (d.eigenvalues(i) > cutoff) {
            proj.noalias() += d.eigenvectors.col(i) * d.eigenvectors.col(i).adjoint();
        }
    }
    return proj;
}

}  // namespace qsd
