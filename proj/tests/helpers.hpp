#pragma once

#include <vector>

#include "qsd/ensemble.hpp"
#include "qsd/rng.hpp"

namespace qsd::test {

inline ComplexMatrix random_complex_matrix(RandomSource& rng, Eigen::Index rows,
                                           Eigen::Index cols) {
    ComplexMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (Eigen::Index j = 0; j < cols; ++j) {
            m(i, j) = Complex(rng.gaussian(), rng.gaussian());
        }
    }
    return m;
}

/// Random PSD matrix of the given rank, built as B B^dag.
inline ComplexMatrix random_psd(RandomSource& rng, Eigen::Index n, Eigen::Index rank) {
    const ComplexMatrix b = random_complex_matrix(rng, n, rank);
    ComplexMatrix out = b * b.adjoint();
    return 0.5 * (out + out.adjoint().eval());
}

/// Haar-random unitary via QR of a Gaussian matrix with phase fixing.
inline ComplexMatrix random_unitary(RandomSource& rng, Eigen::Index n) {
    const ComplexMatrix g = random_complex_matrix(rng, n, n);
    Eigen::HouseholderQR<ComplexMatrix> qr(g);
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        q.col(i) *= d / std::abs(d);
    }
    return q;
}

inline std::vector<double> random_priors(RandomSource& rng, std::size_t m) {
    std::vector<double> p(m);
    double sum = 0.0;
    for (std::size_t k = 0; k < m; ++k) {
        p[k] = -std::log(rng.uniform());
        sum += p[k];
    }
    for (std::size_t k = 0; k < m; ++k) {
        p[k] /= sum;
    }
    // exact renormalization so the sum invariant holds bit-for-bit
    double drift = 0.0;
    for (std::size_t k = 0; k + 1 < m; ++k) {
        drift += p[k];
    }
    p[m - 1] = 1.0 - drift;
    return p;
}

inline PureStateEnsemble random_ensemble(RandomSource& rng, Eigen::Index dim, std::size_t m) {
    return haar_random_ensemble(dim, m, random_priors(rng, m), rng);
}

inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

/// Snap a nearly orthonormal set onto its polar factor, removing the
/// eigensolver drift the strict orthonormality preconditions would reject.
inline std::vector<ComplexVector> polar_orthonormalize(const std::vector<ComplexVector>& set) {
    const Eigen::Index m = static_cast<Eigen::Index>(set.size());
    ComplexMatrix v(set.front().size(), m);
    for (Eigen::Index k = 0; k < m; ++k) {
        v.col(k) = set[static_cast<std::size_t>(k)];
    }
    ComplexMatrix gram = v.adjoint() * v;
    gram = 0.5 * (gram + gram.adjoint().eval());
    const ComplexMatrix correction = frac_power(HermitianOperator(gram), -0.5).matrix();
    const ComplexMatrix fixed = v * correction;
    std::vector<ComplexVector> out;
    for (Eigen::Index k = 0; k < m; ++k) {
        out.push_back(fixed.col(k));
    }
    return out;
}

}  // namespace qsd::test
