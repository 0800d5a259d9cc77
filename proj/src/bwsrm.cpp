#include "qsd/bwsrm.hpp"

#include <cmath>
#include <stdexcept>

namespace qsd {

namespace {

// Weights below the relative support cutoff are indistinguishable from zero
// in the span of the weighted states; dropping them keeps the element sum and
// the support projector consistent.
std::vector<double> effective_weights(const WeightVector& w) {
    const double cutoff = tol::rank * w.max();
    std::vector<double> out(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        out[k] = w[k] > cutoff ? w[k] : 0.0;
    }
    return out;
}

ComplexMatrix weighted_state_sum(const PureStateEnsemble& e, const std::vector<double>& w) {
    ComplexMatrix s = ComplexMatrix::Zero(e.dim(), e.dim());
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] > 0.0) {
            s.noalias() += w[k] * (e.state(k) * e.state(k).adjoint());
        }
    }
    return 0.5 * (s + s.adjoint().eval());
}

void check_sizes(const PureStateEnsemble& e, const WeightVector& w, const char* op) {
    if (e.size() != w.size()) {
        throw std::invalid_argument(std::string(op) + ": weight count does not match state count");
    }
}

}  // namespace

PowerWeighting::PowerWeighting(double r) : r_(r) {
    if (!(r > 0.0)) {
        throw std::invalid_argument("PowerWeighting: exponent must be positive");
    }
}

WeightVector power_weights(const PureStateEnsemble& e, PowerWeighting r) {
    std::vector<double> w(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        w[k] = std::pow(e.prior(k), r.r());
    }
    return WeightVector(std::move(w));
}

std::vector<ComplexVector> bwsrm_vectors(const PureStateEnsemble& e, const WeightVector& w) {
    check_sizes(e, w, "bwsrm_vectors");
    const std::vector<double> weights = effective_weights(w);
    const HermitianOperator s(weighted_state_sum(e, weights));
    const ComplexMatrix inv_sqrt = frac_power(s, -0.5).matrix();
    std::vector<ComplexVector> vectors;
    vectors.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        vectors.push_back(std::sqrt(weights[k]) * (inv_sqrt * e.state(k)));
    }
    return vectors;
}

Povm build_bwsrm(const PureStateEnsemble& e, const WeightVector& w) {
    check_sizes(e, w, "build_bwsrm");
    const std::vector<double> weights = effective_weights(w);
    const HermitianOperator s(weighted_state_sum(e, weights));
    const ComplexMatrix inv_sqrt = frac_power(s, -0.5).matrix();
    std::vector<ComplexMatrix> elements;
    elements.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (weights[k] > 0.0) {
            const ComplexVector a = inv_sqrt * e.state(k);
            elements.push_back(weights[k] * (a * a.adjoint()));
        } else {
            elements.push_back(ComplexMatrix::Zero(e.dim(), e.dim()));
        }
    }
    return Povm(std::move(elements), support_projector(s));
}

Povm build_power_bwsrm(const PureStateEnsemble& e, PowerWeighting r) {
    return build_bwsrm(e, power_weights(e, r));
}

double gram_success_rate(const PureStateEnsemble& e, const WeightVector& w) {
    check_sizes(e, w, "gram_success_rate");
    const HermitianOperator gram = weighted_gram(e, w);
    const ComplexMatrix root = frac_power(gram, 0.5).matrix();
    double s = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] > 0.0) {
            const double diag = std::real(root(static_cast<Eigen::Index>(k),
                                               static_cast<Eigen::Index>(k)));
            s += (e.prior(k) / w[k]) * diag * diag;
        }
    }
    return std::min(std::max(s, 0.0), 1.0);
}

}  // namespace qsd
