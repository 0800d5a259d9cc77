#pragma once

#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

/// Power-law weighting exponent, W_k = p_k^r. The literature cases are
/// r = 1 (pretty good measurement), r = 2 (Holevo), r = 3 (cubic).
class PowerWeighting {
public:
    explicit PowerWeighting(double r);

    double r() const { return r_; }

private:
    double r_;
};

WeightVector power_weights(const PureStateEnsemble& e, PowerWeighting r);

/// Weighted square-root measurement M_k = S^{-1/2} W_k |psi_k><psi_k| S^{-1/2}
/// with S = sum_l W_l |psi_l><psi_l|, complete on the span of the weighted
/// states. Zero-weight states keep a zero element so outcome indices stay
/// aligned with states.
Povm build_bwsrm(const PureStateEnsemble& e, const WeightVector& w);

Povm build_power_bwsrm(const PureStateEnsemble& e, PowerWeighting r);

/// Measurement vectors a_k = sqrt(W_k) S^{-1/2} psi_k, so M_k = a_k a_k^dag.
/// For linearly independent states and positive weights these are orthonormal.
std::vector<ComplexVector> bwsrm_vectors(const PureStateEnsemble& e, const WeightVector& w);

/// Success rate of the weighted measurement evaluated in the m x m Gram
/// picture: sum_k (p_k / W_k) <k|(A^dag A)^{1/2}|k>^2, zero-weight terms
/// contributing nothing. Agrees with the Hilbert-space construction.
double gram_success_rate(const PureStateEnsemble& e, const WeightVector& w);

}  // namespace qsd
