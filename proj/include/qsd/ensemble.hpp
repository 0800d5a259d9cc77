#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsd/operator_core.hpp"
#include "qsd/rng.hpp"

namespace qsd {

/// Pure quantum states with prior probabilities. States whose norm drifts
/// from 1 by less than 1e-6 (JSON round-off) are renormalized; anything
/// worse is rejected.
class PureStateEnsemble {
public:
    PureStateEnsemble(Eigen::Index dim, std::vector<ComplexVector> states,
                      std::vector<double> priors);

    Eigen::Index dim() const { return dim_; }
    std::size_t size() const { return states_.size(); }
    const ComplexVector& state(std::size_t k) const { return states_[k]; }
    double prior(std::size_t k) const { return priors_[k]; }
    const std::vector<ComplexVector>& states() const { return states_; }
    const std::vector<double>& priors() const { return priors_; }

    /// dim x m matrix with state k in column k.
    ComplexMatrix state_matrix() const;

private:
    Eigen::Index dim_;
    std::vector<ComplexVector> states_;
    std::vector<double> priors_;
};

/// Nonnegative measurement weights, at least one strictly positive.
class WeightVector {
public:
    explicit WeightVector(std::vector<double> weights);

    std::size_t size() const { return weights_.size(); }
    double operator[](std::size_t k) const { return weights_[k]; }
    const std::vector<double>& values() const { return weights_; }
    double max() const;

private:
    std::vector<double> weights_;
};

/// Positive semidefinite operators summing to the projector onto a declared
/// subspace (the span of the weighted states, not the full space).
class Povm {
public:
    Povm(std::vector<ComplexMatrix> elements, ComplexMatrix support);

    std::size_t size() const { return elements_.size(); }
    Eigen::Index dim() const { return support_.rows(); }
    const ComplexMatrix& element(std::size_t k) const { return elements_[k]; }
    const std::vector<ComplexMatrix>& elements() const { return elements_; }
    const ComplexMatrix& support() const { return support_; }

private:
    std::vector<ComplexMatrix> elements_;
    ComplexMatrix support_;
};

/// sum_k p_k <psi_k|M_k|psi_k>.
double success_rate(const PureStateEnsemble& e, const Povm& m);

/// m x m operator with entries sqrt(W_i W_j) <psi_i, psi_j>.
HermitianOperator weighted_gram(const PureStateEnsemble& e, const WeightVector& w);

/// States drawn independently from the Haar measure on the unit sphere
/// (normalized complex Gaussian vectors). Deterministic for a given seed.
PureStateEnsemble haar_random_ensemble(Eigen::Index dim, std::size_t m,
                                       std::vector<double> priors, std::uint64_t seed);
PureStateEnsemble haar_random_ensemble(Eigen::Index dim, std::size_t m,
                                       std::vector<double> priors, RandomSource& rng);

/// FNV-1a hash of the exact binary content (dim, states, priors).
std::string ensemble_hash(const PureStateEnsemble& e);

}  // namespace qsd
