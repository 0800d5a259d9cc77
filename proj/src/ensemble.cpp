#include "qsd/ensemble.hpp"

#include <cmath>
#include <cstring>
#include <sstream>
#include <stdexcept>

namespace qsd {

namespace {

std::string index_label(const char* name, std::size_t k) {
    std::ostringstream os;
    os << name << "[" << k << "]";
    return os.str();
}

}  // namespace

PureStateEnsemble::PureStateEnsemble(Eigen::Index dim, std::vector<ComplexVector> states,
                                     std::vector<double> priors)
    : dim_(dim), states_(std::move(states)), priors_(std::move(priors)) {
    if (dim_ < 1) {
        throw std::invalid_argument("dim: must be at least 1");
    }
    if (states_.empty()) {
        throw std::invalid_argument("states: at least one state required");
    }
    if (states_.size() != priors_.size()) {
        throw std::invalid_argument("priors: length does not match number of states");
    }
    for (std::size_t k = 0; k < states_.size(); ++k) {
        if (states_[k].size() != dim_) {
            throw std::invalid_argument(index_label("states", k) + ": expected " +
                                        std::to_string(dim_) + " amplitudes");
        }
        const double norm = states_[k].norm();
        if (std::abs(norm - 1.0) > 1e-6) {
            throw std::invalid_argument(index_label("states", k) + ": norm " +
                                        std::to_string(norm) + " deviates from 1 by more than 1e-6");
        }
        states_[k] /= norm;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < priors_.size(); ++k) {
        if (priors_[k] < 0.0) {
            throw std::invalid_argument(index_label("priors", k) + ": negative probability");
        }
        sum += priors_[k];
    }
    if (std::abs(sum - 1.0) > 1e-12) {
        throw std::invalid_argument("priors: sum " + std::to_string(sum) +
                                    " deviates from 1 by more than 1e-12");
    }
}

ComplexMatrix PureStateEnsemble::state_matrix() const {
    ComplexMatrix out(dim_, static_cast<Eigen::Index>(states_.size()));
    for (std::size_t k = 0; k < states_.size(); ++k) {
        out.col(static_cast<Eigen::Index>(k)) = states_[k];
    }
    return out;
}

WeightVector::WeightVector(std::vector<double> weights) : weights_(std::move(weights)) {
    if (weights_.empty()) {
        throw std::invalid_argument("weights: at least one weight required");
    }
    bool any_positive = false;
    for (std::size_t k = 0; k < weights_.size(); ++k) {
        if (!(weights_[k] >= 0.0)) {
            throw std::invalid_argument(index_label("weights", k) + ": must be nonnegative");
        }
        any_positive = any_positive || weights_[k] > 0.0;
    }
    if (!any_positive) {
        throw std::invalid_argument("weights: all-zero weights are not a measurement");
    }
}

double WeightVector::max() const {
    double m = 0.0;
    for (double w : weights_) {
        m = std::max(m, w);
    }
    return m;
}

Povm::Povm(std::vector<ComplexMatrix> elements, ComplexMatrix support)
    : elements_(std::move(elements)), support_(std::move(support)) {
    if (elements_.empty()) {
        throw std::invalid_argument("Povm: at least one element required");
    }
    if (support_.rows() == 0 || support_.rows() != support_.cols()) {
        throw std::invalid_argument("Povm: support must be a square matrix");
    }
    const Eigen::Index d = support_.rows();
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t k = 0; k < elements_.size(); ++k) {
        if (elements_[k].rows() != d || elements_[k].cols() != d) {
            throw std::invalid_argument(index_label("Povm elements", k) + ": dimension mismatch");
        }
        const PsdCheck check = is_psd(HermitianOperator(elements_[k]));
        if (!check.psd) {
            throw std::invalid_argument(index_label("Povm elements", k) +
                                        ": not positive semidefinite, eigenvalue " +
                                        std::to_string(check.margin));
        }
        sum += elements_[k];
    }
    const HermitianOperator support_op(support_);
    if ((support_ * support_ - support_).cwiseAbs().maxCoeff() > tol::recon) {
        throw std::invalid_argument("Povm: support is not a projector");
    }
    const double completeness = (sum - support_).cwiseAbs().maxCoeff();
    if (completeness > tol::recon) {
        throw std::invalid_argument("Povm: elements sum deviates from the support projector by " +
                                    std::to_string(completeness));
    }
}

double success_rate(const PureStateEnsemble& e, const Povm& m) {
    if (e.dim() != m.dim()) {
        throw std::invalid_argument("success_rate: ensemble and POVM dimensions differ");
    }
    if (e.size() != m.size()) {
        throw std::invalid_argument("success_rate: outcome count does not match state count");
    }
    double s = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        s += e.prior(k) * std::real(e.state(k).dot(m.element(k) * e.state(k)));
    }
    return std::min(std::max(s, 0.0), 1.0);
}

HermitianOperator weighted_gram(const PureStateEnsemble& e, const WeightVector& w) {
    if (e.size() != w.size()) {
        throw std::invalid_argument("weighted_gram: weight count does not match state count");
    }
    const Eigen::Index m = static_cast<Eigen::Index>(e.size());
    ComplexMatrix gram(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
        gram(i, i) = w[static_cast<std::size_t>(i)];
        for (Eigen::Index j = i + 1; j < m; ++j) {
            const Complex overlap = e.state(static_cast<std::size_t>(i))
                                        .dot(e.state(static_cast<std::size_t>(j)));
            const double scale = std::sqrt(w[static_cast<std::size_t>(i)] *
                                           w[static_cast<std::size_t>(j)]);
            gram(i, j) = scale * overlap;
            gram(j, i) = std::conj(gram(i, j));
        }
    }
    return HermitianOperator(std::move(gram));
}

PureStateEnsemble haar_random_ensemble(Eigen::Index dim, std::size_t m,
                                       std::vector<double> priors, RandomSource& rng) {
    if (dim < 1 || m < 1) {
        throw std::invalid_argument("haar_random_ensemble: dim and m must be at least 1");
    }
    std::vector<ComplexVector> states;
    states.reserve(m);
    for (std::size_t k = 0; k < m; ++k) {
        ComplexVector v(dim);
        for (Eigen::Index i = 0; i < dim; ++i) {
            v(i) = Complex(rng.gaussian(), rng.gaussian());
        }
        v /= v.norm();
        states.push_back(std::move(v));
    }
    return PureStateEnsemble(dim, std::move(states), std::move(priors));
}

PureStateEnsemble haar_random_ensemble(Eigen::Index dim, std::size_t m,
                                       std::vector<double> priors, std::uint64_t seed) {
    RandomSource rng(seed);
    return haar_random_ensemble(dim, m, std::move(priors), rng);
}

std::string ensemble_hash(const PureStateEnsemble& e) {
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](const void* data, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(data);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 1099511628211ull;
        }
    };
    const std::uint64_t dim = static_cast<std::uint64_t>(e.dim());
    const std::uint64_t m = e.size();
    mix(&dim, sizeof dim);
    mix(&m, sizeof m);
    for (std::size_t k = 0; k < e.size(); ++k) {
        for (Eigen::Index i = 0; i < e.dim(); ++i) {
            const double re = e.state(k)(i).real();
            const double im = e.state(k)(i).imag();
            mix(&re, sizeof re);
            mix(&im, sizeof im);
        }
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double p = e.prior(k);
        mix(&p, sizeof p);
    }
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << h;
    return os.str();
}

}  // namespace qsd
