#include "qsd/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qsd {

namespace {

struct RawBwsrm {
    ComplexMatrix inv_sqrt;           // S^{-1/2} on the support
    ComplexMatrix support;            // projector onto span of weighted states
    std::vector<ComplexMatrix> elements;
};

// BWSRM elements without Povm validation; the iteration calls this thousands
// of times and validates only the final measurement.
RawBwsrm raw_bwsrm(const PureStateEnsemble& e, const std::vector<double>& w) {
    ComplexMatrix s = ComplexMatrix::Zero(e.dim(), e.dim());
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] > 0.0) {
            s.noalias() += w[k] * (e.state(k) * e.state(k).adjoint());
        }
    }
    const HermitianOperator s_op(0.5 * (s + s.adjoint().eval()));
    RawBwsrm out;
    out.inv_sqrt = frac_power(s_op, -0.5).matrix();
    out.support = support_projector(s_op);
    out.elements.reserve(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] > 0.0) {
            const ComplexVector a = out.inv_sqrt * e.state(k);
            out.elements.push_back(w[k] * (a * a.adjoint()));
        } else {
            out.elements.push_back(ComplexMatrix::Zero(e.dim(), e.dim()));
        }
    }
    return out;
}

double worst_lagrange_margin(const PureStateEnsemble& e,
                             const std::vector<ComplexMatrix>& elements) {
    ComplexMatrix l = ComplexMatrix::Zero(e.dim(), e.dim());
    for (std::size_t k = 0; k < e.size(); ++k) {
        l.noalias() += e.prior(k) * (elements[k] * (e.state(k) * e.state(k).adjoint()));
    }
    const ComplexMatrix l_sym = 0.5 * (l + l.adjoint().eval());
    double worst = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < e.size(); ++k) {
        ComplexMatrix x = l_sym - e.prior(k) * (e.state(k) * e.state(k).adjoint());
        const PsdCheck check = is_psd(HermitianOperator(0.5 * (x + x.adjoint().eval())));
        worst = std::min(worst, check.margin);
    }
    return worst;
}

// One application of the optimal-weight map; zeros stay zero.
std::vector<double> weight_map(const PureStateEnsemble& e, const std::vector<double>& w,
                               const RawBwsrm& raw, double* failure = nullptr) {
    std::vector<double> next(e.size(), 0.0);
    double succ = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] > 0.0) {
            const double amp = std::real(e.state(k).dot(raw.inv_sqrt * e.state(k)));
            const double detection = w[k] * amp * amp;
            succ += e.prior(k) * detection;
            next[k] = e.prior(k) * e.prior(k) * detection;
        }
    }
    if (failure != nullptr) {
        *failure = 1.0 - std::min(std::max(succ, 0.0), 1.0);
    }
    return next;
}

// Largest elementwise gap between the measurement of w and the measurement
// rebuilt from one more application of the weight map.
double self_consistency_gap(const PureStateEnsemble& e, const std::vector<double>& w) {
    const RawBwsrm raw = raw_bwsrm(e, w);
    std::vector<double> next = weight_map(e, w, raw);
    const RawBwsrm rebuilt = raw_bwsrm(e, next);
    double gap = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        gap = std::max(gap, (rebuilt.elements[k] - raw.elements[k]).cwiseAbs().maxCoeff());
    }
    return gap;
}

// Aitken delta-squared polish of the converged weights; accepted only when it
// improves the fixed-point self-consistency, so it can never make the
// returned measurement worse.
std::vector<double> polish_weights(const PureStateEnsemble& e, std::vector<double> w,
                                   int rounds) {
    for (int round = 0; round < rounds; ++round) {
        const RawBwsrm raw0 = raw_bwsrm(e, w);
        std::vector<double> w1 = weight_map(e, w, raw0);
        const RawBwsrm raw1 = raw_bwsrm(e, w1);
        std::vector<double> w2 = weight_map(e, w1, raw1);
        std::vector<double> accelerated = w2;
        for (std::size_t k = 0; k < w.size(); ++k) {
            const double d1 = w1[k] - w[k];
            const double d2 = w2[k] - w1[k];
            const double denom = d2 - d1;
            if (w[k] > 0.0 && std::abs(denom) > 1e-300) {
                const double candidate = w[k] - d1 * d1 / denom;
                if (candidate > 0.0) {
                    accelerated[k] = candidate;
                }
            }
        }
        w = self_consistency_gap(e, accelerated) < self_consistency_gap(e, w2) ? accelerated
                                                                               : w2;
    }
    return w;
}

}  // namespace

SolveResult iterate_optimal(const PureStateEnsemble& e, const IterationConfig& config) {
    const std::size_t m = e.size();
    std::vector<double> w(m);
    std::vector<bool> frozen(m, false);
    for (std::size_t k = 0; k < m; ++k) {
        w[k] = e.prior(k) * e.prior(k);
        frozen[k] = w[k] == 0.0;
    }

    std::vector<double> history;
    history.reserve(256);
    int increases = 0;
    bool oscillating = false;
    bool stopped = false;
    int iterations = 0;
    double last_delta = std::numeric_limits<double>::infinity();

    for (iterations = 1; iterations <= config.max_iter; ++iterations) {
        const RawBwsrm raw = raw_bwsrm(e, w);
        double failure = 1.0;
        std::vector<double> next = weight_map(e, w, raw, &failure);
        if (!history.empty() && failure > history.back() + 1e-15) {
            ++increases;
            if (history.size() >= 2 && history.back() > history[history.size() - 2] + 1e-15) {
                oscillating = true;
            }
        }
        history.push_back(failure);
        if (oscillating && config.damping > 0.0) {
            for (std::size_t k = 0; k < m; ++k) {
                next[k] = (1.0 - config.damping) * next[k] + config.damping * w[k];
            }
        }

        double next_max = 0.0;
        for (double value : next) {
            next_max = std::max(next_max, value);
        }
        bool newly_frozen = false;
        for (std::size_t k = 0; k < m; ++k) {
            if (frozen[k]) {
                next[k] = 0.0;
            } else if (next[k] < tol::rank * next_max) {
                frozen[k] = true;
                next[k] = 0.0;
                newly_frozen = true;
            }
        }

        double delta = 0.0;
        for (std::size_t k = 0; k < m; ++k) {
            if (!frozen[k] && w[k] > 0.0) {
                delta = std::max(delta, std::abs(next[k] - w[k]) / w[k]);
            }
        }
        last_delta = delta;
        w = std::move(next);

        if (delta < config.tol_fix && !newly_frozen) {
            stopped = true;
            break;
        }

        // Vanishing outcomes approach zero only algebraically when the weight
        // condition is tight there; zero them outright as soon as the zeroed
        // measurement certifies.
        if (iterations >= 50 && iterations % 25 == 0) {
            std::vector<std::size_t> candidates;
            double w_max = 0.0;
            for (double value : w) {
                w_max = std::max(w_max, value);
            }
            for (std::size_t k = 0; k < m; ++k) {
                if (!frozen[k] && w[k] > 0.0 && w[k] <= 3e-2 * w_max) {
                    candidates.push_back(k);
                }
            }
            if (!candidates.empty()) {
                std::vector<double> trial = w;
                for (std::size_t k : candidates) {
                    trial[k] = 0.0;
                }
                const RawBwsrm trial_raw = raw_bwsrm(e, trial);
                if (worst_lagrange_margin(e, trial_raw.elements) >= -tol::psd) {
                    for (std::size_t k : candidates) {
                        frozen[k] = true;
                    }
                    w = std::move(trial);
                }
            }
        }

        // Weights spanning many orders of magnitude leave the smallest
        // components dominated by rounding noise, so the relative-change
        // criterion can stall at an already-exact fixed point. Accept early
        // only at a margin far tighter than the certificate tolerance.
        if (iterations >= 25 && iterations % 25 == 0) {
            const RawBwsrm current = raw_bwsrm(e, w);
            if (worst_lagrange_margin(e, current.elements) >= -1e-12) {
                stopped = true;
                break;
            }
        }
    }
    iterations = std::min(iterations, config.max_iter);

    w = polish_weights(e, std::move(w), 6);

    const RawBwsrm raw = raw_bwsrm(e, w);
    Povm povm(raw.elements, raw.support);
    Certificate certificate = lagrange_certificate(e, povm);
    const double failure = 1.0 - success_rate(e, povm);

    SolveResult result{std::move(povm),
                       WeightVector(w),
                       failure,
                       iterations,
                       certificate,
                       certificate.pass,
                       std::move(history),
                       increases,
                       {}};
    if (!result.converged) {
        std::ostringstream os;
        os << "no certificate after " << iterations << " iterations"
           << " (last weight change " << last_delta << ", certificate margin "
           << certificate.worst_margin << (stopped ? ", weight change converged" : "") << ")";
        result.diagnostic = os.str();
    }
    return result;
}

SolveResult solve_two_state_exact(const PureStateEnsemble& e) {
    if (e.size() != 2) {
        throw std::invalid_argument("solve_two_state_exact: need exactly two states");
    }
    const Eigen::Index dim = e.dim();
    const double p = e.prior(0);
    const double q = e.prior(1);

    ComplexMatrix helstrom = p * (e.state(0) * e.state(0).adjoint()) -
                             q * (e.state(1) * e.state(1).adjoint());
    const EigenDecomposition d =
        eig(HermitianOperator(0.5 * (helstrom + helstrom.adjoint().eval())));

    ComplexMatrix ensemble_span = ComplexMatrix::Zero(dim, dim);
    if (p > 0.0) {
        ensemble_span.noalias() += p * (e.state(0) * e.state(0).adjoint());
    }
    if (q > 0.0) {
        ensemble_span.noalias() += q * (e.state(1) * e.state(1).adjoint());
    }
    const ComplexMatrix support = support_projector(
        HermitianOperator(0.5 * (ensemble_span + ensemble_span.adjoint().eval())));

    const double scale =
        std::max({std::abs(d.eigenvalues(0)), std::abs(d.eigenvalues(dim - 1)), 1.0});
    ComplexMatrix detect_first = ComplexMatrix::Zero(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        if (d.eigenvalues(i) > 1e-14 * scale) {
            detect_first.noalias() += d.eigenvectors.col(i) * d.eigenvectors.col(i).adjoint();
        }
    }
    ComplexMatrix detect_second = support - detect_first;
    detect_second = 0.5 * (detect_second + detect_second.adjoint().eval());

    Povm povm({detect_first, detect_second}, support);
    const double failure = 1.0 - success_rate(e, povm);
    std::vector<double> weights(2);
    for (std::size_t k = 0; k < 2; ++k) {
        weights[k] = e.prior(k) * e.prior(k) *
                     std::real(e.state(k).dot(povm.element(k) * e.state(k)));
    }
    Certificate certificate = lagrange_certificate(e, povm);
    return SolveResult{std::move(povm),
                       WeightVector(std::move(weights)),
                       failure,
                       0,
                       certificate,
                       certificate.pass,
                       {failure},
                       0,
                       {}};
}

SolveResult solve_binary_exact(const BinaryEnsembleParams& b) {
    return solve_two_state_exact(make_binary_ensemble(b.p(), b.theta()));
}

}  // namespace qsd
