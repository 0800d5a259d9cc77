#pragma once

#include <string>
#include <vector>

#include "qsd/binary.hpp"
#include "qsd/certificates.hpp"
#include "qsd/ensemble.hpp"

namespace qsd {

struct IterationConfig {
    double tol_fix = 1e-11;  // per-outcome relative weight change
    int max_iter = 10000;
    double damping = 0.0;  // applied once two successive failure-rate increases occur
};

/// Certified solver output. converged is declared only when the Lagrange
/// certificate passes on the final measurement; otherwise diagnostic explains
/// what happened. failure_history records the failure rate of every iterate.
struct SolveResult {
    Povm povm;
    WeightVector weights;
    double failure_rate = 1.0;
    int iterations = 0;
    Certificate certificate;
    bool converged = false;
    std::vector<double> failure_history;
    int failure_increases = 0;
    std::string diagnostic;
};

/// Fixed-point iteration of the optimal-weight map
/// W_k -> p_k^2 <psi_k|M_k(W)|psi_k>, started from the asymptotically optimal
/// quadratic weighting W_k = p_k^2. Outcomes whose weight falls below
/// tol::rank * max(W) are frozen at zero; vanishing outcomes are additionally
/// zeroed early whenever the zeroed measurement already passes the Lagrange
/// certificate (the plain iteration only approaches such boundary optima
/// algebraically).
SolveResult iterate_optimal(const PureStateEnsemble& e, const IterationConfig& config = {});

/// Closed-form optimal projective measurement for an explicit two-vector
/// realization of the binary parameters.
SolveResult solve_binary_exact(const BinaryEnsembleParams& b);

/// The same construction on an arbitrary two-state ensemble: project onto the
/// positive eigenspace of p_1 |psi_1><psi_1| - p_2 |psi_2><psi_2|. Exact even
/// where the weight iteration cannot resolve the optimal weight ratio.
SolveResult solve_two_state_exact(const PureStateEnsemble& e);

}  // namespace qsd
