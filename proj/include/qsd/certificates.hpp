#pragma once

#include <string>
#include <vector>

#include "qsd/ensemble.hpp"

namespace qsd {

enum class CertificateKind { belavkin, lagrange, weighted_sufficient };

const char* to_string(CertificateKind kind);

/// Outcome of an optimality check. Margins are signed so that zero is the
/// exact condition; pass holds iff worst_margin >= -tolerance.
struct Certificate {
    CertificateKind kind = CertificateKind::lagrange;
    bool pass = false;
    double worst_margin = 0.0;
    double tolerance = 0.0;
    std::vector<double> outcome_margins;
};

/// Necessary-and-sufficient weight condition: with Lambda = S^{1/2} invertible
/// on the ensemble span, v_k = p_k <psi_k|Lambda^{-1}|psi_k> <= 1 with
/// equality on positive-weight outcomes. Weights are first rescaled so the
/// mean of v_k over positive-weight outcomes is 1 (the condition only fixes
/// weights up to a positive constant). Throws std::domain_error when the
/// span precondition fails.
Certificate belavkin_certificate(const PureStateEnsemble& e, const WeightVector& w);

/// Necessary-and-sufficient POVM condition: (L + L^dag)/2 - p_k |psi_k><psi_k|
/// is PSD for every k, where L = sum_k p_k M_k |psi_k><psi_k|.
Certificate lagrange_certificate(const PureStateEnsemble& e, const Povm& m);

/// Sufficient condition for strictly positive weights: q_k =
/// p_k^2 <psi_k|M_k|psi_k> / W_k constant across outcomes for the BWSRM.
/// Throws std::domain_error when any weight vanishes.
Certificate weighted_sufficient_certificate(const PureStateEnsemble& e, const WeightVector& w);

/// Barnum-Knill chain P_opt <= P_PGM <= P_opt (1 + P_succ^opt) <= 2 P_opt and
/// the pairwise-overlap bound P_PGM <= sum_{i != j} p_i |<psi_i, psi_j>|^2.
struct BoundReport {
    double p_fail_opt = 0.0;
    double p_fail_pgm = 0.0;
    double barnum_knill_bound = 0.0;  // P_opt (1 + P_succ^opt)
    double doubled_optimum = 0.0;     // 2 P_opt
    double pairwise_overlap_bound = 0.0;
    double slack_opt_vs_pgm = 0.0;
    double slack_pgm_vs_barnum_knill = 0.0;
    double slack_barnum_knill_vs_double = 0.0;
    double slack_pairwise_overlap = 0.0;
    bool all_hold = false;
};

/// Requires a passing Lagrange certificate for p_fail_opt.
BoundReport check_bounds(const PureStateEnsemble& e, double p_fail_opt,
                         const Certificate& optimality);

}  // namespace qsd
