#include "qsd/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsd/bwsrm.hpp"

namespace qsd {

const char* to_string(CertificateKind kind) {
    switch (kind) {
        case CertificateKind::belavkin:
            return "belavkin";
        case CertificateKind::lagrange:
            return "lagrange";
        case CertificateKind::weighted_sufficient:
            return "weighted-sufficient";
    }
    return "unknown";
}

Certificate belavkin_certificate(const PureStateEnsemble& e, const WeightVector& w) {
    if (e.size() != w.size()) {
        throw std::invalid_argument("belavkin_certificate: weight count does not match states");
    }
    ComplexMatrix s = ComplexMatrix::Zero(e.dim(), e.dim());
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] > 0.0) {
            s.noalias() += w[k] * (e.state(k) * e.state(k).adjoint());
        }
    }
    const HermitianOperator s_op(0.5 * (s + s.adjoint().eval()));
    const ComplexMatrix projector = support_projector(s_op);
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (e.prior(k) == 0.0) {
            continue;
        }
        const double outside = (e.state(k) - projector * e.state(k)).norm();
        if (outside > 1e-8) {
            throw std::domain_error(
                "belavkin_certificate: inapplicable, Lambda is singular on the ensemble span "
                "(state component of norm " + std::to_string(outside) + " outside the support)");
        }
    }
    const ComplexMatrix lambda_inv = frac_power(s_op, -0.5).matrix();

    std::vector<double> v(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        v[k] = e.prior(k) * std::real(e.state(k).dot(lambda_inv * e.state(k)));
    }
    const double positive_cutoff = tol::rank * w.max();
    double mean = 0.0;
    std::size_t positive_count = 0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] > positive_cutoff) {
            mean += v[k];
            ++positive_count;
        }
    }
    mean /= static_cast<double>(positive_count);

    Certificate cert;
    cert.kind = CertificateKind::belavkin;
    cert.tolerance = tol::cert;
    cert.outcome_margins.resize(e.size());
    cert.worst_margin = std::numeric_limits<double>::infinity();
    if (!(mean > 0.0)) {
        cert.worst_margin = -1.0;
        cert.outcome_margins.assign(e.size(), -1.0);
        cert.pass = false;
        return cert;
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double rescaled = v[k] / mean;
        const double margin =
            w[k] > positive_cutoff ? -std::abs(rescaled - 1.0) : 1.0 - rescaled;
        cert.outcome_margins[k] = margin;
        cert.worst_margin = std::min(cert.worst_margin, margin);
    }
    cert.pass = cert.worst_margin >= -cert.tolerance;
    return cert;
}

Certificate lagrange_certificate(const PureStateEnsemble& e, const Povm& m) {
    if (e.dim() != m.dim()) {
        throw std::invalid_argument("lagrange_certificate: dimension mismatch");
    }
    if (e.size() != m.size()) {
        throw std::invalid_argument("lagrange_certificate: outcome count does not match states");
    }
    ComplexMatrix l = ComplexMatrix::Zero(e.dim(), e.dim());
    for (std::size_t k = 0; k < e.size(); ++k) {
        l.noalias() += e.prior(k) * (m.element(k) * (e.state(k) * e.state(k).adjoint()));
    }
    const ComplexMatrix l_sym = 0.5 * (l + l.adjoint().eval());

    Certificate cert;
    cert.kind = CertificateKind::lagrange;
    cert.tolerance = tol::psd;
    cert.outcome_margins.resize(e.size());
    cert.worst_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < e.size(); ++k) {
        ComplexMatrix x = l_sym - e.prior(k) * (e.state(k) * e.state(k).adjoint());
        const PsdCheck check = is_psd(HermitianOperator(0.5 * (x + x.adjoint().eval())));
        cert.outcome_margins[k] = check.margin;
        cert.worst_margin = std::min(cert.worst_margin, check.margin);
    }
    cert.pass = cert.worst_margin >= -cert.tolerance;
    return cert;
}

Certificate weighted_sufficient_certificate(const PureStateEnsemble& e, const WeightVector& w) {
    if (e.size() != w.size()) {
        throw std::invalid_argument("weighted_sufficient_certificate: weight count mismatch");
    }
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (w[k] <= 0.0) {
            throw std::domain_error(
                "weighted_sufficient_certificate: inapplicable, weight " + std::to_string(k) +
                " is zero (the condition requires strictly positive weights)");
        }
    }
    const Povm povm = build_bwsrm(e, w);
    std::vector<double> q(e.size());
    double q_min = std::numeric_limits<double>::infinity();
    double q_max = 0.0;
    double q_mean = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        const double detection = std::real(e.state(k).dot(povm.element(k) * e.state(k)));
        q[k] = e.prior(k) * e.prior(k) * detection / w[k];
        q_min = std::min(q_min, q[k]);
        q_max = std::max(q_max, q[k]);
        q_mean += q[k];
    }
    q_mean /= static_cast<double>(e.size());

    Certificate cert;
    cert.kind = CertificateKind::weighted_sufficient;
    cert.tolerance = tol::cert;
    cert.outcome_margins.resize(e.size());
    for (std::size_t k = 0; k < e.size(); ++k) {
        cert.outcome_margins[k] = q_mean > 0.0 ? q[k] / q_mean - 1.0 : -1.0;
    }
    if (q_min <= q_max * 1e-300) {
        cert.worst_margin = -1e300;
    } else {
        cert.worst_margin = 1.0 - q_max / q_min;
    }
    cert.pass = cert.worst_margin >= -cert.tolerance;
    return cert;
}

BoundReport check_bounds(const PureStateEnsemble& e, double p_fail_opt,
                         const Certificate& optimality) {
    if (!optimality.pass) {
        throw std::invalid_argument("check_bounds: the optimal failure rate is uncertified");
    }
    BoundReport report;
    report.p_fail_opt = p_fail_opt;
    report.p_fail_pgm = 1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(1.0)));
    report.barnum_knill_bound = p_fail_opt * (2.0 - p_fail_opt);
    report.doubled_optimum = 2.0 * p_fail_opt;
    double pairwise = 0.0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (i != j) {
                pairwise += e.prior(i) * std::norm(e.state(i).dot(e.state(j)));
            }
        }
    }
    report.pairwise_overlap_bound = pairwise;
    report.slack_opt_vs_pgm = report.p_fail_pgm - report.p_fail_opt;
    report.slack_pgm_vs_barnum_knill = report.barnum_knill_bound - report.p_fail_pgm;
    report.slack_barnum_knill_vs_double = report.doubled_optimum - report.barnum_knill_bound;
    report.slack_pairwise_overlap = report.pairwise_overlap_bound - report.p_fail_pgm;
    const double worst = std::min({report.slack_opt_vs_pgm, report.slack_pgm_vs_barnum_knill,
                                   report.slack_barnum_knill_vs_double,
                                   report.slack_pairwise_overlap});
    report.all_hold = worst >= -1e-9;
    return report;
}

}  // namespace qsd
