#include "qsd/report.hpp"

#include <sstream>
#include <stdexcept>

#include "render_util.hpp"

namespace qsd {

using detail::csv_num;
using detail::json_bool;
using detail::json_number_array;
using detail::num10;

void DiscriminationReport::add_failure(const std::string& method, double rate) {
    if (!(rate >= 0.0 && rate <= 1.0)) {
        throw std::logic_error("DiscriminationReport: failure rate for " + method +
                               " outside [0, 1]");
    }
    failures.push_back({method, rate});
}

namespace {

std::string certificate_json(const Certificate& c) {
    std::ostringstream os;
    os << "{\"kind\": \"" << to_string(c.kind) << "\", \"pass\": " << json_bool(c.pass)
       << ", \"worst_margin\": " << num10(c.worst_margin)
       << ", \"tolerance\": " << num10(c.tolerance)
       << ", \"outcome_margins\": " << json_number_array(c.outcome_margins) << "}";
    return os.str();
}

std::string bounds_json(const BoundReport& b) {
    std::ostringstream os;
    os << "{\"p_fail_opt\": " << num10(b.p_fail_opt)
       << ", \"p_fail_pgm\": " << num10(b.p_fail_pgm)
       << ", \"barnum_knill_bound\": " << num10(b.barnum_knill_bound)
       << ", \"doubled_optimum\": " << num10(b.doubled_optimum)
       << ", \"pairwise_overlap_bound\": " << num10(b.pairwise_overlap_bound)
       << ", \"slack_opt_vs_pgm\": " << num10(b.slack_opt_vs_pgm)
       << ", \"slack_pgm_vs_barnum_knill\": " << num10(b.slack_pgm_vs_barnum_knill)
       << ", \"slack_barnum_knill_vs_double\": " << num10(b.slack_barnum_knill_vs_double)
       << ", \"slack_pairwise_overlap\": " << num10(b.slack_pairwise_overlap)
       << ", \"all_hold\": " << json_bool(b.all_hold) << "}";
    return os.str();
}

}  // namespace

std::string render_json(const DiscriminationReport& r) {
    std::ostringstream os;
    os << "{\"ensemble\": {\"hash\": \"" << r.ensemble_hash << "\", \"dim\": " << r.dim
       << ", \"states\": " << r.num_states << "}";
    os << ", \"failure_rates\": {";
    for (std::size_t i = 0; i < r.failures.size(); ++i) {
        if (i > 0) {
            os << ", ";
        }
        os << "\"" << r.failures[i].method << "\": " << num10(r.failures[i].failure);
    }
    os << "}";
    if (r.opt_requested) {
        os << ", \"optimal\": {\"converged\": " << json_bool(r.opt_converged)
           << ", \"iterations\": " << r.opt_iterations;
        if (!r.opt_diagnostic.empty()) {
            os << ", \"diagnostic\": \"" << r.opt_diagnostic << "\"";
        }
        os << "}";
    }
    if (r.lagrange || r.belavkin) {
        os << ", \"certificates\": {";
        bool first = true;
        if (r.lagrange) {
            os << "\"lagrange\": " << certificate_json(*r.lagrange);
            first = false;
        }
        if (r.belavkin) {
            if (!first) {
                os << ", ";
            }
            os << "\"belavkin\": " << certificate_json(*r.belavkin);
        }
        os << "}";
    }
    if (r.bounds) {
        os << ", \"bounds\": " << bounds_json(*r.bounds);
    }
    os << ", \"tolerances\": {\"herm\": " << num10(tol::herm) << ", \"psd\": " << num10(tol::psd)
       << ", \"recon\": " << num10(tol::recon) << ", \"rank\": " << num10(tol::rank)
       << ", \"cert\": " << num10(tol::cert) << "}";
    os << "}\n";
    return os.str();
}

std::string render_csv(const DiscriminationReport& r) {
    std::ostringstream os;
    os << "method,failure\n";
    for (const MethodFailure& f : r.failures) {
        os << f.method << "," << csv_num(f.failure) << "\n";
    }
    return os.str();
}

}  // namespace qsd
