#pragma once

#include <string>
#include <vector>

#include "qsd/bwsrm.hpp"
#include "qsd/ensemble.hpp"

namespace qsd {

/// Two-state ensemble parameters: prior p of state 1 and the overlap angle,
/// cos(theta) = |<psi_1, psi_2>|, theta in [0, pi/2].
class BinaryEnsembleParams {
public:
    BinaryEnsembleParams(double p, double theta);

    double p() const { return p_; }
    double theta() const { return theta_; }

private:
    double p_;
    double theta_;
};

/// Helstrom minimum failure rate, 1/2 - sqrt(1/4 - p(1-p)cos^2(theta)),
/// evaluated in the cancellation-free form.
double optimal_binary_failure(const BinaryEnsembleParams& b);

/// Failure rate of the weighted measurement,
/// (p w2 + (1-p) w1) cos^2(theta) / (w1 + w2 + 2 sqrt(w1 w2) |sin(theta)|).
double weighted_binary_failure(const BinaryEnsembleParams& b, double w1, double w2);

/// Explicit real two-vector realization (cos a, +/- sin a) with a = theta / 2,
/// so the overlap is exactly cos(theta). Phases are irrelevant here since only
/// |<psi_1, psi_2>| enters the failure rates.
PureStateEnsemble make_binary_ensemble(double p, double theta);

/// P_fail / P_fail^opt sampled over (p, theta). Cells where the optimal
/// failure rate vanishes are NaN (undefined), never 0/0.
struct RatioGrid {
    std::vector<double> p_axis;
    std::vector<double> theta_axis;
    std::vector<double> ratios;  // row-major, p index outer
    std::string method;

    double at(std::size_t i, std::size_t j) const { return ratios[i * theta_axis.size() + j]; }
};

RatioGrid ratio_grid(PowerWeighting method, const std::vector<double>& p_samples,
                     const std::vector<double>& theta_samples);

struct RatioMaximum {
    double value = 0.0;
    double p = 0.0;
    double theta = 0.0;
};

/// Dense grid scan followed by pattern-search refinement down to 1e-10 steps.
RatioMaximum maximize_power_ratio(PowerWeighting method, std::size_t grid = 512);

/// theta -> pi/2 limit of P_fail^weighted / P_fail^opt for W_k = c_k p_k^2:
/// (c1 p1 + c2 p2) / (sqrt(c1) p1 + sqrt(c2) p2)^2. Equals 1 iff c1 = c2.
double asymptotic_ratio_limit(double p1, double c1, double c2);

/// Weighted squared-distance cost sum_k W_k ||psi_k - e_k||^2 over an
/// orthonormal set (orthonormal within 1e-10, else rejected).
double holevo_cost(const PureStateEnsemble& e, const std::vector<ComplexVector>& orthonormal_set,
                   const WeightVector& w);

}  // namespace qsd
