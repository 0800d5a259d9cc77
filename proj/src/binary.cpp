#include "qsd/binary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace qsd {

namespace {

constexpr double kPi = 3.141592653589793238462643;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double power_ratio(double p, double theta, double r) {
    const BinaryEnsembleParams b(p, theta);
    const double opt = optimal_binary_failure(b);
    if (opt == 0.0) {
        return kNaN;
    }
    return weighted_binary_failure(b, std::pow(p, r), std::pow(1.0 - p, r)) / opt;
}

}  // namespace

BinaryEnsembleParams::BinaryEnsembleParams(double p, double theta) : p_(p), theta_(theta) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("BinaryEnsembleParams: p must lie in [0, 1]");
    }
    if (!(theta >= 0.0 && theta <= kPi / 2)) {
        throw std::invalid_argument("BinaryEnsembleParams: theta must lie in [0, pi/2]");
    }
}

double optimal_binary_failure(const BinaryEnsembleParams& b) {
    const double c = std::cos(b.theta());
    const double x = b.p() * (1.0 - b.p()) * c * c;
    return x / (0.5 + std::sqrt(std::max(0.25 - x, 0.0)));
}

double weighted_binary_failure(const BinaryEnsembleParams& b, double w1, double w2) {
    if (!(w1 >= 0.0) || !(w2 >= 0.0)) {
        throw std::invalid_argument("weighted_binary_failure: weights must be nonnegative");
    }
    if (w1 == 0.0 && w2 == 0.0) {
        throw std::invalid_argument("weighted_binary_failure: weights must not both vanish");
    }
    const double c = std::cos(b.theta());
    const double numerator = (b.p() * w2 + (1.0 - b.p()) * w1) * c * c;
    const double denominator = w1 + w2 + 2.0 * std::sqrt(w1 * w2) * std::abs(std::sin(b.theta()));
    return numerator / denominator;
}

PureStateEnsemble make_binary_ensemble(double p, double theta) {
    const BinaryEnsembleParams check(p, theta);
    const double a = theta / 2.0;
    std::vector<ComplexVector> states(2, ComplexVector(2));
    states[0] << Complex(std::cos(a), 0.0), Complex(std::sin(a), 0.0);
    states[1] << Complex(std::cos(a), 0.0), Complex(-std::sin(a), 0.0);
    return PureStateEnsemble(2, std::move(states), {p, 1.0 - p});
}

RatioGrid ratio_grid(PowerWeighting method, const std::vector<double>& p_samples,
                     const std::vector<double>& theta_samples) {
    if (p_samples.empty() || theta_samples.empty()) {
        throw std::invalid_argument("ratio_grid: sample axes must be non-empty");
    }
    RatioGrid grid;
    grid.p_axis = p_samples;
    grid.theta_axis = theta_samples;
    std::ostringstream label;
    label << "bwsrm-r" << method.r();
    grid.method = label.str();
    grid.ratios.reserve(p_samples.size() * theta_samples.size());
    for (double p : p_samples) {
        for (double theta : theta_samples) {
            const double value = power_ratio(p, theta, method.r());
            if (!std::isnan(value) && value < 1.0 - 1e-9) {
                throw std::logic_error("ratio_grid: ratio below 1 where the optimum is positive");
            }
            grid.ratios.push_back(value);
        }
    }
    return grid;
}

RatioMaximum maximize_power_ratio(PowerWeighting method, std::size_t grid) {
    if (grid < 2) {
        throw std::invalid_argument("maximize_power_ratio: grid must have at least 2 points");
    }
    const double r = method.r();
    RatioMaximum best;
    best.value = -1.0;
    for (std::size_t i = 0; i < grid; ++i) {
        const double p = static_cast<double>(i) / static_cast<double>(grid - 1);
        for (std::size_t j = 0; j < grid; ++j) {
            const double theta = (kPi / 2) * static_cast<double>(j) / static_cast<double>(grid - 1);
            const double value = power_ratio(p, theta, r);
            if (!std::isnan(value) && value > best.value) {
                best = {value, p, theta};
            }
        }
    }
    // the ratio is symmetric under p <-> 1-p; report the representative
    // with p >= 1/2
    if (best.p < 0.5) {
        const double mirrored = power_ratio(1.0 - best.p, best.theta, r);
        if (!std::isnan(mirrored) && mirrored >= best.value - 1e-12) {
            best = {mirrored, 1.0 - best.p, best.theta};
        }
    }
    double step = 1.0 / static_cast<double>(grid - 1);
    while (step > 1e-10) {
        bool moved = false;
        const double candidates[4][2] = {{step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}};
        for (const auto& delta : candidates) {
            const double p = std::clamp(best.p + delta[0], 0.0, 1.0);
            const double theta = std::clamp(best.theta + delta[1] * (kPi / 2), 0.0, kPi / 2);
            const double value = power_ratio(p, theta, r);
            if (!std::isnan(value) && value > best.value) {
                best = {value, p, theta};
                moved = true;
            }
        }
        if (!moved) {
            step /= 2.0;
        }
    }
    return best;
}

double asymptotic_ratio_limit(double p1, double c1, double c2) {
    if (!(p1 > 0.0 && p1 < 1.0)) {
        throw std::invalid_argument("asymptotic_ratio_limit: p1 must lie strictly inside (0, 1)");
    }
    if (!(c1 > 0.0) || !(c2 > 0.0)) {
        throw std::invalid_argument("asymptotic_ratio_limit: c values must be positive");
    }
    const double p2 = 1.0 - p1;
    const double mean = c1 * p1 + c2 * p2;
    const double root_mean = std::sqrt(c1) * p1 + std::sqrt(c2) * p2;
    return mean / (root_mean * root_mean);
}

double holevo_cost(const PureStateEnsemble& e, const std::vector<ComplexVector>& orthonormal_set,
                   const WeightVector& w) {
    if (orthonormal_set.size() != e.size() || w.size() != e.size()) {
        throw std::invalid_argument("holevo_cost: set and weight sizes must match the ensemble");
    }
    for (std::size_t i = 0; i < orthonormal_set.size(); ++i) {
        if (orthonormal_set[i].size() != e.dim()) {
            throw std::invalid_argument("holevo_cost: orthonormal_set dimension mismatch");
        }
        for (std::size_t j = i; j < orthonormal_set.size(); ++j) {
            const Complex overlap = orthonormal_set[i].dot(orthonormal_set[j]);
            const double target = i == j ? 1.0 : 0.0;
            if (std::abs(overlap - target) > 1e-10) {
                throw std::invalid_argument("holevo_cost: set is not orthonormal within 1e-10");
            }
        }
    }
    double cost = 0.0;
    for (std::size_t k = 0; k < e.size(); ++k) {
        cost += w[k] * (e.state(k) - orthonormal_set[k]).squaredNorm();
    }
    return cost;
}

}  // namespace qsd
