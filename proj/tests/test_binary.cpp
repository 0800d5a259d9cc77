#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "qsd/binary.hpp"
#include "qsd/solver.hpp"

using namespace qsd;

namespace {

constexpr double kPi = 3.141592653589793238462643;

}  // namespace

TEST_CASE("optimal_binary_failure: orthogonal states and certain priors are free") {
    CHECK(optimal_binary_failure({0.3, kPi / 2}) < 1e-30);
    CHECK(optimal_binary_failure({1.0, 0.4}) == 0.0);
    CHECK(optimal_binary_failure({0.0, 0.4}) == 0.0);
}

TEST_CASE("optimal_binary_failure: certified solver optimum confirms the closed form") {
    const BinaryEnsembleParams b(0.5, kPi / 4);
    const double closed_form = optimal_binary_failure(b);
    CHECK(closed_form == doctest::Approx(0.14644660940672627).epsilon(1e-13));

    const SolveResult solved = iterate_optimal(make_binary_ensemble(b.p(), b.theta()));
    REQUIRE(solved.converged);
    CHECK(closed_form == doctest::Approx(solved.failure_rate).epsilon(1e-10));
}

TEST_CASE("weighted_binary_failure: orthogonal states never fail") {
    CHECK(weighted_binary_failure({0.4, kPi / 2}, 2.0, 3.0) < 1e-30);
}

TEST_CASE("weighted_binary_failure: PGM at the symmetric point is optimal") {
    const BinaryEnsembleParams b(0.5, kPi / 4);
    const double pgm = weighted_binary_failure(b, 0.5, 0.5);
    CHECK(pgm == doctest::Approx(0.14644660940672627).epsilon(1e-13));
    CHECK(pgm == doctest::Approx(optimal_binary_failure(b)).epsilon(1e-13));
}

TEST_CASE("weighted_binary_failure: agrees with the matrix BWSRM computation on a grid") {
    for (int i = 1; i < 10; ++i) {
        for (int j = 0; j < 10; ++j) {
            const double p = static_cast<double>(i) / 10.0;
            const double theta = (kPi / 2) * static_cast<double>(j) / 9.0;
            const PureStateEnsemble e = make_binary_ensemble(p, theta);
            for (double r : {1.0, 2.0, 3.0}) {
                const WeightVector w = power_weights(e, PowerWeighting(r));
                const double closed =
                    weighted_binary_failure({p, theta}, w[0], w[1]);
                const double matrix = 1.0 - gram_success_rate(e, w);
                CHECK(std::abs(closed - matrix) <= 1e-10);
            }
        }
    }
}

TEST_CASE("weighted_binary_failure: invalid weights are rejected") {
    CHECK_THROWS_AS(weighted_binary_failure({0.5, 0.5}, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(weighted_binary_failure({0.5, 0.5}, -1.0, 1.0), std::invalid_argument);
}

TEST_CASE("PGM is never better than the quadratic weighting for two states") {
    RandomSource rng(47);
    for (int trial = 0; trial < 2000; ++trial) {
        const double p = rng.uniform();
        const double theta = (kPi / 2) * rng.uniform();
        const BinaryEnsembleParams b(p, theta);
        const double pgm = weighted_binary_failure(b, p, 1.0 - p);
        const double holevo = weighted_binary_failure(b, p * p, (1.0 - p) * (1.0 - p));
        CHECK(pgm >= holevo - 1e-15);
    }
    // equality cases
    for (double theta : {0.3, 1.1}) {
        for (double p : {0.0, 0.5, 1.0}) {
            const BinaryEnsembleParams b(p, theta);
            const double w1 = p * p;
            const double w2 = (1.0 - p) * (1.0 - p);
            const double pgm = weighted_binary_failure(b, p, 1.0 - p);
            const double holevo = weighted_binary_failure(b, w1, w2);
            CHECK(std::abs(pgm - holevo) < 1e-14);
        }
    }
}

TEST_CASE("no weighting beats the Helstrom optimum") {
    RandomSource rng(53);
    for (int trial = 0; trial < 2000; ++trial) {
        const double p = rng.uniform();
        const double theta = (kPi / 2) * rng.uniform();
        const BinaryEnsembleParams b(p, theta);
        const double w1 = rng.uniform() * 2.0;
        const double w2 = rng.uniform() * 2.0;
        if (w1 + w2 == 0.0) {
            continue;
        }
        CHECK(weighted_binary_failure(b, w1, w2) >= optimal_binary_failure(b) - 1e-15);
    }
}

TEST_CASE("ratio_grid: undefined exactly where the optimum vanishes") {
    const std::vector<double> ps{0.0, 0.25, 0.5, 0.75, 1.0};
    const std::vector<double> thetas{0.0, kPi / 4, kPi / 2};
    const RatioGrid grid = ratio_grid(PowerWeighting(2), ps, thetas);
    for (std::size_t i = 0; i < ps.size(); ++i) {
        for (std::size_t j = 0; j < thetas.size(); ++j) {
            const bool undefined = ps[i] == 0.0 || ps[i] == 1.0;
            CHECK(std::isnan(grid.at(i, j)) == undefined);
            if (!undefined) {
                CHECK(grid.at(i, j) >= 1.0 - 1e-9);
            }
        }
    }
}

TEST_CASE("maximize_power_ratio: quadratic weighting peaks at (sqrt(2)+1)/2") {
    const RatioMaximum best = maximize_power_ratio(PowerWeighting(2));
    CHECK(best.value == doctest::Approx((std::sqrt(2.0) + 1.0) / 2.0).epsilon(1e-6));
    CHECK(std::abs(best.p - std::sqrt(2.0) / 2.0) < 1e-2);
    CHECK(best.theta < 1e-2);
}

TEST_CASE("maximize_power_ratio: cubic weighting peaks near the published 1.118") {
    const RatioMaximum best = maximize_power_ratio(PowerWeighting(3));
    CHECK(std::abs(best.value - 1.118) < 1e-3);
}

TEST_CASE("PGM ratio approaches 2 as the prior vanishes at fixed overlap") {
    const double theta = kPi / 4;
    double previous = 0.0;
    for (double p : {1e-2, 1e-4, 1e-6, 1e-8}) {
        const BinaryEnsembleParams b(p, theta);
        const double ratio =
            weighted_binary_failure(b, p, 1.0 - p) / optimal_binary_failure(b);
        CHECK(ratio > previous);
        previous = ratio;
    }
    CHECK(previous > 1.999);
}

TEST_CASE("asymptotic_ratio_limit: quadratic weighting is the unique fixed ratio") {
    CHECK(asymptotic_ratio_limit(0.3, 1.0, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(asymptotic_ratio_limit(0.8, 7.0, 7.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(asymptotic_ratio_limit(0.5, 4.0, 1.0) == doctest::Approx(10.0 / 9.0).epsilon(1e-15));

    RandomSource rng(59);
    for (int trial = 0; trial < 50; ++trial) {
        const double p1 = 0.05 + 0.9 * rng.uniform();
        const double c1 = 0.2 + 3.0 * rng.uniform();
        const double c2 = 0.2 + 3.0 * rng.uniform();
        const double limit = asymptotic_ratio_limit(p1, c1, c2);
        if (c1 != c2) {
            CHECK(limit > 1.0);
        }
        CHECK(asymptotic_ratio_limit(p1, 5.0 * c1, 5.0 * c2) ==
              doctest::Approx(limit).epsilon(1e-12));
    }
}

TEST_CASE("asymptotic_ratio_limit: matches the empirical ratio as theta approaches pi/2") {
    // oracle: evaluate the closed-form ratio on a schedule of angles and watch
    // it settle onto the analytic limit
    const double p1 = 0.5;
    const double c1 = 4.0;
    const double c2 = 1.0;
    const double limit = asymptotic_ratio_limit(p1, c1, c2);
    double previous_error = 1.0;
    for (int k = 3; k <= 6; ++k) {
        const double theta = kPi / 2 - std::pow(10.0, -k);
        const BinaryEnsembleParams b(p1, theta);
        const double ratio = weighted_binary_failure(b, c1 * p1 * p1, c2 * (1 - p1) * (1 - p1)) /
                             optimal_binary_failure(b);
        const double error = std::abs(ratio - limit);
        CHECK(error < previous_error);
        previous_error = error;
    }
    CHECK(previous_error < 1e-8);
}

TEST_CASE("asymptotic_ratio_limit: domain validation") {
    CHECK_THROWS_AS(asymptotic_ratio_limit(0.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(asymptotic_ratio_limit(0.5, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("holevo_cost: zero at a perfect orthonormal match and nonnegative always") {
    std::vector<ComplexVector> states(2, ComplexVector::Zero(2));
    states[0](0) = 1.0;
    states[1](1) = 1.0;
    const PureStateEnsemble e(2, states, {0.6, 0.4});
    const WeightVector w({0.6, 0.4});
    CHECK(holevo_cost(e, states, w) == 0.0);

    RandomSource rng(61);
    const ComplexMatrix u = test::random_unitary(rng, 2);
    std::vector<ComplexVector> rotated{u.col(0), u.col(1)};
    CHECK(holevo_cost(e, rotated, w) >= 0.0);
}

TEST_CASE("holevo_cost: non-orthonormal sets are rejected") {
    const PureStateEnsemble e = make_binary_ensemble(0.5, 0.3);
    CHECK_THROWS_WITH_AS(holevo_cost(e, e.states(), WeightVector({0.5, 0.5})),
                         doctest::Contains("orthonormal"), std::invalid_argument);
}

TEST_CASE("holevo_cost: quadratic-weight measurement vectors beat random competitors") {
    RandomSource rng(67);
    const PureStateEnsemble e = test::random_ensemble(rng, 3, 3);
    const WeightVector priors(e.priors());
    const auto vectors =
        test::polar_orthonormalize(bwsrm_vectors(e, power_weights(e, PowerWeighting(2))));
    const double candidate_cost = holevo_cost(e, vectors, priors);
    for (int competitor = 0; competitor < 100; ++competitor) {
        ComplexMatrix basis(3, 3);
        for (std::size_t k = 0; k < 3; ++k) {
            basis.col(static_cast<Eigen::Index>(k)) = vectors[k];
        }
        basis += (0.02 + 0.4 * rng.uniform()) * test::random_complex_matrix(rng, 3, 3);
        const Eigen::HouseholderQR<ComplexMatrix> qr(basis);
        ComplexMatrix q = qr.householderQ();
        const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
        std::vector<ComplexVector> set;
        for (Eigen::Index k = 0; k < 3; ++k) {
            const Complex d = r(k, k);
            set.push_back(q.col(k) * (d / std::abs(d)));
        }
        CHECK(holevo_cost(e, set, priors) >= candidate_cost - 1e-12);
    }
}

TEST_CASE("make_binary_ensemble: overlap parametrization is exact") {
    for (double theta : {0.0, 0.4, 1.0, kPi / 2}) {
        const PureStateEnsemble e = make_binary_ensemble(0.3, theta);
        CHECK(std::abs(std::abs(e.state(0).dot(e.state(1))) - std::abs(std::cos(theta))) < 1e-15);
    }
}
