#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qsd/binary.hpp"
#include "qsd/report.hpp"
#include "qsd/solver.hpp"

namespace qsd {

enum class Command {
    discriminate,
    counterexample,
    figure_data,
    asymptotic_sweep,
    random_experiment,
    verify
};
enum class Method { opt, pgm, holevo, cubic, custom, all };
enum class OutputFormat { json, csv };

Method parse_method(const std::string& name);
OutputFormat parse_format(const std::string& name);

/// One invocation of the tool: a single command plus its options.
struct RunConfig {
    Command command = Command::discriminate;
    std::string input_path;
    Method method = Method::all;
    std::vector<double> weights;
    OutputFormat format = OutputFormat::json;
    std::uint64_t seed = 1;
    int resolution = 129;
    int trials = 200;
    std::string out_path;  // empty writes to stdout
    std::string figure = "fig2a";
    Eigen::Index dim = 2;
    std::size_t num_states = 3;
    std::vector<double> priors;
    double p1 = 0.5;
};

struct RunOutcome {
    int exit_code = 0;  // 0 success, 1 validation error, 2 failed to certify
    std::string output;
    std::string error;
};

/// Execute a command and render its report; never throws.
RunOutcome run_command(const RunConfig& config);

/// Three-state ensemble in dimension 2 whose optimal measurement never
/// detects the a priori most probable state and where the quadratic weighting
/// loses to the PGM: psi_1 = (cos t, sin t), psi_2 = (cos t, -sin t),
/// psi_3 = (1, 0) with t = pi/6, p_1 = p_2 = 1 / (2 + (cos t + sin t) cos t).
PureStateEnsemble counterexample_ensemble();

/// The optimal measurement for it: projectors onto (1, 1)/sqrt(2) and
/// (1, -1)/sqrt(2), with a vanishing third outcome.
Povm counterexample_optimal_povm();

/// Failure rates for the requested methods plus certificates and bound
/// slacks when the certified optimum is part of the request.
DiscriminationReport discriminate(const PureStateEnsemble& e, Method method,
                                  const std::vector<double>& custom_weights = {});

struct CounterexampleReport {
    PureStateEnsemble ensemble;
    DiscriminationReport report;
    double suppressed_detection = 0.0;  // p_3 <psi_3|M_3|psi_3>
    std::size_t most_probable_index = 0;
    bool most_probable_never_detected = false;
    bool prior_gap_holds = false;  // p_3 > p_1
};

CounterexampleReport run_counterexample();

struct FigureData {
    std::string figure;               // fig1 | fig2a | fig2b
    std::vector<RatioGrid> grids;     // fig1: pgm and holevo; otherwise one grid
};

FigureData figure_data(const std::string& figure, int resolution);

struct SweepRow {
    double theta = 0.0;
    double ratio = 0.0;
    double limit = 0.0;
    double abs_error = 0.0;
};

struct SweepTable {
    double p1 = 0.5;
    double c1 = 1.0;
    double c2 = 1.0;
    std::vector<SweepRow> rows;
};

/// Ratio of the c-weighted failure rate to the optimum on binary ensembles
/// as theta approaches pi/2, against the analytic limit.
SweepTable asymptotic_sweep(double p1, double c1, double c2);

struct TrialResult {
    double pgm = 0.0;
    double holevo = 0.0;
    double cubic = 0.0;
    double opt = 0.0;
    bool certified = false;
};

struct ExperimentSummary {
    Eigen::Index dim = 0;
    std::size_t num_states = 0;
    std::vector<double> priors;
    std::uint64_t seed = 0;
    std::vector<TrialResult> per_trial;
    double mean_pgm = 0.0;
    double mean_holevo = 0.0;
    double mean_cubic = 0.0;
    double mean_opt = 0.0;
    double fraction_holevo_at_most_pgm = 0.0;
    double fraction_holevo_strictly_better = 0.0;
    int uncertified_trials = 0;
};

/// Haar-random comparison of the power weightings against the certified
/// optimum; deterministic for a given seed.
ExperimentSummary random_experiment(Eigen::Index dim, std::size_t m, std::vector<double> priors,
                                    int trials, std::uint64_t seed);

struct VerifyReport {
    std::string ensemble_hash;
    Certificate belavkin;
    Certificate lagrange;
    std::optional<Certificate> weighted_sufficient;
    std::string weighted_sufficient_note;
    bool certified = false;  // belavkin and lagrange both pass
};

/// Certificate suite for a given ensemble and weight vector.
VerifyReport verify_weights(const PureStateEnsemble& e, const WeightVector& w);

std::string render_json(const CounterexampleReport& r);
std::string render_csv(const CounterexampleReport& r);
std::string render_csv(const FigureData& f);
std::string render_json(const SweepTable& t);
std::string render_csv(const SweepTable& t);
std::string render_json(const ExperimentSummary& s);
std::string render_csv(const ExperimentSummary& s);
std::string render_json(const VerifyReport& v);
std::string render_csv(const VerifyReport& v);

}  // namespace qsd
