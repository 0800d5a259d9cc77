#include "qsd/commands.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "qsd/ensemble_io.hpp"
#include "render_util.hpp"

namespace qsd {

using detail::csv_num;
using detail::json_bool;
using detail::num10;

namespace {

constexpr double kPi = 3.141592653589793238462643;

std::string certificate_json(const Certificate& c) {
    std::ostringstream os;
    os << "{\"kind\": \"" << to_string(c.kind) << "\", \"pass\": " << json_bool(c.pass)
       << ", \"worst_margin\": " << num10(c.worst_margin)
       << ", \"tolerance\": " << num10(c.tolerance)
       << ", \"outcome_margins\": " << detail::json_number_array(c.outcome_margins) << "}";
    return os.str();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] =
            lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return out;
}

}  // namespace

Method parse_method(const std::string& name) {
    if (name == "opt") return Method::opt;
    if (name == "pgm") return Method::pgm;
    if (name == "holevo") return Method::holevo;
    if (name == "cubic") return Method::cubic;
    if (name == "custom") return Method::custom;
    if (name == "all") return Method::all;
    throw std::invalid_argument("method: unknown name '" + name +
                                "' (expected opt|pgm|holevo|cubic|custom|all)");
}

OutputFormat parse_format(const std::string& name) {
    if (name == "json") return OutputFormat::json;
    if (name == "csv") return OutputFormat::csv;
    throw std::invalid_argument("format: unknown name '" + name + "' (expected json|csv)");
}

PureStateEnsemble counterexample_ensemble() {
    const double t = kPi / 6.0;
    const double c = std::cos(t);
    const double s = std::sin(t);
    const double p1 = 1.0 / (2.0 + (c + s) * c);
    std::vector<ComplexVector> states(3, ComplexVector(2));
    states[0] << Complex(c, 0.0), Complex(s, 0.0);
    states[1] << Complex(c, 0.0), Complex(-s, 0.0);
    states[2] << Complex(1.0, 0.0), Complex(0.0, 0.0);
    return PureStateEnsemble(2, std::move(states), {p1, p1, 1.0 - 2.0 * p1});
}

Povm counterexample_optimal_povm() {
    ComplexMatrix m1(2, 2);
    m1 << 0.5, 0.5, 0.5, 0.5;
    ComplexMatrix m2(2, 2);
    m2 << 0.5, -0.5, -0.5, 0.5;
    return Povm({m1, m2, ComplexMatrix::Zero(2, 2)}, ComplexMatrix::Identity(2, 2));
}

DiscriminationReport discriminate(const PureStateEnsemble& e, Method method,
                                  const std::vector<double>& custom_weights) {
    DiscriminationReport report;
    report.ensemble_hash = ensemble_hash(e);
    report.dim = e.dim();
    report.num_states = e.size();

    const bool all = method == Method::all;
    if (all || method == Method::opt) {
        report.opt_requested = true;
        // binary ensembles get the closed-form measurement; the weight
        // iteration cannot resolve optimal weight ratios finer than the
        // support cutoff
        const SolveResult solved = e.size() == 2 ? solve_two_state_exact(e) : iterate_optimal(e);
        report.add_failure("opt", solved.failure_rate);
        report.opt_converged = solved.converged;
        report.opt_iterations = solved.iterations;
        report.opt_diagnostic = solved.diagnostic;
        report.lagrange = solved.certificate;
        if (solved.converged) {
            std::vector<double> optimal_weights(e.size());
            for (std::size_t k = 0; k < e.size(); ++k) {
                optimal_weights[k] = e.prior(k) * e.prior(k) *
                                     std::real(e.state(k).dot(solved.povm.element(k) * e.state(k)));
            }
            report.belavkin = belavkin_certificate(e, WeightVector(optimal_weights));
            report.bounds = check_bounds(e, solved.failure_rate, solved.certificate);
        }
    }
    if (all || method == Method::pgm) {
        report.add_failure("pgm", 1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(1))));
    }
    if (all || method == Method::holevo) {
        report.add_failure("holevo",
                           1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(2))));
    }
    if (all || method == Method::cubic) {
        report.add_failure("cubic",
                           1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(3))));
    }
    if (method == Method::custom || (all && !custom_weights.empty())) {
        if (custom_weights.empty()) {
            throw std::invalid_argument("weights: custom method requires --weights");
        }
        report.add_failure("custom",
                           1.0 - gram_success_rate(e, WeightVector(custom_weights)));
    }
    return report;
}

CounterexampleReport run_counterexample() {
    CounterexampleReport out{counterexample_ensemble(), {}, 0.0, 0, false, false};
    const PureStateEnsemble& e = out.ensemble;
    const Povm povm = counterexample_optimal_povm();

    out.report.ensemble_hash = ensemble_hash(e);
    out.report.dim = e.dim();
    out.report.num_states = e.size();
    out.report.opt_requested = true;
    out.report.opt_converged = true;
    out.report.add_failure("opt", 1.0 - success_rate(e, povm));
    out.report.add_failure("pgm", 1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(1))));
    out.report.add_failure("holevo",
                           1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(2))));
    out.report.lagrange = lagrange_certificate(e, povm);
    out.report.bounds = check_bounds(e, out.report.failures[0].failure, *out.report.lagrange);

    std::size_t most_probable = 0;
    for (std::size_t k = 1; k < e.size(); ++k) {
        if (e.prior(k) > e.prior(most_probable)) {
            most_probable = k;
        }
    }
    out.most_probable_index = most_probable;
    out.suppressed_detection =
        e.prior(most_probable) *
        std::real(e.state(most_probable).dot(povm.element(most_probable) * e.state(most_probable)));
    out.most_probable_never_detected = out.suppressed_detection == 0.0;
    out.prior_gap_holds = e.prior(2) > e.prior(0) && e.prior(2) > e.prior(1);
    return out;
}

FigureData figure_data(const std::string& figure, int resolution) {
    if (resolution < 2) {
        throw std::invalid_argument("resolution: must be at least 2");
    }
    const std::vector<double> p_axis = linspace(0.0, 1.0, resolution);
    const std::vector<double> theta_axis = linspace(0.0, kPi / 2.0, resolution);
    FigureData out;
    out.figure = figure;
    if (figure == "fig1") {
        out.grids.push_back(ratio_grid(PowerWeighting(1), p_axis, theta_axis));
        out.grids.push_back(ratio_grid(PowerWeighting(2), p_axis, theta_axis));
    } else if (figure == "fig2a") {
        out.grids.push_back(ratio_grid(PowerWeighting(2), p_axis, theta_axis));
    } else if (figure == "fig2b") {
        out.grids.push_back(ratio_grid(PowerWeighting(3), p_axis, theta_axis));
    } else {
        throw std::invalid_argument("figure: unknown name '" + figure +
                                    "' (expected fig1|fig2a|fig2b)");
    }
    return out;
}

SweepTable asymptotic_sweep(double p1, double c1, double c2) {
    SweepTable table;
    table.p1 = p1;
    table.c1 = c1;
    table.c2 = c2;
    const double limit = asymptotic_ratio_limit(p1, c1, c2);
    const double w1 = c1 * p1 * p1;
    const double w2 = c2 * (1.0 - p1) * (1.0 - p1);
    for (int k = 1; k <= 8; ++k) {
        const double theta = kPi / 2.0 - std::pow(10.0, -k);
        const BinaryEnsembleParams b(p1, theta);
        const double ratio = weighted_binary_failure(b, w1, w2) / optimal_binary_failure(b);
        table.rows.push_back({theta, ratio, limit, std::abs(ratio - limit)});
    }
    return table;
}

ExperimentSummary random_experiment(Eigen::Index dim, std::size_t m, std::vector<double> priors,
                                    int trials, std::uint64_t seed) {
    if (trials < 1) {
        throw std::invalid_argument("trials: must be at least 1");
    }
    ExperimentSummary summary;
    summary.dim = dim;
    summary.num_states = m;
    summary.priors = priors;
    summary.seed = seed;
    summary.per_trial.reserve(static_cast<std::size_t>(trials));

    RandomSource rng(seed);
    int at_most = 0;
    int strictly = 0;
    for (int t = 0; t < trials; ++t) {
        const PureStateEnsemble e = haar_random_ensemble(dim, m, priors, rng);
        TrialResult trial;
        trial.pgm = 1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(1)));
        trial.holevo = 1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(2)));
        trial.cubic = 1.0 - gram_success_rate(e, power_weights(e, PowerWeighting(3)));
        const SolveResult solved = iterate_optimal(e);
        trial.opt = solved.failure_rate;
        trial.certified = solved.converged;
        if (!trial.certified) {
            ++summary.uncertified_trials;
        }
        if (trial.holevo <= trial.pgm + 1e-12) {
            ++at_most;
        }
        if (trial.holevo < trial.pgm - 1e-12) {
            ++strictly;
        }
        summary.mean_pgm += trial.pgm;
        summary.mean_holevo += trial.holevo;
        summary.mean_cubic += trial.cubic;
        summary.mean_opt += trial.opt;
        summary.per_trial.push_back(trial);
    }
    const double n = static_cast<double>(trials);
    summary.mean_pgm /= n;
    summary.mean_holevo /= n;
    summary.mean_cubic /= n;
    summary.mean_opt /= n;
    summary.fraction_holevo_at_most_pgm = static_cast<double>(at_most) / n;
    summary.fraction_holevo_strictly_better = static_cast<double>(strictly) / n;
    return summary;
}

VerifyReport verify_weights(const PureStateEnsemble& e, const WeightVector& w) {
    VerifyReport report;
    report.ensemble_hash = ensemble_hash(e);
    report.belavkin = belavkin_certificate(e, w);
    report.lagrange = lagrange_certificate(e, build_bwsrm(e, w));
    bool all_positive = true;
    for (std::size_t k = 0; k < w.size(); ++k) {
        all_positive = all_positive && w[k] > 0.0;
    }
    if (all_positive) {
        report.weighted_sufficient = weighted_sufficient_certificate(e, w);
    } else {
        report.weighted_sufficient_note = "inapplicable: requires strictly positive weights";
    }
    report.certified = report.belavkin.pass && report.lagrange.pass;
    return report;
}

std::string render_json(const CounterexampleReport& r) {
    std::ostringstream os;
    os << "{\"ensemble\": " << ensemble_to_json(r.ensemble);
    os << ", \"ensemble_hash\": \"" << r.report.ensemble_hash << "\"";
    os << ", \"failure_rates\": {";
    for (std::size_t i = 0; i < r.report.failures.size(); ++i) {
        if (i > 0) {
            os << ", ";
        }
        os << "\"" << r.report.failures[i].method
           << "\": " << num10(r.report.failures[i].failure);
    }
    os << "}";
    os << ", \"lagrange_certificate\": " << certificate_json(*r.report.lagrange);
    os << ", \"most_probable_index\": " << r.most_probable_index;
    os << ", \"most_probable_prior\": " << num10(r.ensemble.prior(r.most_probable_index));
    os << ", \"suppressed_detection\": " << num10(r.suppressed_detection);
    os << ", \"most_probable_never_detected\": " << json_bool(r.most_probable_never_detected);
    os << ", \"prior_gap_holds\": " << json_bool(r.prior_gap_holds);
    os << "}\n";
    return os.str();
}

std::string render_csv(const CounterexampleReport& r) {
    std::ostringstream os;
    os << "method,failure\n";
    for (const MethodFailure& f : r.report.failures) {
        os << f.method << "," << csv_num(f.failure) << "\n";
    }
    os << "suppressed_detection," << csv_num(r.suppressed_detection) << "\n";
    return os.str();
}

std::string render_csv(const FigureData& f) {
    std::ostringstream os;
    const bool two = f.grids.size() == 2;
    if (two) {
        os << "p,theta,ratio_pgm,ratio_holevo\n";
    } else {
        os << "p,theta,ratio\n";
    }
    const RatioGrid& first = f.grids.front();
    for (std::size_t i = 0; i < first.p_axis.size(); ++i) {
        for (std::size_t j = 0; j < first.theta_axis.size(); ++j) {
            os << csv_num(first.p_axis[i]) << "," << csv_num(first.theta_axis[j]);
            for (const RatioGrid& grid : f.grids) {
                os << "," << csv_num(grid.at(i, j));
            }
            os << "\n";
        }
    }
    return os.str();
}

std::string render_json(const SweepTable& t) {
    std::ostringstream os;
    os << "{\"p1\": " << num10(t.p1) << ", \"c\": [" << num10(t.c1) << ", " << num10(t.c2)
       << "], \"limit\": " << num10(t.rows.empty() ? 0.0 : t.rows.front().limit)
       << ", \"rows\": [";
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (i > 0) {
            os << ", ";
        }
        os << "{\"theta\": " << num10(t.rows[i].theta) << ", \"ratio\": " << num10(t.rows[i].ratio)
           << ", \"limit\": " << num10(t.rows[i].limit)
           << ", \"abs_error\": " << num10(t.rows[i].abs_error) << "}";
    }
    os << "]}\n";
    return os.str();
}

std::string render_csv(const SweepTable& t) {
    std::ostringstream os;
    os << "theta,ratio,limit,abs_error\n";
    for (const SweepRow& row : t.rows) {
        os << csv_num(row.theta) << "," << csv_num(row.ratio) << "," << csv_num(row.limit) << ","
           << csv_num(row.abs_error) << "\n";
    }
    return os.str();
}

std::string render_json(const ExperimentSummary& s) {
    std::ostringstream os;
    os << "{\"dim\": " << s.dim << ", \"states\": " << s.num_states
       << ", \"priors\": " << detail::json_number_array(s.priors) << ", \"seed\": " << s.seed
       << ", \"trials\": " << s.per_trial.size();
    os << ", \"mean_failure\": {\"pgm\": " << num10(s.mean_pgm)
       << ", \"holevo\": " << num10(s.mean_holevo) << ", \"cubic\": " << num10(s.mean_cubic)
       << ", \"opt\": " << num10(s.mean_opt) << "}";
    os << ", \"fraction_holevo_at_most_pgm\": " << num10(s.fraction_holevo_at_most_pgm);
    os << ", \"fraction_holevo_strictly_better\": " << num10(s.fraction_holevo_strictly_better);
    os << ", \"uncertified_trials\": " << s.uncertified_trials;
    os << ", \"per_trial\": [";
    for (std::size_t i = 0; i < s.per_trial.size(); ++i) {
        if (i > 0) {
            os << ", ";
        }
        const TrialResult& t = s.per_trial[i];
        os << "{\"pgm\": " << num10(t.pgm) << ", \"holevo\": " << num10(t.holevo)
           << ", \"cubic\": " << num10(t.cubic) << ", \"opt\": " << num10(t.opt)
           << ", \"certified\": " << json_bool(t.certified) << "}";
    }
    os << "]}\n";
    return os.str();
}

std::string render_csv(const ExperimentSummary& s) {
    std::ostringstream os;
    os << "trial,fail_pgm,fail_holevo,fail_cubic,fail_opt,opt_certified\n";
    for (std::size_t i = 0; i < s.per_trial.size(); ++i) {
        const TrialResult& t = s.per_trial[i];
        os << i << "," << csv_num(t.pgm) << "," << csv_num(t.holevo) << "," << csv_num(t.cubic)
           << "," << csv_num(t.opt) << "," << (t.certified ? 1 : 0) << "\n";
    }
    os << "mean," << csv_num(s.mean_pgm) << "," << csv_num(s.mean_holevo) << ","
       << csv_num(s.mean_cubic) << "," << csv_num(s.mean_opt) << ","
       << (s.per_trial.size() - static_cast<std::size_t>(s.uncertified_trials)) << "\n";
    os << "fraction_holevo_at_most_pgm," << csv_num(s.fraction_holevo_at_most_pgm) << ",,,,\n";
    return os.str();
}

std::string render_json(const VerifyReport& v) {
    std::ostringstream os;
    os << "{\"ensemble_hash\": \"" << v.ensemble_hash << "\"";
    os << ", \"belavkin\": " << certificate_json(v.belavkin);
    os << ", \"lagrange\": " << certificate_json(v.lagrange);
    if (v.weighted_sufficient) {
        os << ", \"weighted_sufficient\": " << certificate_json(*v.weighted_sufficient);
    } else {
        os << ", \"weighted_sufficient\": \"" << v.weighted_sufficient_note << "\"";
    }
    os << ", \"certified\": " << json_bool(v.certified);
    os << "}\n";
    return os.str();
}

std::string render_csv(const VerifyReport& v) {
    std::ostringstream os;
    os << "certificate,pass,worst_margin,tolerance\n";
    os << "belavkin," << (v.belavkin.pass ? 1 : 0) << "," << csv_num(v.belavkin.worst_margin)
       << "," << csv_num(v.belavkin.tolerance) << "\n";
    os << "lagrange," << (v.lagrange.pass ? 1 : 0) << "," << csv_num(v.lagrange.worst_margin)
       << "," << csv_num(v.lagrange.tolerance) << "\n";
    if (v.weighted_sufficient) {
        os << "weighted-sufficient," << (v.weighted_sufficient->pass ? 1 : 0) << ","
           << csv_num(v.weighted_sufficient->worst_margin) << ","
           << csv_num(v.weighted_sufficient->tolerance) << "\n";
    }
    return os.str();
}

RunOutcome run_command(const RunConfig& config) {
    const bool json = config.format == OutputFormat::json;
    RunOutcome outcome;
    try {
        switch (config.command) {
            case Command::discriminate: {
                const PureStateEnsemble e = load_ensemble_file(config.input_path);
                const DiscriminationReport report = discriminate(e, config.method, config.weights);
                outcome.output = json ? render_json(report) : render_csv(report);
                if (report.opt_requested && !report.opt_converged) {
                    outcome.error =
                        "optimal measurement failed to certify: " + report.opt_diagnostic;
                    outcome.exit_code = 2;
                }
                break;
            }
            case Command::counterexample: {
                const CounterexampleReport report = run_counterexample();
                outcome.output = json ? render_json(report) : render_csv(report);
                break;
            }
            case Command::figure_data: {
                outcome.output = render_csv(figure_data(config.figure, config.resolution));
                break;
            }
            case Command::asymptotic_sweep: {
                if (config.weights.empty() || config.weights.size() > 2) {
                    throw std::invalid_argument("weights: expected c1 or c1,c2");
                }
                const double c1 = config.weights[0];
                const double c2 = config.weights.size() > 1 ? config.weights[1] : c1;
                const SweepTable table = asymptotic_sweep(config.p1, c1, c2);
                outcome.output = json ? render_json(table) : render_csv(table);
                break;
            }
            case Command::random_experiment: {
                const ExperimentSummary summary =
                    random_experiment(config.dim, config.num_states, config.priors,
                                      config.trials, config.seed);
                outcome.output = json ? render_json(summary) : render_csv(summary);
                break;
            }
            case Command::verify: {
                const PureStateEnsemble e = load_ensemble_file(config.input_path);
                const VerifyReport report = verify_weights(e, WeightVector(config.weights));
                outcome.output = json ? render_json(report) : render_csv(report);
                if (!report.certified) {
                    outcome.error = "certificates did not pass";
                    outcome.exit_code = 2;
                }
                break;
            }
        }
    } catch (const std::invalid_argument& err) {
        outcome.exit_code = 1;
        outcome.error = err.what();
    } catch (const std::domain_error& err) {
        outcome.exit_code = 1;
        outcome.error = err.what();
    } catch (const std::exception& err) {
        outcome.exit_code = 2;
        outcome.error = std::string("computation failed: ") + err.what();
    }
    return outcome;
}

}  // namespace qsd
