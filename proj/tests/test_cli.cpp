// End-to-end checks of the command-line binary: output contracts and exit
// codes (0 success, 1 validation error, 2 failed to certify).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "qsd/commands.hpp"
#include "qsd/ensemble_io.hpp"

namespace {

struct RunResult {
    int status = -1;
    std::string output;
};

RunResult run_cli(const std::string& args) {
    const std::string command = std::string(QSD_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(command.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string output;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) {
        output.append(buffer, n);
    }
    const int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, output};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    REQUIRE(out.good());
    out << content;
}

std::string counterexample_path() {
    const std::string path = "cli_counterexample_input.json";
    write_file(path, qsd::ensemble_to_json(qsd::counterexample_ensemble()));
    return path;
}

}  // namespace

TEST_CASE("counterexample command emits the full JSON report") {
    const RunResult r = run_cli("counterexample");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"opt\": 0.4137549616") != std::string::npos);
    CHECK(r.output.find("\"pgm\": 0.4224137267") != std::string::npos);
    CHECK(r.output.find("\"holevo\": 0.4244772521") != std::string::npos);
    CHECK(r.output.find("\"most_probable_never_detected\": true") != std::string::npos);

    const RunResult csv = run_cli("counterexample --format csv");
    CHECK(csv.status == 0);
    CHECK(csv.output.rfind("method,failure\n", 0) == 0);
}

TEST_CASE("discriminate reads ensemble files and reports every method") {
    const std::string path = counterexample_path();
    const RunResult r = run_cli("discriminate --input " + path + " --method all");
    CHECK(r.status == 0);
    CHECK(r.output.find("\"cubic\"") != std::string::npos);
    CHECK(r.output.find("\"bounds\"") != std::string::npos);
    CHECK(r.output.find("\"belavkin\"") != std::string::npos);

    const RunResult custom =
        run_cli("discriminate --input " + path + " --method custom --weights 1,1,1");
    CHECK(custom.status == 0);
    CHECK(custom.output.find("\"custom\"") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("discriminate rejects missing and malformed inputs with exit code 1") {
    const RunResult missing = run_cli("discriminate --input does_not_exist.json");
    CHECK(missing.status == 1);
    CHECK(missing.output.find("cannot open") != std::string::npos);

    write_file("cli_bad.json", "{\n  \"dim\": 2,\n  broken\n}");
    const RunResult malformed = run_cli("discriminate --input cli_bad.json");
    CHECK(malformed.status == 1);
    CHECK(malformed.output.find("parse error at line 3") != std::string::npos);
    std::remove("cli_bad.json");

    write_file("cli_bad_priors.json",
               R"({"dim": 1, "states": [[[1.0, 0.0]]], "priors": [0.7]})");
    const RunResult invalid = run_cli("discriminate --input cli_bad_priors.json");
    CHECK(invalid.status == 1);
    CHECK(invalid.output.find("priors") != std::string::npos);
    std::remove("cli_bad_priors.json");
}

TEST_CASE("verify certifies optimal weights and rejects suboptimal ones with exit code 2") {
    const std::string path = counterexample_path();
    const qsd::PureStateEnsemble e = qsd::counterexample_ensemble();
    const qsd::Povm optimal = qsd::counterexample_optimal_povm();
    char weights[128];

    double w[3];
    for (int k = 0; k < 3; ++k) {
        w[k] = e.prior(k) * e.prior(k) *
               std::real(e.state(k).dot(optimal.element(k) * e.state(k)));
    }
    std::snprintf(weights, sizeof weights, "%.17g,%.17g,%.17g", w[0], w[1], w[2]);
    const RunResult good = run_cli("verify --input " + path + " --weights " + weights);
    CHECK(good.status == 0);
    CHECK(good.output.find("\"certified\": true") != std::string::npos);

    std::snprintf(weights, sizeof weights, "%.17g,%.17g,%.17g", e.prior(0) * e.prior(0),
                  e.prior(1) * e.prior(1), e.prior(2) * e.prior(2));
    const RunResult bad = run_cli("verify --input " + path + " --weights " + weights);
    CHECK(bad.status == 2);
    CHECK(bad.output.find("\"certified\": false") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("figure-data emits the documented CSV headers") {
    const RunResult fig2a = run_cli("figure-data --figure fig2a --resolution 5");
    CHECK(fig2a.status == 0);
    CHECK(fig2a.output.rfind("p,theta,ratio\n", 0) == 0);

    const RunResult fig1 = run_cli("figure-data --figure fig1 --resolution 3");
    CHECK(fig1.status == 0);
    CHECK(fig1.output.rfind("p,theta,ratio_pgm,ratio_holevo\n", 0) == 0);

    const RunResult bad = run_cli("figure-data --figure fig9 --resolution 5");
    CHECK(bad.status == 1);
}

TEST_CASE("asymptotic-sweep prints the analytic limit alongside the samples") {
    const RunResult r = run_cli("asymptotic-sweep --weights 4,1 --p 0.5 --format csv");
    CHECK(r.status == 0);
    CHECK(r.output.rfind("theta,ratio,limit,abs_error\n", 0) == 0);
    CHECK(r.output.find("1.111111111") != std::string::npos);
}

TEST_CASE("random-experiment output is byte-identical for identical seeds") {
    const std::string args =
        "random-experiment --dim 2 --states 2 --priors 0.4,0.6 --trials 5 --seed 21";
    const RunResult a = run_cli(args);
    const RunResult b = run_cli(args);
    CHECK(a.status == 0);
    CHECK(a.output == b.output);
    CHECK(a.output.find("\"fraction_holevo_at_most_pgm\": 1") != std::string::npos);
}

TEST_CASE("--out writes the report to a file") {
    const std::string out_path = "cli_sweep_out.csv";
    const RunResult r =
        run_cli("asymptotic-sweep --weights 1,1 --p 0.25 --format csv --out " + out_path);
    CHECK(r.status == 0);
    CHECK(r.output.empty());
    std::ifstream in(out_path, std::ios::binary);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "theta,ratio,limit,abs_error");
    in.close();
    std::remove(out_path.c_str());
}

TEST_CASE("argument errors exit with the validation code") {
    CHECK(run_cli("").status == 1);
    CHECK(run_cli("discriminate").status == 1);                   // --input required
    CHECK(run_cli("counterexample --format xml").status == 1);    // invalid value
    CHECK(run_cli("figure-data --figure fig2a --bogus").status == 1);
}
