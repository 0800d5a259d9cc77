#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qsd/certificates.hpp"

namespace qsd {

struct MethodFailure {
    std::string method;  // opt | pgm | holevo | cubic | custom
    double failure = 0.0;
};

/// Per-ensemble record of failure rates by method, optimality certificates,
/// bound slacks, and metadata.
struct DiscriminationReport {
    std::string ensemble_hash;
    Eigen::Index dim = 0;
    std::size_t num_states = 0;
    std::vector<MethodFailure> failures;
    std::optional<Certificate> lagrange;
    std::optional<Certificate> belavkin;
    std::optional<BoundReport> bounds;
    bool opt_requested = false;
    bool opt_converged = true;
    int opt_iterations = 0;
    std::string opt_diagnostic;

    void add_failure(const std::string& method, double rate);
};

std::string render_json(const DiscriminationReport& r);
std::string render_csv(const DiscriminationReport& r);

}  // namespace qsd
