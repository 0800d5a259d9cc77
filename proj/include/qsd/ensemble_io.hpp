#pragma once

#include <string>

#include "qsd/ensemble.hpp"

namespace qsd {

/// Ensemble JSON schema:
///   {"dim": n, "states": [[[re, im], ...], ...], "priors": [p1, ...]}
/// Complex amplitudes are always [re, im] pairs. Serialization round-trips
/// every double exactly.
PureStateEnsemble parse_ensemble_json(const std::string& text);
PureStateEnsemble load_ensemble_file(const std::string& path);
std::string ensemble_to_json(const PureStateEnsemble& e);

}  // namespace qsd
