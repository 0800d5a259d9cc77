#include "qsd/ensemble_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qsd {

namespace {

using nlohmann::json;

std::string locate(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

double require_number(const json& value, const std::string& where) {
    if (!value.is_number()) {
        throw std::invalid_argument(where + ": expected a number");
    }
    return value.get<double>();
}

std::string format_exact(double v) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.17g", v);
    return buffer;
}

}  // namespace

PureStateEnsemble parse_ensemble_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& err) {
        throw std::invalid_argument("parse error at " + locate(text, err.byte) + ": " +
                                    err.what());
    }
    if (!root.is_object()) {
        throw std::invalid_argument("ensemble: expected a JSON object");
    }
    if (!root.contains("dim") || !root["dim"].is_number_integer() || root["dim"].get<long>() < 1) {
        throw std::invalid_argument("dim: expected a positive integer");
    }
    if (!root.contains("states") || !root["states"].is_array()) {
        throw std::invalid_argument("states: expected an array of state vectors");
    }
    if (!root.contains("priors") || !root["priors"].is_array()) {
        throw std::invalid_argument("priors: expected an array of probabilities");
    }
    const Eigen::Index dim = root["dim"].get<Eigen::Index>();

    std::vector<ComplexVector> states;
    states.reserve(root["states"].size());
    for (std::size_t k = 0; k < root["states"].size(); ++k) {
        const json& entry = root["states"][k];
        const std::string where = "states[" + std::to_string(k) + "]";
        if (!entry.is_array()) {
            throw std::invalid_argument(where + ": expected an array of [re, im] pairs");
        }
        ComplexVector v(static_cast<Eigen::Index>(entry.size()));
        for (std::size_t i = 0; i < entry.size(); ++i) {
            const json& amp = entry[i];
            const std::string amp_where = where + "[" + std::to_string(i) + "]";
            if (!amp.is_array() || amp.size() != 2) {
                throw std::invalid_argument(amp_where + ": expected a [re, im] pair");
            }
            v(static_cast<Eigen::Index>(i)) = Complex(require_number(amp[0], amp_where),
                                                      require_number(amp[1], amp_where));
        }
        states.push_back(std::move(v));
    }

    std::vector<double> priors;
    priors.reserve(root["priors"].size());
    for (std::size_t k = 0; k < root["priors"].size(); ++k) {
        priors.push_back(require_number(root["priors"][k], "priors[" + std::to_string(k) + "]"));
    }
    return PureStateEnsemble(dim, std::move(states), std::move(priors));
}

PureStateEnsemble load_ensemble_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open ensemble file: " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_ensemble_json(buffer.str());
}

std::string ensemble_to_json(const PureStateEnsemble& e) {
    std::ostringstream os;
    os << "{\"dim\": " << e.dim() << ", \"states\": [";
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (k > 0) {
            os << ", ";
        }
        os << "[";
        for (Eigen::Index i = 0; i < e.dim(); ++i) {
            if (i > 0) {
                os << ", ";
            }
            os << "[" << format_exact(e.state(k)(i).real()) << ", "
               << format_exact(e.state(k)(i).imag()) << "]";
        }
        os << "]";
    }
    os << "], \"priors\": [";
    for (std::size_t k = 0; k < e.size(); ++k) {
        if (k > 0) {
            os << ", ";
        }
        os << format_exact(e.prior(k));
    }
    os << "]}";
    return os.str();
}

}  // namespace qsd
