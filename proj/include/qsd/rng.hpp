#pragma once

#include <cstdint>
#include <random>

namespace qsd {

/// Deterministic random source: identical seeds give identical streams on
/// every platform, because the distributions are built from raw mt19937_64
/// output instead of the implementation-defined standard distributions.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : gen_(seed) {}

    /// Uniform double in (0, 1].
    double uniform() {
        return static_cast<double>((gen_() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller.
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        const double r = std::sqrt(-2.0 * std::log(uniform()));
        const double phi = 2.0 * 3.141592653589793238462643 * uniform();
        spare_ = r * std::sin(phi);
        have_spare_ = true;
        return r * std::cos(phi);
    }

    std::uint64_t raw() { return gen_(); }

private:
    std::mt19937_64 gen_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace qsd
