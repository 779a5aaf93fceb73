#pragma once

// Seeded generator with a portable mapping to doubles (std distributions are
// implementation-defined, which would break byte-identical reruns across
// standard libraries).

#include <cstdint>
#include <random>

namespace dmax::detail {

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    /// Uniform integer in [0, bound).
    std::uint64_t below(std::uint64_t bound) { return static_cast<std::uint64_t>(unit() * static_cast<double>(bound)); }
    /// Multiple of 2^-20 in [0, 1).
    double lattice() { return static_cast<double>(engine_() >> 44) * 0x1.0p-20; }

private:
    std::mt19937_64 engine_;
};

}  // namespace dmax::detail
