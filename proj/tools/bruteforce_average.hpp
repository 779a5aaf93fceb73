#pragma once

// Reference sheared-window maximal average by direct summation. Shares no
// code with the library engine beyond the grid container.

#include "dmax/grid.hpp"

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

namespace dmax::reference {

inline GridFunction bruteforce_max(const GridFunction& f, double alpha,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& scales) {
    const long n = static_cast<long>(f.n());
    GridFunction out(f.n(), f.length());
    auto wrap = [n](long v) { return static_cast<std::size_t>(((v % n) + n) % n); };
    for (long x1 = 0; x1 < n; ++x1) {
        for (long x2 = 0; x2 < n; ++x2) {
            double best = 0.0;
            for (const auto& [d1, d2] : scales) {
                const long a = static_cast<long>(d1);
                const long b = static_cast<long>(d2);
                // Column sums first, accumulated bottom to top, then columns
                // left to right in the order -d1..d1.
                double total = 0.0;
                for (long i = -a; i <= a; ++i) {
                    const long shift = static_cast<long>(std::nearbyint(static_cast<double>(i) * alpha));
                    double column = 0.0;
                    for (long j = -b; j <= b; ++j) column += std::abs(f(wrap(x1 + i), wrap(x2 + shift + j)));
                    total += column;
                }
                const double mean = total / static_cast<double>((2 * a + 1) * (2 * b + 1));
                if (mean > best) best = mean;
            }
            out(static_cast<std::size_t>(x1), static_cast<std::size_t>(x2)) = best;
        }
    }
    return out;
}

}  // namespace dmax::reference
