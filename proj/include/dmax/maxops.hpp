#pragma once

// Maximal averages over sheared parallelograms on a periodic grid.
//
// For slope alpha and half-widths (d1, d2) in grid cells, the window around
// (x1, x2) is {(x1 + i, x2 + round(i alpha) + j) : |i| <= d1, |j| <= d2}, with
// round-half-to-even and periodic wrap. P_alpha f is the max over the scale
// lattice of the mean of |f| over that window.

#include "dmax/directions.hpp"
#include "dmax/grid.hpp"

#include <cmath>
#include <compare>
#include <cstddef>
#include <span>
#include <vector>

namespace dmax {

struct Scale {
    std::size_t d1 = 1;
    std::size_t d2 = 1;

    auto operator<=>(const Scale&) const = default;
};

/// Full product of dyadic half-widths {1, 2, 4, ..., max} in both axes;
/// max defaults to n/4.
std::vector<Scale> dyadic_scales(std::size_t n, std::size_t max_half_width = 0);

/// Sorted, deduplicated copy with half-widths above n/2 clipped to n/2 (a
/// warning goes to stderr when clipping happens). Zero half-widths are rejected.
std::vector<Scale> normalize_scales(std::span<const Scale> scales, std::size_t n);

GridFunction parallelogram_max(const GridFunction& f, double alpha, std::span<const Scale> scales);

/// Pointwise max of parallelogram_max over the slopes of omega.
GridFunction directional_max(const GridFunction& f, const SlopeSet& omega,
                             std::span<const Scale> scales);

/// Axis-parallel rectangles (alpha = 0).
GridFunction strong_max(const GridFunction& f, std::span<const Scale> scales);

/// Reusable engine: caches the periodic column prefix sums of |f| so several
/// slopes can be evaluated against one input.
class ShearedAverager {
public:
    ShearedAverager(const GridFunction& f, std::span<const Scale> scales);

    /// out = max(out, P_alpha f) pointwise; out must have f's shape.
    void accumulate_max(double alpha, GridFunction& out) const;
    GridFunction evaluate(double alpha) const;

private:
    std::size_t n_;
    double length_;
    std::vector<Scale> scales_;
    std::size_t max_d1_ = 0;
    std::size_t max_d2_ = 0;
    std::size_t prefix_width_ = 0;
    std::vector<double> prefix_;  // n rows, column prefix sums from y = -(D1 + D2 + 1)
};

/// Row offset of column i of a window sheared by alpha.
inline long shear_offset(long i, double alpha) {
    return static_cast<long>(std::nearbyint(static_cast<double>(i) * alpha));
}

}  // namespace dmax
