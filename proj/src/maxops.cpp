#include "dmax/maxops.hpp"

#include "dmax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>

namespace dmax {

std::vector<Scale> dyadic_scales(std::size_t n, std::size_t max_half_width) {
    if (max_half_width == 0) max_half_width = std::max<std::size_t>(1, n / 4);
    std::vector<std::size_t> widths;
    for (std::size_t d = 1; d <= max_half_width; d *= 2) widths.push_back(d);
    std::vector<Scale> out;
    for (std::size_t d1 : widths) {
        for (std::size_t d2 : widths) out.push_back({d1, d2});
    }
    return out;
}

std::vector<Scale> normalize_scales(std::span<const Scale> scales, std::size_t n) {
    if (scales.empty()) throw StructuralError("scale lattice is empty");
    std::vector<Scale> out(scales.begin(), scales.end());
    bool clipped = false;
    for (auto& s : out) {
        if (s.d1 == 0 || s.d2 == 0) throw DomainError("half-widths must be >= 1");
        if (s.d1 > n / 2) s.d1 = n / 2, clipped = true;
        if (s.d2 > n / 2) s.d2 = n / 2, clipped = true;
    }
    if (clipped) std::cerr << "dmax: warning: half-widths above n/2 clipped to " << n / 2 << "\n";
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

ShearedAverager::ShearedAverager(const GridFunction& f, std::span<const Scale> scales)
    : n_(f.n()), length_(f.length()), scales_(normalize_scales(scales, f.n())) {
    for (const auto& s : scales_) {
        max_d1_ = std::max(max_d1_, s.d1);
        max_d2_ = std::max(max_d2_, s.d2);
    }
    // Column prefix over y in [-offset, n + offset), offset = D1 + D2 + 1.
    const std::size_t offset = max_d1_ + max_d2_ + 1;
    prefix_width_ = n_ + 2 * offset;
    prefix_.resize(n_ * prefix_width_);
    for (std::size_t x1 = 0; x1 < n_; ++x1) {
        double* row = prefix_.data() + x1 * prefix_width_;
        double acc = 0.0;
        for (std::size_t t = 0; t < prefix_width_; ++t) {
            const std::size_t y = (t + n_ * (offset / n_ + 1) - offset) % n_;
            acc += std::abs(f(x1, y));
            row[t] = acc;
        }
    }
}

void ShearedAverager::accumulate_max(double alpha, GridFunction& out) const {
    if (!(std::abs(alpha) <= 1.0)) throw DomainError("shear slope must satisfy |alpha| <= 1");
    if (out.n() != n_) throw StructuralError("output grid has the wrong size");

    // For each row x1, acc(y) = sum_{|i| <= d1} prefix(x1 + i, y + s_i) for
    // y in [-D2 - 1, n - 1 + D2], stored at u = y + D2 + 1 and grown one d1 at
    // a time. A window sum is then a difference of two acc entries.
    const std::size_t width = n_ + 2 * max_d2_ + 1;
    const long n = static_cast<long>(n_);
    std::vector<long> shift(max_d1_ + 1);
    for (std::size_t i = 0; i <= max_d1_; ++i) shift[i] = shear_offset(static_cast<long>(i), alpha);
    std::vector<double> acc(width);

    for (long x1 = 0; x1 < n; ++x1) {
        std::fill(acc.begin(), acc.end(), 0.0);
        auto add_column = [&](long i, long s) {
            const std::size_t src = static_cast<std::size_t>(((x1 + i) % n + n) % n);
            const double* p = prefix_.data() + src * prefix_width_ +
                              static_cast<std::size_t>(s + static_cast<long>(max_d1_));
            for (std::size_t u = 0; u < width; ++u) acc[u] += p[u];
        };
        double* o = out.samples().data() + static_cast<std::size_t>(x1) * n_;

        add_column(0, 0);
        std::size_t done = 0;
        auto it = scales_.begin();
        while (it != scales_.end()) {
            const std::size_t d1 = it->d1;
            for (std::size_t i = done + 1; i <= d1; ++i) {
                add_column(static_cast<long>(i), shift[i]);
                add_column(-static_cast<long>(i), shear_offset(-static_cast<long>(i), alpha));
            }
            done = d1;
            for (; it != scales_.end() && it->d1 == d1; ++it) {
                const std::size_t d2 = it->d2;
                const double count = static_cast<double>((2 * d1 + 1) * (2 * d2 + 1));
                const double* hi = acc.data() + max_d2_ + 1 + d2;
                const double* lo = acc.data() + max_d2_ - d2;
                for (std::size_t x2 = 0; x2 < n_; ++x2) {
                    const double avg = (hi[x2] - lo[x2]) / count;
                    o[x2] = std::max(o[x2], avg);
                }
            }
        }
    }
}

GridFunction ShearedAverager::evaluate(double alpha) const {
    GridFunction out(n_, length_);
    accumulate_max(alpha, out);
    return out;
}

GridFunction parallelogram_max(const GridFunction& f, double alpha, std::span<const Scale> scales) {
    return ShearedAverager(f, scales).evaluate(alpha);
}

GridFunction directional_max(const GridFunction& f, const SlopeSet& omega,
                             std::span<const Scale> scales) {
    if (omega.empty()) throw StructuralError("direction set is empty");
    const ShearedAverager engine(f, scales);
    GridFunction out(f.n(), f.length());
    for (double alpha : omega.slopes()) engine.accumulate_max(alpha, out);
    return out;
}

GridFunction strong_max(const GridFunction& f, std::span<const Scale> scales) {
    return parallelogram_max(f, 0.0, scales);
}

}  // namespace dmax
