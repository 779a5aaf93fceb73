#pragma once

// Fourier multipliers on the periodic grid. Sample frequencies are
// xi = 2 pi k / L for integer k in (-n/2, n/2]. Sectors are described by the
// frequency slope sigma = -xi_1 / xi_2, the line on which the window factor
// phi_hat(h (xi_1 + alpha xi_2)) of Gamma^alpha peaks at sigma = alpha.

#include "dmax/directions.hpp"
#include "dmax/grid.hpp"
#include "dmax/kernels.hpp"

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace dmax {

enum class SectorChart { slope, angle };

/// {xi : lo <= -xi_1/xi_2 <= hi} together with its reflection through the
/// origin. The zero frequency belongs to every sector; the rest of the line
/// xi_2 = 0 belongs to none.
struct Sector {
    double lo = 0.0;
    double hi = 0.0;
    bool doubled = false;
    bool exits_chart = false;  // bounds leave (0, 1)

    bool contains(double xi1, double xi2) const noexcept;
    bool operator==(const Sector&) const = default;
};

/// S(J).
Sector sector_of(const SlopeInterval& j);

/// 2S(J): same bisectrix, twice the width. The slope chart doubles
/// [a, b] to [a - |J|/2, b + |J|/2]; the angle chart doubles atan a, atan b
/// about their mean. Bounds are never clipped.
Sector sector_double(const SlopeInterval& j, SectorChart chart = SectorChart::slope);

/// Physical frequency of FFT index k on an n-point axis of length L.
double frequency(std::size_t k, std::size_t n, double length) noexcept;

/// Cached transform of a grid function, reused across several multipliers.
class Spectrum {
public:
    explicit Spectrum(const GridFunction& f);
    ~Spectrum();
    Spectrum(Spectrum&&) noexcept;
    Spectrum& operator=(Spectrum&&) noexcept;

    std::size_t n() const noexcept { return n_; }
    double length() const noexcept { return length_; }

    /// Re of the inverse transform of symbol(xi_1, xi_2) * f_hat.
    GridFunction apply(const std::function<double(double, double)>& symbol) const;

    /// Sum over frequencies of |f_hat|^2 * weight, with weight = 1 giving
    /// the squared discrete L2 norm by Parseval.
    double energy(const std::function<double(double, double)>& weight) const;

private:
    struct Impl;
    std::size_t n_ = 0;
    double length_ = 0.0;
    std::unique_ptr<Impl> impl_;
};

/// phi_hat(h (xi_1 + alpha xi_2)) * band(xi_2).
std::function<double(double, double)> gamma_symbol(const SymbolProfile& band, double h, double alpha);

/// Gamma^alpha_{r,R,h} f. R above the grid Nyquist frequency is clipped to it
/// (with a warning), which leaves every sampled symbol value unchanged.
GridFunction gamma_apply(const GridFunction& f, const KernelParams& p);
GridFunction gamma_apply(const Spectrum& f, const KernelParams& p);

/// Same window and shear, arbitrary band profile (used for the split pieces).
GridFunction band_apply(const Spectrum& f, const SymbolProfile& band, double h, double alpha);

GridFunction sector_project(const GridFunction& f, const Sector& s);
GridFunction sector_project(const Spectrum& f, const Sector& s);

/// Projection onto the frequencies outside s (so the zero frequency is dropped).
GridFunction sector_complement_project(const GridFunction& f, const Sector& s);

}  // namespace dmax
