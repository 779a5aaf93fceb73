#include "dmax/spectral.hpp"

#include "dmax/errors.hpp"
#include "fft.hpp"

#include <cmath>
#include <iostream>
#include <numbers>
#include <utility>

namespace dmax {

bool Sector::contains(double xi1, double xi2) const noexcept {
    if (xi2 == 0.0) return xi1 == 0.0;
    const double sigma = -xi1 / xi2;
    return lo <= sigma && sigma <= hi;
}

Sector sector_of(const SlopeInterval& j) { return Sector{j.lo, j.hi, false, false}; }

Sector sector_double(const SlopeInterval& j, SectorChart chart) {
    Sector s;
    s.doubled = true;
    if (chart == SectorChart::slope) {
        const double half = 0.5 * j.length();
        s.lo = j.lo - half;
        s.hi = j.hi + half;
    } else {
        const double a = std::atan(j.lo);
        const double b = std::atan(j.hi);
        const double mid = 0.5 * (a + b);
        const double w = b - a;
        s.lo = std::tan(mid - w);
        s.hi = std::tan(mid + w);
    }
    s.exits_chart = !(s.lo > 0.0 && s.hi < 1.0);
    return s;
}

double frequency(std::size_t k, std::size_t n, double length) noexcept {
    const auto signed_k = k <= n / 2 ? static_cast<double>(k)
                                     : static_cast<double>(k) - static_cast<double>(n);
    return 2.0 * std::numbers::pi * signed_k / length;
}

struct Spectrum::Impl {
    detail::ComplexBuffer coeffs;
    std::vector<double> xi;
};

Spectrum::Spectrum(const GridFunction& f) : n_(f.n()), length_(f.length()), impl_(new Impl) {
    impl_->coeffs = detail::make_buffer(n_ * n_);
    const auto samples = f.samples();
    for (std::size_t i = 0; i < samples.size(); ++i) impl_->coeffs[i] = samples[i];
    detail::fft2(impl_->coeffs.get(), n_, true);
    impl_->xi.resize(n_);
    for (std::size_t k = 0; k < n_; ++k) impl_->xi[k] = frequency(k, n_, length_);
}

Spectrum::~Spectrum() = default;
Spectrum::Spectrum(Spectrum&&) noexcept = default;
Spectrum& Spectrum::operator=(Spectrum&&) noexcept = default;

namespace {

// Index of the pair {k, -k mod n} at which symbols are evaluated. Differs
// from k only on the Nyquist lines.
std::pair<std::size_t, std::size_t> pair_representative(std::size_t k1, std::size_t k2, std::size_t n) {
    const std::size_t m1 = (n - k1) % n;
    const std::size_t m2 = (n - k2) % n;
    return std::pair{k1, k2} <= std::pair{m1, m2} ? std::pair{k1, k2} : std::pair{m1, m2};
}

}  // namespace

GridFunction Spectrum::apply(const std::function<double(double, double)>& symbol) const {
    auto work = detail::make_buffer(n_ * n_);
    const auto& xi = impl_->xi;
    for (std::size_t k1 = 0; k1 < n_; ++k1) {
        for (std::size_t k2 = 0; k2 < n_; ++k2) {
            const std::size_t idx = k1 * n_ + k2;
            const auto [j1, j2] = pair_representative(k1, k2, n_);
            const double s = symbol(xi[j1], xi[j2]);
            work[idx] = s == 0.0 ? std::complex<double>() : s * impl_->coeffs[idx];
        }
    }
    detail::fft2(work.get(), n_, false);
    const double scale = 1.0 / static_cast<double>(n_ * n_);
    std::vector<double> out(n_ * n_);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = work[i].real() * scale;
    return GridFunction(n_, length_, std::move(out));
}

double Spectrum::energy(const std::function<double(double, double)>& weight) const {
    const auto& xi = impl_->xi;
    std::vector<double> terms(n_ * n_);
    for (std::size_t k1 = 0; k1 < n_; ++k1) {
        for (std::size_t k2 = 0; k2 < n_; ++k2) {
            const std::size_t idx = k1 * n_ + k2;
            const auto [j1, j2] = pair_representative(k1, k2, n_);
            terms[idx] = weight(xi[j1], xi[j2]) * std::norm(impl_->coeffs[idx]);
        }
    }
    const double h = length_ / static_cast<double>(n_);
    return pairwise_sum(terms) / static_cast<double>(n_ * n_) * h * h;
}

std::function<double(double, double)> gamma_symbol(const SymbolProfile& band, double h, double alpha) {
    return [band, h, alpha](double xi1, double xi2) {
        const double b = band(xi2);
        return b == 0.0 ? 0.0 : b * window_phi_hat(h, xi1 + alpha * xi2);
    };
}

GridFunction gamma_apply(const Spectrum& f, const KernelParams& p) {
    p.validate();
    const double nyquist = std::numbers::pi * static_cast<double>(f.n()) / f.length();
    KernelParams q = p;
    if (q.R > nyquist) {
        std::cerr << "dmax: warning: R = " << q.R << " exceeds the grid Nyquist frequency "
                  << nyquist << "; clipped\n";
        q.R = nyquist;
        if (!(q.r < 0.5 * q.R)) throw DomainError("r is too large for this grid after clipping R");
    }
    return f.apply(gamma_symbol(psi_hat(q.r, q.R), q.h, q.alpha));
}

GridFunction gamma_apply(const GridFunction& f, const KernelParams& p) {
    return gamma_apply(Spectrum(f), p);
}

GridFunction band_apply(const Spectrum& f, const SymbolProfile& band, double h, double alpha) {
    if (!(h > 0.0)) throw DomainError("window width h must be positive");
    return f.apply(gamma_symbol(band, h, alpha));
}

GridFunction sector_project(const Spectrum& f, const Sector& s) {
    if (!(s.lo < s.hi)) throw DomainError("degenerate sector");
    return f.apply([s](double xi1, double xi2) { return s.contains(xi1, xi2) ? 1.0 : 0.0; });
}

GridFunction sector_project(const GridFunction& f, const Sector& s) {
    return sector_project(Spectrum(f), s);
}

GridFunction sector_complement_project(const GridFunction& f, const Sector& s) {
    if (!(s.lo < s.hi)) throw DomainError("degenerate sector");
    return Spectrum(f).apply([s](double xi1, double xi2) { return s.contains(xi1, xi2) ? 0.0 : 1.0; });
}

}  // namespace dmax
