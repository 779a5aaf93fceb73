#include "dmax/kernels.hpp"

#include "dmax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dmax {

namespace {

// (sin u / u)^2 with the removable singularity patched.
double sinc_sq(double u) {
    if (std::abs(u) < 1e-4) return 1.0 - u * u / 3.0;
    const double s = std::sin(u) / u;
    return s * s;
}

// Centered cubic B-spline, support [-2, 2].
double bspline4(double t) {
    t = std::abs(t);
    if (t <= 1.0) return 2.0 / 3.0 - t * t + 0.5 * t * t * t;
    if (t < 2.0) {
        const double u = 2.0 - t;
        return u * u * u / 6.0;
    }
    return 0.0;
}

}  // namespace

void KernelParams::validate() const {
    if (!(r >= 0.0 && r < 0.5 * R)) throw DomainError("kernel radii must satisfy 0 <= r < R/2");
    if (!(h > 0.0)) throw DomainError("window width h must be positive");
    if (!(std::abs(alpha) <= 1.0)) throw DomainError("slope alpha must satisfy |alpha| <= 1");
}

SymbolProfile::SymbolProfile(std::vector<std::pair<double, double>> breakpoints)
    : points_(std::move(breakpoints)) {
    for (std::size_t i = 0; i < points_.size(); ++i) {
        if (points_[i].first < 0.0 || (i > 0 && !(points_[i].first > points_[i - 1].first))) {
            throw StructuralError("symbol breakpoints must be nonnegative and strictly increasing");
        }
    }
}

double SymbolProfile::operator()(double xi) const noexcept {
    const double a = std::abs(xi);
    if (points_.empty() || a > points_.back().first) return 0.0;
    auto it = std::upper_bound(points_.begin(), points_.end(), a,
                               [](double v, const auto& p) { return v < p.first; });
    if (it == points_.begin()) return points_.front().second;
    if (it == points_.end()) return points_.back().second;
    const auto& [x0, y0] = *(it - 1);
    const auto& [x1, y1] = *it;
    return y0 + (y1 - y0) * (a - x0) / (x1 - x0);
}

double fejer(double r, double x) {
    if (!(r > 0.0)) throw DomainError("Fejer radius must be positive");
    return r * sinc_sq(0.5 * r * x);
}

double psi_single(double r, double x) {
    if (r == 0.0) return 0.0;
    return 2.0 * fejer(2.0 * r, x) - fejer(r, x);
}

double psi(double r, double R, double x) {
    if (!(r >= 0.0 && r < 0.5 * R)) throw DomainError("psi requires 0 <= r < R/2");
    return psi_single(R, x) - psi_single(r, x);
}

double psi_single_hat(double r, double xi) noexcept {
    if (r <= 0.0) return 0.0;
    return std::clamp(2.0 - std::abs(xi) / r, 0.0, 1.0);
}

SymbolProfile psi_hat(double r, double R) {
    if (!(r >= 0.0 && r < 0.5 * R)) throw DomainError("psi_hat requires 0 <= r < R/2");
    if (r == 0.0) return SymbolProfile({{0.0, 1.0}, {R, 1.0}, {2.0 * R, 0.0}});
    return SymbolProfile({{0.0, 0.0}, {r, 0.0}, {2.0 * r, 1.0}, {R, 1.0}, {2.0 * R, 0.0}});
}

SymbolProfile psi_band_hat(double lo, double hi) {
    if (!(lo >= 0.0 && hi >= lo)) throw DomainError("band radii must satisfy 0 <= lo <= hi");
    if (hi == lo) return SymbolProfile();
    std::vector<double> knots{0.0, lo, 2.0 * lo, hi, 2.0 * hi};
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    std::vector<std::pair<double, double>> pts;
    pts.reserve(knots.size());
    for (double k : knots) pts.emplace_back(k, psi_single_hat(hi, k) - psi_single_hat(lo, k));
    return SymbolProfile(std::move(pts));
}

double window_phi(double h, double x) {
    if (!(h > 0.0)) throw DomainError("window width h must be positive");
    const double s = sinc_sq(0.25 * x / h);
    return 3.0 / (8.0 * std::numbers::pi) * s * s / h;
}

double window_phi_hat(double h, double xi) noexcept { return 1.5 * bspline4(2.0 * h * xi); }

WindowProfile window_phi_hat(double h) {
    if (!(h > 0.0)) throw DomainError("window width h must be positive");
    return WindowProfile{h};
}

double lambda_majorant(double x) noexcept { return kLambdaConstant / (1.0 + x * x); }

double ZetaMajorant::operator()(double x) const noexcept {
    const double a = std::abs(x);
    double sum = 0.0;
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        if (a < half_width[k]) sum += gamma[k] / (2.0 * half_width[k]);
    }
    return sum;
}

ZetaMajorant zeta_majorant(double r, double R, double extent) {
    if (!(r >= 0.0 && r < 0.5 * R)) throw DomainError("zeta majorant requires 0 <= r < R/2");
    if (extent <= 0.0) extent = 64.0 / (r > 0.0 ? r : R);

    ZetaMajorant z;
    for (int k = 0;; ++k) {
        const double w = std::ldexp(1.0, k) / R;
        z.half_width.push_back(w);
        z.gamma.push_back(std::pow(2.0, -0.5 * k));
        if (w > extent) break;
    }
    double total = 0.0;
    for (double g : z.gamma) total += g;
    for (double& g : z.gamma) g *= 0.5 / total;
    return z;
}

double zeta_constant(double r, double R, double extent, std::size_t samples) {
    if (extent <= 0.0) extent = 64.0 / (r > 0.0 ? r : R);
    const auto zeta = zeta_majorant(r, R, extent);
    double worst = 0.0;
    for (std::size_t i = 0; i < samples; ++i) {
        const double x = -extent + 2.0 * extent * static_cast<double>(i) /
                                       static_cast<double>(samples - 1);
        worst = std::max(worst, std::abs(psi(r, R, x)) / zeta(x));
    }
    return worst;
}

CutRadii cut_radii(double h, std::span<const double> lengths, double R) {
    if (!(h > 0.0) || !(R > 0.0)) throw DomainError("cut radii need h > 0 and R > 0");
    CutRadii out;
    out.r.push_back(0.0);
    for (std::size_t k = 0; k < lengths.size(); ++k) {
        if (!(lengths[k] > 0.0) || (k > 0 && lengths[k] > lengths[k - 1])) {
            throw DomainError("interval lengths must be positive and nonincreasing");
        }
        out.r.push_back(2.0 / (h * lengths[k]));
        if (out.r.back() < 2.0 * R) out.m = k + 1;
    }
    return out;
}

std::size_t split_count(const CutRadii& cut, double R) noexcept {
    std::size_t m = 0;
    for (std::size_t k = 1; k <= cut.m && k < cut.r.size(); ++k) {
        if (cut.r[k] <= R) m = k;
    }
    return m;
}

std::vector<SymbolProfile> split_psi_hat(const CutRadii& cut, double R) {
    const std::size_t m = split_count(cut, R);
    std::vector<SymbolProfile> pieces;
    for (std::size_t k = 0; k < m; ++k) pieces.push_back(psi_band_hat(cut.r[k], cut.r[k + 1]));
    pieces.push_back(psi_band_hat(cut.r[m], R));
    return pieces;
}

}  // namespace dmax
