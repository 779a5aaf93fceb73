#pragma once

// One-dimensional kernels and their Fourier symbols. Transform convention:
// f_hat(xi) = int f(x) e^{i x xi} dx; every kernel here is even, so the sign
// of the exponent never matters. K_r as defined integrates to 2 pi, so the
// psi symbols below are transforms of psi / (2 pi); the window phi has unit
// mass and phi_hat is its plain transform. Gamma^alpha therefore convolves
// with psi(x_2 - alpha x_1) phi_h(x_1) / (2 pi).

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace dmax {

/// Parameters of the band operator Gamma^alpha_{r,R,h}; r = 0 selects psi_R.
struct KernelParams {
    double r = 0.0;
    double R = 1.0;
    double h = 1.0;
    double alpha = 0.0;

    /// Throws DomainError unless 0 <= r < R/2, h > 0 and |alpha| <= 1.
    void validate() const;
};

/// Even, piecewise-linear function of one frequency, zero beyond the last
/// breakpoint. Breakpoints are (|xi|, value) with strictly increasing |xi|.
class SymbolProfile {
public:
    SymbolProfile() = default;
    explicit SymbolProfile(std::vector<std::pair<double, double>> breakpoints);

    double operator()(double xi) const noexcept;
    const std::vector<std::pair<double, double>>& breakpoints() const noexcept { return points_; }
    double support_radius() const noexcept { return points_.empty() ? 0.0 : points_.back().first; }

private:
    std::vector<std::pair<double, double>> points_;
};

/// Fejer kernel K_r(x) = int_{-r}^{r} (1 - |t|/r) e^{-itx} dt = 4 sin^2(rx/2) / (r x^2).
double fejer(double r, double x);

/// psi_r = 2 K_{2r} - K_r; psi_0 is identically zero.
double psi_single(double r, double x);

/// psi_{r,R} = psi_R - psi_r (r = 0 gives psi_R). Requires 0 <= r < R/2.
double psi(double r, double R, double x);

/// Closed-form transform of psi_r: 1 on [0,r], linear to 0 on [r,2r].
double psi_single_hat(double r, double xi) noexcept;

/// Breakpoints (0,0),(r,0),(2r,1),(R,1),(2R,0); for r = 0: (0,1),(R,1),(2R,0).
SymbolProfile psi_hat(double r, double R);

/// Transform of psi_hi - psi_lo for any 0 <= lo <= hi (no spacing requirement).
/// Used for the telescoping split; equals psi_hat(lo, hi) when hi >= 2 lo.
SymbolProfile psi_band_hat(double lo, double hi);

/// Window phi(x) = (96/pi) sin^4(x/4) / x^4: nonnegative, unit mass, with
/// transform (3/2) M4(2 xi), M4 the centered cubic B-spline, supported in [-1,1].
/// phi_h(x) = phi(x/h)/h.
double window_phi(double h, double x);

/// Transform of phi_h at xi, i.e. phi_hat(h xi).
double window_phi_hat(double h, double xi) noexcept;

/// Smooth cubic symbol of the window; not piecewise linear, hence its own type.
struct WindowProfile {
    double h = 1.0;
    double operator()(double xi) const noexcept { return window_phi_hat(h, xi); }
    double support_radius() const noexcept { return 1.0 / h; }
};

WindowProfile window_phi_hat(double h);

/// Even majorant lambda(x) = C / (1 + x^2) of max{phi(x), |x phi(x)|} (h = 1).
double lambda_majorant(double x) noexcept;
inline constexpr double kLambdaConstant = 5.4;

/// Majorant family zeta_{r,R}(x) = sum_k gamma_k 1_{omega_k}(x) / |omega_k|
/// with omega_k = (-2^k/R, 2^k/R) and gamma_k proportional to 2^{-k/2},
/// normalized to sum 1/2.
struct ZetaMajorant {
    std::vector<double> gamma;
    std::vector<double> half_width;

    double operator()(double x) const noexcept;
};

/// `extent` is the spatial half-range the family must cover; default 64/r
/// (64/R when r = 0).
ZetaMajorant zeta_majorant(double r, double R, double extent = 0.0);

/// Sampled max of |psi_{r,R}| / zeta_{r,R} over a dense grid of [-extent, extent].
double zeta_constant(double r, double R, double extent = 0.0, std::size_t samples = 200001);

struct CutRadii {
    std::vector<double> r;  // r[0] = 0, r[k] = 2 / (h |J_k|)
    std::size_t m = 0;      // max{k : r_k < 2R}, 0 if none
};

/// Cut radii of a nested chain, from interval lengths |J_1| >= ... >= |J_n|.
CutRadii cut_radii(double h, std::span<const double> lengths, double R);

/// Telescoping split of psi_hat_R: pieces psi_band_hat(r_k, r_{k+1}) for
/// k = 0..m_split-1, then psi_band_hat(r_{m_split}, R), where m_split counts
/// the cut radii not exceeding R. The pieces sum to psi_hat(0, R) exactly.
std::vector<SymbolProfile> split_psi_hat(const CutRadii& cut, double R);

/// Number of pieces beyond piece 0 used by split_psi_hat.
std::size_t split_count(const CutRadii& cut, double R) noexcept;

}  // namespace dmax
