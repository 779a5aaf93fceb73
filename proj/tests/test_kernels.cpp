#include "doctest.h"

#include "dmax/errors.hpp"
#include "dmax/kernels.hpp"

#include <cmath>
#include <numbers>
#include <vector>

using namespace dmax;
using std::numbers::pi;

namespace {

template <class F>
double simpson(F f, double a, double b, int panels) {
    const double step = (b - a) / panels;
    double s = f(a) + f(b);
    for (int i = 1; i < panels; ++i) s += f(a + i * step) * (i % 2 ? 4.0 : 2.0);
    return s * step / 3.0;
}

double fejer_by_quadrature(double r, double x) {
    return simpson([&](double t) { return (1.0 - std::abs(t) / r) * std::cos(t * x); }, -r, r, 4000);
}

double trapezoid_profile(double r, double R, double xi) {
    const double a = std::abs(xi);
    const auto ramp = [](double t) { return std::clamp(t, 0.0, 1.0); };
    const double up = r == 0.0 ? 1.0 : ramp((a - r) / r);
    const double down = ramp((2.0 * R - a) / R);
    return std::min(up, down);
}

// Centered cubic B-spline.
double m4(double x) {
    const double a = std::abs(x);
    if (a >= 2.0) return 0.0;
    if (a >= 1.0) return (2.0 - a) * (2.0 - a) * (2.0 - a) / 6.0;
    return 2.0 / 3.0 - a * a + 0.5 * a * a * a;
}

}  // namespace

TEST_CASE("fejer against its defining integral") {
    for (double r : {0.5, 1.0, 3.0}) {
        for (double x : {0.0, 0.1, 1.0, 2.5, 7.0, 31.0}) {
            CHECK(fejer(r, x) == doctest::Approx(fejer_by_quadrature(r, x)).epsilon(1e-10));
        }
    }
    CHECK(fejer(2.0, 0.0) == doctest::Approx(2.0));
}

TEST_CASE("psi_hat breakpoints and values") {
    const auto p = psi_hat(1.0, 4.0);
    REQUIRE(p.breakpoints().size() == 5);
    CHECK(p.support_radius() == 8.0);
    for (double xi = -9.0; xi <= 9.0; xi += 0.01) {
        CHECK(p(xi) == doctest::Approx(trapezoid_profile(1.0, 4.0, xi)).epsilon(1e-14));
    }
    const auto q = psi_hat(0.0, 3.0);
    CHECK(q(0.0) == 1.0);
    CHECK(q(3.0) == 1.0);
    CHECK(q(4.5) == doctest::Approx(0.5));
    CHECK(q(6.0) == 0.0);
    CHECK(psi_single_hat(2.0, 1.0) == 1.0);
    CHECK(psi_single_hat(2.0, 3.0) == doctest::Approx(0.5));
    CHECK(psi_single_hat(2.0, 5.0) == 0.0);
    CHECK_THROWS_AS(psi_hat(2.0, 3.0), DomainError);
}

TEST_CASE("psi is the Fejer combination") {
    for (double x : {0.0, 0.3, 2.0, 11.0}) {
        const double expected = (2 * fejer(8.0, x) - fejer(4.0, x)) - (2 * fejer(2.0, x) - fejer(1.0, x));
        CHECK(psi(1.0, 4.0, x) == doctest::Approx(expected).epsilon(1e-13));
        CHECK(psi(0.0, 4.0, x) == doctest::Approx(psi_single(4.0, x)).epsilon(1e-13));
    }
}

TEST_CASE("window mass, peak and transform") {
    const double mass = simpson([](double x) { return window_phi(1.0, x); }, -4000.0, 4000.0, 800000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-8));
    CHECK(window_phi(1.0, 0.0) == doctest::Approx(96.0 / pi / 256.0));
    CHECK(window_phi(2.0, 3.0) == doctest::Approx(0.5 * window_phi(1.0, 1.5)));
    for (double xi : {0.0, 0.2, 0.45, 0.7, 1.0, 1.3}) {
        CHECK(window_phi_hat(1.0, xi) == doctest::Approx(1.5 * m4(2.0 * xi)).epsilon(1e-14));
    }
    for (double xi : {0.0, 0.25, 0.6}) {
        const double direct = simpson([&](double x) { return window_phi(1.0, x) * std::cos(x * xi); }, -2000.0, 2000.0,
                                      400000);
        CHECK(window_phi_hat(1.0, xi) == doctest::Approx(direct).epsilon(1e-6));
    }
    CHECK(window_phi_hat(2.0)(0.5) == 0.0);
    CHECK(window_phi_hat(2.0).support_radius() == 0.5);
}

TEST_CASE("lambda majorant dominates") {
    for (double x = -200.0; x <= 200.0; x += 0.05) {
        const double phi = window_phi(1.0, x);
        CHECK(lambda_majorant(x) >= std::max(phi, std::abs(x) * phi));
    }
}

TEST_CASE("cut radii") {
    const std::vector<double> lengths{0.5, 0.1, 0.01};
    const auto cut = cut_radii(1.0, lengths, 15.0);
    REQUIRE(cut.r.size() == 4);
    CHECK(cut.r[0] == 0.0);
    CHECK(cut.r[1] == doctest::Approx(4.0));
    CHECK(cut.r[2] == doctest::Approx(20.0));
    CHECK(cut.r[3] == doctest::Approx(200.0));
    CHECK(cut.m == 2);
    CHECK(split_count(cut, 15.0) == 1);

    const auto none = cut_radii(1.0, std::vector<double>{0.01}, 15.0);
    CHECK(none.m == 0);
}

TEST_CASE("telescoping pieces sum to the unsplit symbol") {
    const std::vector<double> lengths{0.6, 0.2, 0.05, 0.02};
    for (double R : {3.0, 9.0, 40.0, 150.0}) {
        const auto cut = cut_radii(0.8, lengths, R);
        const auto pieces = split_psi_hat(cut, R);
        CHECK(pieces.size() == split_count(cut, R) + 1);
        const auto whole = psi_hat(0.0, R);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double xi = 2.5 * R * i / 10000.0;
            double sum = 0.0;
            for (const auto& p : pieces) sum += p(xi);
            worst = std::max(worst, std::abs(sum - whole(xi)));
        }
        CHECK(worst <= 1e-14);
    }
}

TEST_CASE("zeta majorant") {
    const auto z = zeta_majorant(1.0, 8.0);
    double total = 0.0;
    for (double g : z.gamma) total += g;
    CHECK(total == doctest::Approx(0.5));
    const double c = zeta_constant(1.0, 8.0);
    CHECK(std::isfinite(c));
    CHECK(c > 0.0);
}
