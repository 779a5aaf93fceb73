#include "doctest.h"

#include "dmax/directions.hpp"
#include "dmax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

using namespace dmax;

namespace {

std::vector<double> powers(double q, std::size_t count) {
    std::vector<double> v;
    for (std::size_t k = 1; k <= count; ++k) v.push_back(std::pow(q, static_cast<double>(k)));
    return v;
}

// Plain restatement of the two-sided gap condition, no tolerance.
bool lacunary_oracle(const std::vector<double>& v, double limit) {
    for (std::size_t k = 0; k + 1 < v.size(); ++k) {
        const double gap = std::abs(v[k] - v[k + 1]);
        const double rest = std::abs(v[k + 1] - limit);
        if (!(0.5 * gap < rest && rest < gap)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("geometric runs toward zero") {
    CHECK(is_one_lacunary(powers(0.4, 12), 0.0).ok);

    const auto half = is_one_lacunary(powers(0.5, 12), 0.0);
    CHECK_FALSE(half.ok);
    CHECK(half.k == 1);

    const auto quarter = is_one_lacunary(powers(0.25, 12), 0.0);
    CHECK_FALSE(quarter.ok);
    CHECK(quarter.k == 1);

    CHECK(is_one_lacunary(std::vector<double>{0.7}, 0.0).ok);
}

TEST_CASE("shape and domain errors") {
    CHECK_THROWS_AS(is_one_lacunary(std::vector<double>{0.1, 0.3, 0.2}, 0.0), StructuralError);
    CHECK_THROWS_AS(is_one_lacunary(std::vector<double>{0.4, 0.16}, 0.2), DomainError);
    CHECK_THROWS_AS(SlopeSet(std::vector<double>{0.2, 0.2}), StructuralError);
    CHECK_THROWS(SlopeSet(std::vector<double>{0.0, 0.5}));
    CHECK_THROWS(SlopeSet(std::vector<double>{0.5, 1.0}));
}

TEST_CASE("affine invariance") {
    const auto base = powers(0.4, 10);
    for (double a : {0.01, 0.3}) {
        for (double b : {0.1, 0.5, -0.5}) {
            std::vector<double> moved;
            for (double x : base) moved.push_back(a + b * x);
            CHECK(is_one_lacunary(moved, a).ok);
        }
    }
}

TEST_CASE("a bisected gap breaks the run at that gap") {
    auto v = powers(0.4, 8);
    const double mid = 0.5 * (v[3] + v[4]);
    v.insert(v.begin() + 4, mid);
    const auto check = is_one_lacunary(v, 0.0);
    CHECK_FALSE(check.ok);
    CHECK(check.k >= 3);
    CHECK(check.k <= 5);
}

TEST_CASE("agreement with the plain inequality on random runs") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> ratio(0.2, 0.6);
    for (int t = 0; t < 500; ++t) {
        std::vector<double> v{0.9};
        for (int k = 0; k < 6; ++k) v.push_back(v.back() * ratio(gen));
        const bool oracle = lacunary_oracle(v, 0.0);
        const bool got = is_one_lacunary(v, 0.0, 0.0).ok;
        CHECK(oracle == got);
    }
}

TEST_CASE("fit_limit returns a working limit") {
    const auto v = powers(0.4, 6);
    const auto limit = fit_limit(v);
    REQUIRE(limit.has_value());
    CHECK(is_one_lacunary(v, *limit).ok);

    const auto equal_steps = std::vector<double>{0.1, 0.2, 0.3, 0.4};
    CHECK_FALSE(fit_limit(equal_steps).has_value());
}

TEST_CASE("built families carry valid certificates") {
    std::mt19937_64 gen(11);
    for (int t = 0; t < 50; ++t) {
        auto recipe = LacunaryRecipe::geometric(0.4, 2 + gen() % 4, 0.9);
        const std::size_t levels = gen() % 4;
        for (std::size_t l = 0; l < levels; ++l) {
            InsertionLevel level;
            level.every_gap = GapRule{0.4, 1 + gen() % 2, gen() % 2 ? GapEnd::left : GapEnd::right};
            recipe.levels.push_back(level);
        }
        const SlopeSet set = build_n_lacunary(recipe);
        REQUIRE(set.certificate().has_value());
        CHECK(set.certificate()->order() == levels + 1);
        CHECK(verify_certificate(set, *set.certificate()).valid());
        for (std::size_t l = 0; l + 1 < set.certificate()->order(); ++l) {
            const auto& a = set.certificate()->chain[l];
            const auto& b = set.certificate()->chain[l + 1];
            CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
        }
    }
}

TEST_CASE("verify_certificate reports a corrupted chain") {
    const SlopeSet set = build_n_lacunary(LacunaryRecipe::geometric(0.4, 5, 0.9));
    auto cert = *set.certificate();
    cert.chain[0][2] = 0.5 * (cert.chain[0][1] + cert.chain[0][2]);
    const auto report = verify_certificate(set, cert);
    CHECK_FALSE(report.valid());
    CHECK_FALSE(report.summary().empty());
}

TEST_CASE("certify_log_order bound on random sets") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> unit(0.001, 0.999);
    for (std::size_t size : {2u, 5u, 16u, 40u}) {
        for (int t = 0; t < 200; ++t) {
            std::vector<double> s;
            while (s.size() < size) {
                const double x = unit(gen);
                if (std::find(s.begin(), s.end(), x) == s.end()) s.push_back(x);
            }
            const SlopeSet set(s);
            const auto cert = certify_log_order(set);
            CHECK(verify_certificate(set, cert).valid());
            const double bound = kLogOrderSlope * std::floor(std::log2(static_cast<double>(size))) + kLogOrderOffset;
            CHECK(static_cast<double>(cert.order()) <= bound);
        }
    }
}

TEST_CASE("constructors of common families") {
    const auto eq = equispaced_slopes(64);
    CHECK(eq.size() == 64);
    CHECK(eq.slopes()[0] == doctest::Approx(1.0 / 65.0));
    CHECK(eq.certificate()->order() == 7);

    const auto geo = geometric_slopes(0.4, 6, 0.9);
    CHECK(geo.size() == 6);
    CHECK(geo.certificate()->order() == 1);
    CHECK_THROWS(geometric_slopes(0.5, 4, 0.9));

    const auto gaps = eq.gaps();
    CHECK(gaps.size() == 63);
}
