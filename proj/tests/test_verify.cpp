#include "doctest.h"

#include "dmax/errors.hpp"
#include "dmax/verify.hpp"

#include <cmath>
#include <random>

using namespace dmax;

namespace {

// The distance condition and nesting restated on their own.
bool chain_oracle(const IntervalChain& c) {
    for (std::size_t k = 0; k < c.size(); ++k) {
        const auto& j = c.intervals[k];
        if (!(j.lo < c.theta || j.lo == c.theta) || c.theta > j.hi) return false;
        if (k + 1 == c.size()) break;
        const auto& next = c.intervals[k + 1];
        if (next.lo < j.lo || next.hi > j.hi) return false;
        if (std::min(next.lo - j.lo, j.hi - next.hi) > next.length()) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("validate_chain reports the failing level") {
    IntervalChain good{{SlopeInterval(0.1, 0.9), SlopeInterval(0.1, 0.4), SlopeInterval(0.3, 0.4)}, 0.35};
    CHECK_NOTHROW(validate_chain(good));

    IntervalChain centered{{SlopeInterval(0.1, 0.9), SlopeInterval(0.4, 0.6)}, 0.5};
    try {
        validate_chain(centered);
        FAIL("expected ChainError");
    } catch (const ChainError& e) {
        CHECK(e.level() == 2);
    }

    IntervalChain missing{{SlopeInterval(0.1, 0.9), SlopeInterval(0.1, 0.4)}, 0.7};
    CHECK_THROWS_AS(validate_chain(missing), ChainError);
    CHECK_THROWS_AS(validate_chain(IntervalChain{}), ChainError);
}

TEST_CASE("chains built from certificates are admissible") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const SlopeSet set = random_lacunary_set(seed);
        REQUIRE(set.certificate().has_value());
        for (double theta : set.slopes()) {
            const auto chain = build_chain(*set.certificate(), theta);
            CHECK(chain.theta == theta);
            CHECK(chain_oracle(chain));
        }
    }
    const SlopeSet set = random_lacunary_set(2);
    CHECK_THROWS_AS(build_chain(*set.certificate(), 0.123456789), DomainError);
}

TEST_CASE("scalar ingredient stays below 4") {
    double worst = 0.0;
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
        const auto chain = random_chain(random_lacunary_set(seed), seed);
        const double h = 1.0 / chain.intervals.back().length();
        worst = std::max(worst, lemma2_scalar(chain, h));
    }
    CHECK(worst <= 4.0);
    CHECK(worst > 1.0);
}

TEST_CASE("kernel gates") {
    const auto gates = check_kernels();
    CHECK(gates.size() >= 10);
    for (const auto& g : gates) {
        INFO(g.name, " value ", g.value, " limit ", g.limit);
        CHECK(g.passed);
    }
}

TEST_CASE("lemma 1 ratio is scale invariant") {
    const auto suite = lemma1_suite(1, 3, 64);
    const auto scales = dyadic_scales(64, 32);
    for (const auto& c : suite) {
        GridFunction twice = c.f;
        for (double& v : twice.samples()) v *= 2.0;
        const auto a = check_lemma1(c.f, c.params, c.beta, scales);
        const auto b = check_lemma1(twice, c.params, c.beta, scales);
        CHECK(std::isfinite(a.max_ratio));
        CHECK(std::abs(a.max_ratio - b.max_ratio) <= 1e-12 * a.max_ratio);
    }
}

TEST_CASE("lemma 2 checks on a small suite") {
    const auto cases = lemma2_suite(3, 4, 64);
    const auto scales = dyadic_scales(64, 32);
    for (const auto& c : cases) {
        const auto report = check_lemma2(c.f, c.chain, c.R, c.h, scales);
        CHECK(report.telescoping_error <= 1e-10);
        CHECK(report.support_violations == 0);
        CHECK(report.scalar_max <= 4.0);
        CHECK(report.pieces >= 1);
        CHECK(std::isfinite(report.constant));
    }
}

TEST_CASE("equispaced overlap") {
    const auto levels = check_sector_overlap(*equispaced_slopes(32).certificate());
    REQUIRE_FALSE(levels.empty());
    CHECK(levels.back() == 2);
    for (auto m : levels) CHECK(m <= 3);
}
