#include "dmax/verify.hpp"

#include "dmax/errors.hpp"
#include "random.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace dmax {

namespace {

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

double gap_distance(const SlopeInterval& outer, const SlopeInterval& inner) {
    return std::min(inner.lo - outer.lo, outer.hi - inner.hi);
}

// The gap [p, q] of `level` with p < theta < q, if any.
std::optional<SlopeInterval> gap_around(const std::vector<double>& level, double theta) {
    auto it = std::upper_bound(level.begin(), level.end(), theta);
    if (it == level.begin() || it == level.end()) return std::nullopt;
    return SlopeInterval(*(it - 1), *it);
}

// The trapezoid band profile written out piecewise, independent of SymbolProfile.
double psi_hat_closed(double r, double R, double xi) {
    const double a = std::abs(xi);
    double up = 1.0;
    if (r > 0.0) {
        if (a <= r) up = 0.0;
        else if (a < 2.0 * r) up = (a - r) / r;
    }
    if (a <= R) return up;
    if (a < 2.0 * R) return std::min(up, (2.0 * R - a) / R);
    return 0.0;
}

}  // namespace

void validate_chain(const IntervalChain& chain) {
    if (chain.intervals.empty()) throw ChainError(1, "interval chain is empty");
    for (std::size_t k = 0; k < chain.size(); ++k) {
        const auto& j = chain.intervals[k];
        if (!(j.lo > 0.0 && j.lo < j.hi && j.hi < 1.0)) {
            throw ChainError(k + 1, "J_" + std::to_string(k + 1) + " is not a subinterval of (0,1)");
        }
        if (!j.contains(chain.theta)) {
            throw ChainError(k + 1, "theta = " + fmt(chain.theta) + " is not in J_" + std::to_string(k + 1));
        }
        if (k == 0) continue;
        const auto& outer = chain.intervals[k - 1];
        if (j.lo < outer.lo || j.hi > outer.hi) {
            throw ChainError(k + 1, "J_" + std::to_string(k + 1) + " is not nested in J_" + std::to_string(k));
        }
        const double dist = gap_distance(outer, j);
        if (!(dist <= j.length())) {
            throw ChainError(k + 1, "dist(J_" + std::to_string(k) + "^c, J_" + std::to_string(k + 1) +
                                        ") = " + fmt(dist) + " exceeds |J_" + std::to_string(k + 1) +
                                        "| = " + fmt(j.length()));
        }
    }
}

IntervalChain build_chain(const LacunaryCertificate& cert, double theta) {
    if (cert.chain.empty()) throw StructuralError("certificate has no levels");
    const auto& top = cert.chain.back();
    if (!std::binary_search(top.begin(), top.end(), theta)) {
        throw DomainError("theta = " + fmt(theta) + " is not in the certified set");
    }
    std::size_t m = 0;
    while (!std::binary_search(cert.chain[m].begin(), cert.chain[m].end(), theta)) ++m;

    IntervalChain chain;
    chain.theta = theta;
    for (std::size_t level = 0; level < m; ++level) {
        auto gap = gap_around(cert.chain[level], theta);
        if (!gap) throw ChainError(level + 1, "no gap of level " + std::to_string(level + 1) + " contains theta");
        chain.intervals.push_back(*gap);
    }

    const auto& last = cert.chain[m];
    const auto it = std::lower_bound(last.begin(), last.end(), theta);
    std::optional<SlopeInterval> left;
    std::optional<SlopeInterval> right;
    if (it != last.begin()) left = SlopeInterval(*(it - 1), theta);
    if (it + 1 != last.end()) right = SlopeInterval(theta, *(it + 1));
    if (!left && !right) throw DomainError("a single-point set has no gap intervals");

    auto fits = [&](const SlopeInterval& j) {
        if (chain.intervals.empty()) return true;
        const auto& outer = chain.intervals.back();
        return j.lo >= outer.lo && j.hi <= outer.hi && gap_distance(outer, j) <= j.length();
    };
    if (left && (fits(*left) || !right)) chain.intervals.push_back(*left);
    else if (right && fits(*right)) chain.intervals.push_back(*right);
    else chain.intervals.push_back(left ? *left : *right);

    validate_chain(chain);
    return chain;
}

bool all_passed(const std::vector<Gate>& gates) noexcept {
    return std::all_of(gates.begin(), gates.end(), [](const Gate& g) { return g.passed; });
}

std::vector<Gate> check_kernels() {
    std::vector<Gate> gates;
    auto add = [&](std::string name, double value, double limit) {
        gates.push_back({std::move(name), value, limit, value <= limit});
    };

    {
        double worst = 0.0;
        const std::pair<double, double> radii[] = {{0.0, 1.0}, {1.0, 4.0}, {0.3, 5.0}, {2.0, 4.5}};
        for (const auto& [r, R] : radii) {
            const auto profile = psi_hat(r, R);
            for (int i = 0; i <= 10000; ++i) {
                const double xi = -2.5 * R + 5.0 * R * i / 10000.0;
                worst = std::max(worst, std::abs(profile(xi) - psi_hat_closed(r, R, xi)));
                worst = std::max(worst, std::abs(profile(xi) - (psi_single_hat(R, xi) - psi_single_hat(r, xi))));
            }
        }
        add("psi_hat profile", worst, 1e-12);
        const auto p = psi_hat(1.0, 4.0);
        add("psi_hat(1,4) at 3, 0.5, 1.5",
            std::max({std::abs(p(3.0) - 1.0), std::abs(p(0.5)), std::abs(p(1.5) - 0.5)}), 0.0);
    }

    {
        // Truncated Riemann sum of psi_{1,4}(x) cos(x xi) over [-X, X].
        const double dx = 0.05;
        const long half = 60000;
        std::vector<double> samples(static_cast<std::size_t>(half) + 1);
        for (long j = 0; j <= half; ++j) samples[static_cast<std::size_t>(j)] = psi(1.0, 4.0, dx * static_cast<double>(j));
        const auto profile = psi_hat(1.0, 4.0);
        double worst = 0.0;
        for (int i = 0; i <= 100; ++i) {
            const double xi = 0.1 * i;
            double s = samples[0];
            for (long j = 1; j <= half; ++j) s += 2.0 * samples[static_cast<std::size_t>(j)] * std::cos(xi * dx * static_cast<double>(j));
            worst = std::max(worst, std::abs(s * dx / (2.0 * std::numbers::pi) - profile(xi)));
        }
        add("psi_{1,4} spatial DFT vs profile", worst, 2e-3);
    }

    {
        using boost::math::quadrature::gauss_kronrod;
        double worst = 0.0;
        const std::pair<double, double> points[] = {{1.0, 0.7}, {2.0, 0.0}, {0.5, 3.1}, {3.0, -1.3}, {1.0, 2.0 * std::numbers::pi}};
        for (const auto& [r, x] : points) {
            auto integrand = [r, x](double t) { return (1.0 - std::abs(t) / r) * std::cos(t * x); };
            const double q = 2.0 * gauss_kronrod<double, 61>::integrate(integrand, 0.0, r, 15, 1e-14);
            worst = std::max(worst, std::abs(q - fejer(r, x)));
        }
        add("fejer vs quadrature", worst, 1e-10);
        add("fejer(2,0) = 2", std::abs(fejer(2.0, 0.0) - 2.0), 0.0);
        add("fejer(1,2pi) = 0", std::abs(fejer(1.0, 2.0 * std::numbers::pi)), 1e-15);

        // Unit mass of the window: quadrature over periods of sin^4(x/4),
        // plus the averaged x^-4 tail.
        const double period = 4.0 * std::numbers::pi;
        const int periods = 400;
        double mass = 0.0;
        for (int k = 0; k < periods; ++k) {
            mass += gauss_kronrod<double, 61>::integrate([](double x) { return window_phi(1.0, x); },
                                                         k * period, (k + 1) * period, 10, 1e-15);
        }
        const double x_end = periods * period;
        mass += (96.0 / std::numbers::pi) * 0.375 / (3.0 * x_end * x_end * x_end);
        add("window mass", std::abs(2.0 * mass - 1.0), 1e-8);
        add("window phi(0)", std::abs(window_phi(1.0, 0.0) - 3.0 / (8.0 * std::numbers::pi)), 1e-15);
    }

    {
        double negatives = 0.0;
        double asym = 0.0;
        double lam = 0.0;
        for (int i = 0; i <= 20000; ++i) {
            const double x = -200.0 + 0.02 * i;
            negatives = std::max({negatives, -fejer(1.3, x), -window_phi(0.7, x)});
            asym = std::max(asym, std::abs(psi(0.5, 3.0, x) - psi(0.5, 3.0, -x)));
            const double phi = window_phi(1.0, x);
            lam = std::max(lam, std::max(phi, std::abs(x * phi)) / lambda_majorant(x));
        }
        add("fejer and window nonnegative", negatives, 0.0);
        add("psi even", asym, 0.0);
        add("lambda majorizes phi and |x phi|", lam, 1.0);
    }

    {
        const auto z = zeta_majorant(1.0, 8.0);
        double total = 0.0;
        bool nested = z.half_width.front() >= 1.0 / 8.0;
        for (std::size_t k = 0; k < z.gamma.size(); ++k) {
            total += z.gamma[k];
            if (k > 0 && !(z.half_width[k] > z.half_width[k - 1])) nested = false;
        }
        add("zeta weights sum to 1/2", std::abs(total - 0.5), 1e-15);
        add("zeta intervals nested, contain (-1/R,1/R)", nested ? 0.0 : 1.0, 0.0);
        add("zeta constant (1,8)", zeta_constant(1.0, 8.0), pinned::kZetaConstant * pinned::kPinSlack);
    }

    {
        const double lengths[] = {1.0, 0.5, 0.25};
        const auto cut = cut_radii(1.0, lengths, 16.0);
        const bool ok = cut.r == std::vector<double>{0.0, 2.0, 4.0, 8.0} && cut.m == 3;
        add("cut radii example", ok ? 0.0 : 1.0, 0.0);
    }
    return gates;
}

Lemma1Result check_lemma1(const GridFunction& f, const KernelParams& p, double beta,
                          std::span<const Scale> scales) {
    p.validate();
    const GridFunction gamma = gamma_apply(f, p);
    const GridFunction pb = parallelogram_max(f, beta, scales);
    const double factor = p.h * p.R * std::abs(p.alpha - beta) + 1.0;
    const double floor = 1e-9 * f.max_abs();
    Lemma1Result out;
    bool any = false;
    const std::size_t n = f.n();
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const double den = pb(i1, i2);
            if (!(den > floor)) continue;
            any = true;
            const double ratio = std::abs(gamma(i1, i2)) / (factor * den);
            if (ratio > out.max_ratio) out = {ratio, i1, i2};
        }
    }
    if (!any) throw DomainError("lemma 1 check: P_beta f vanishes everywhere");
    return out;
}

std::vector<Lemma1Instance> lemma1_suite(std::uint64_t seed, std::size_t count, std::size_t n) {
    detail::Rng rng(seed);
    std::vector<Lemma1Instance> suite;
    suite.reserve(count);
    const double nyquist = std::numbers::pi;  // side n, unit spacing
    for (std::size_t i = 0; i < count; ++i) {
        GridFunction f(n, static_cast<double>(n));
        switch (i % 3) {
            case 0:
                for (double& v : f.samples()) v = rng.unit();
                break;
            case 1:
                for (int j = 0; j < 24; ++j) f(rng.below(n), rng.below(n)) = rng.uniform(0.1, 1.0);
                break;
            default:
                for (int j = 0; j < 5; ++j) {
                    const std::size_t c1 = rng.below(n), c2 = rng.below(n);
                    const std::size_t w1 = 1 + rng.below(n / 8), w2 = 1 + rng.below(n / 8);
                    const double v = rng.uniform(0.2, 1.0);
                    for (std::size_t a = 0; a < w1; ++a) {
                        for (std::size_t b = 0; b < w2; ++b) f((c1 + a) % n, (c2 + b) % n) += v;
                    }
                }
                break;
        }
        KernelParams p;
        p.R = rng.uniform(0.4, 0.9 * nyquist);
        p.r = rng.unit() < 0.5 ? 0.0 : rng.uniform(0.0, 0.45 * p.R);
        p.h = rng.uniform(1.0, 12.0);
        p.alpha = rng.uniform(0.05, 0.95);
        const double w = std::min(0.9, 4.0 / (p.h * p.R));
        const double beta = std::clamp(p.alpha + rng.uniform(-w, w), 0.01, 0.99);
        suite.push_back({std::move(f), p, beta});
    }
    return suite;
}

double lemma2_scalar(const IntervalChain& chain, double h) {
    double worst = 0.0;
    for (std::size_t k = 0; k + 1 < chain.size(); ++k) {
        const auto& jk = chain.intervals[k];
        const double r_next = 2.0 / (h * chain.intervals[k + 1].length());
        const double d = std::min(std::abs(chain.theta - jk.lo), std::abs(chain.theta - jk.hi));
        worst = std::max(worst, h * r_next * d);
    }
    return worst;
}

namespace {

struct Split {
    CutRadii cut;
    std::vector<SymbolProfile> pieces;
};

Split split_for(const IntervalChain& chain, double R, double h) {
    std::vector<double> lengths;
    for (const auto& j : chain.intervals) lengths.push_back(j.length());
    Split s{cut_radii(h, lengths, R), {}};
    s.pieces = split_psi_hat(s.cut, R);
    return s;
}

}  // namespace

std::size_t lemma2_support(const IntervalChain& chain, double R, double h, std::size_t n, double length) {
    const Split split = split_for(chain, R, h);
    std::vector<double> xi(n);
    for (std::size_t k = 0; k < n; ++k) xi[k] = frequency(k, n, length);
    std::size_t violations = 0;
    for (std::size_t k = 1; k < split.pieces.size(); ++k) {
        const auto symbol = gamma_symbol(split.pieces[k], h, chain.theta);
        const Sector doubled = sector_double(chain.intervals[k - 1]);
        for (double x1 : xi) {
            for (double x2 : xi) {
                if (symbol(x1, x2) != 0.0 && !doubled.contains(x1, x2)) ++violations;
            }
        }
    }
    return violations;
}

double lemma2_telescoping(const Spectrum& f, const IntervalChain& chain, double R, double h) {
    const Split split = split_for(chain, R, h);
    KernelParams whole{0.0, R, h, chain.theta};
    const GridFunction reference = gamma_apply(f, whole);
    std::vector<double> sum(f.n() * f.n(), 0.0);
    for (const auto& piece : split.pieces) {
        const GridFunction g = band_apply(f, piece, h, chain.theta);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += g.samples()[i];
    }
    return relative_l2(GridFunction(f.n(), f.length(), std::move(sum)), reference);
}

Lemma2Report check_lemma2(const GridFunction& f, const IntervalChain& chain, double R, double h,
                          std::span<const Scale> scales) {
    validate_chain(chain);
    if (!(R > 0.0) || !(h > 0.0)) throw DomainError("lemma 2 check needs R > 0 and h > 0");
    const Spectrum spec(f);
    const Split split = split_for(chain, R, h);
    const std::size_t m = split.pieces.size() - 1;

    Lemma2Report rep;
    rep.pieces = split.pieces.size();
    rep.telescoping_error = lemma2_telescoping(spec, chain, R, h);
    if (!(rep.telescoping_error <= 1e-10)) {
        throw VerificationError("telescoping identity off by " + fmt(rep.telescoping_error));
    }
    rep.support_violations = lemma2_support(chain, R, h, f.n(), f.length());
    if (rep.support_violations != 0) {
        throw VerificationError(std::to_string(rep.support_violations) +
                                " frequencies of split pieces fall outside their doubled sectors");
    }
    rep.scalar_max = lemma2_scalar(chain, h);
    if (!(rep.scalar_max <= 4.0 * (1.0 + 4.0 * std::numeric_limits<double>::epsilon()))) {
        throw VerificationError("h r_{k+1} min|theta - endpoint| = " + fmt(rep.scalar_max) + " exceeds 4");
    }

    const GridFunction lhs = gamma_apply(spec, KernelParams{0.0, R, h, chain.theta});
    GridFunction rhs = strong_max(f, scales);
    auto accumulate = [&](const GridFunction& g) {
        for (std::size_t i = 0; i < g.samples().size(); ++i) rhs.samples()[i] += g.samples()[i];
    };
    for (std::size_t k = 1; k <= m; ++k) {
        const GridFunction projected = sector_project(spec, sector_double(chain.intervals[k - 1]));
        const ShearedAverager engine(projected, scales);
        if (k < m) {
            accumulate(engine.evaluate(chain.intervals[k - 1].lo));
            accumulate(engine.evaluate(chain.intervals[k - 1].hi));
        } else {
            accumulate(engine.evaluate(chain.theta));
        }
    }
    const double floor = 1e-9 * f.max_abs();
    for (std::size_t i1 = 0; i1 < f.n(); ++i1) {
        for (std::size_t i2 = 0; i2 < f.n(); ++i2) {
            if (!(rhs(i1, i2) > floor)) continue;
            const double ratio = std::abs(lhs(i1, i2)) / rhs(i1, i2);
            if (ratio > rep.constant) {
                rep.constant = ratio;
                rep.i1 = i1;
                rep.i2 = i2;
            }
        }
    }
    return rep;
}

SlopeSet random_lacunary_set(std::uint64_t seed) {
    detail::Rng rng(seed);
    if (seed % 2 == 0) {
        LacunaryRecipe recipe = LacunaryRecipe::geometric(rng.uniform(0.34, 0.49), 2 + rng.below(5),
                                                          rng.uniform(0.5, 0.98));
        const std::size_t levels = rng.below(4);
        for (std::size_t k = 0; k < levels; ++k) {
            GapRule rule{rng.uniform(0.34, 0.49), 1 + rng.below(3), rng.below(2) ? GapEnd::right : GapEnd::left};
            recipe.levels.push_back(InsertionLevel{rule, {}});
        }
        return build_n_lacunary(recipe);
    }
    const std::size_t count = 2 + rng.below(63);
    std::vector<double> slopes;
    while (slopes.size() < count) {
        const double s = rng.uniform(0.001, 0.999);
        if (std::find(slopes.begin(), slopes.end(), s) == slopes.end()) slopes.push_back(s);
    }
    return with_log_certificate(SlopeSet(std::move(slopes)));
}

IntervalChain random_chain(const SlopeSet& set, std::uint64_t seed) {
    if (!set.certificate()) throw StructuralError("set has no certificate");
    const auto& chain = set.certificate()->chain;
    std::vector<double> fresh;
    const auto& top = chain.back();
    const std::vector<double> prev = chain.size() > 1 ? chain[chain.size() - 2] : std::vector<double>{};
    for (double s : top) {
        if (!std::binary_search(prev.begin(), prev.end(), s)) fresh.push_back(s);
    }
    if (fresh.empty()) fresh = top;
    detail::Rng rng(seed);
    return build_chain(*set.certificate(), fresh[rng.below(fresh.size())]);
}

std::vector<Lemma2Case> lemma2_suite(std::uint64_t seed, std::size_t count, std::size_t n) {
    detail::Rng rng(seed);
    std::vector<Lemma2Case> out;
    for (std::uint64_t attempt = 0; out.size() < count; ++attempt) {
        const SlopeSet set = random_lacunary_set(seed * 7919 + attempt);
        const IntervalChain chain = random_chain(set, seed + attempt);
        if (chain.intervals.back().length() < 0.05) continue;
        Lemma2Case c;
        c.chain = chain;
        c.R = rng.uniform(2.0, 8.0);
        c.h = 4.0 / (c.R * chain.intervals.back().length());
        const double side = std::numbers::pi * static_cast<double>(n) / (1.5 * c.R);
        c.f = GridFunction(n, side);
        if (out.size() % 2 == 0) {
            for (double& v : c.f.samples()) v = rng.unit();
        } else {
            for (int j = 0; j < 6; ++j) {
                const std::size_t c1 = rng.below(n), c2 = rng.below(n);
                const std::size_t w = 1 + rng.below(n / 8);
                for (std::size_t a = 0; a < w; ++a) {
                    for (std::size_t b = 0; b < w; ++b) c.f((c1 + a) % n, (c2 + b) % n) += 1.0;
                }
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

std::vector<std::size_t> check_sector_overlap(const LacunaryCertificate& cert, SectorChart chart) {
    std::vector<std::size_t> out;
    for (const auto& level : cert.chain) {
        std::vector<std::pair<double, double>> spans;
        for (std::size_t i = 0; i + 1 < level.size(); ++i) {
            const Sector s = sector_double(SlopeInterval(level[i], level[i + 1]), chart);
            spans.emplace_back(s.lo, s.hi);
        }
        std::vector<double> cuts;
        for (const auto& [lo, hi] : spans) {
            cuts.push_back(lo);
            cuts.push_back(hi);
        }
        std::sort(cuts.begin(), cuts.end());
        std::size_t best = 0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            // Cells narrower than this are rounding slivers between abutting ends.
            if (cuts[i + 1] - cuts[i] <= 1e-9) continue;
            const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
            std::size_t count = 0;
            for (const auto& [lo, hi] : spans) count += (lo < mid && mid < hi) ? 1 : 0;
            best = std::max(best, count);
        }
        out.push_back(best);
    }
    return out;
}

}  // namespace dmax
