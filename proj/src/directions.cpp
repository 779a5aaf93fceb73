#include "dmax/directions.hpp"

#include "dmax/errors.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <sstream>
#include <tuple>

namespace dmax {

namespace {

// One pair of the 1-lacunary condition, with x the earlier and y the later
// element of a run converging to v.
bool pair_ok(double x, double y, double v, double tol) {
    const double gap = std::abs(x - y);
    const double rest = std::abs(y - v);
    return 0.5 * gap < rest * (1.0 - tol) && rest < gap * (1.0 - tol);
}

bool strictly_increasing(std::span<const double> s) {
    return std::adjacent_find(s.begin(), s.end(), std::greater_equal<>()) == s.end();
}

bool contains_sorted(std::span<const double> s, double v) {
    return std::binary_search(s.begin(), s.end(), v);
}

// Orders a run so that it converges to v_inf. Throws DomainError when v_inf
// lies within the run's span.
std::vector<double> order_toward(std::vector<double> run, double v_inf) {
    std::sort(run.begin(), run.end());
    if (run.empty()) return run;
    if (v_inf < run.front()) {
        std::reverse(run.begin(), run.end());
    } else if (!(v_inf > run.back())) {
        throw DomainError("limit lies inside the run's range");
    }
    return run;
}

std::string fmt_gap(double a, double b) {
    std::ostringstream os;
    os.precision(17);
    os << "(" << a << ", " << b << ")";
    return os.str();
}

}  // namespace

SlopeInterval::SlopeInterval(double a, double b) : lo(a), hi(b) {
    if (!(0.0 < a && a < b && b < 1.0)) {
        throw DomainError("slope interval must satisfy 0 < a < b < 1");
    }
}

LacunaryCheck is_one_lacunary(std::span<const double> seq, double v_inf, double tol) {
    if (seq.empty()) throw StructuralError("1-lacunary test needs a nonempty run");
    if (!std::isfinite(v_inf)) throw DomainError("limit must be finite");

    if (seq.size() == 1) {
        if (seq[0] == v_inf) throw DomainError("limit coincides with the run");
        return {};
    }

    const bool decreasing = seq[1] < seq[0];
    for (std::size_t i = 1; i < seq.size(); ++i) {
        const bool step_down = seq[i] < seq[i - 1];
        if (seq[i] == seq[i - 1] || step_down != decreasing) {
            throw StructuralError("run is not strictly monotone");
        }
    }
    const double first = seq.front();
    const double last = seq.back();
    if ((decreasing && v_inf > last) || (!decreasing && v_inf < last)) {
        const double lo = std::min(first, last);
        const double hi = std::max(first, last);
        if (v_inf >= lo && v_inf <= hi) throw DomainError("limit lies inside the run's range");
        throw StructuralError("run moves away from its limit");
    }
    if (v_inf == last) throw DomainError("limit coincides with the run");

    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        if (!pair_ok(seq[i], seq[i + 1], v_inf, tol)) {
            LacunaryCheck out;
            out.ok = false;
            out.k = i + 1;
            const double gap = std::abs(seq[i] - seq[i + 1]);
            const double rest = std::abs(seq[i + 1] - v_inf);
            out.reason = rest < gap ? "distance to limit not above half the gap"
                                    : "distance to limit not below the gap";
            return out;
        }
    }
    return {};
}

std::optional<double> fit_limit(std::span<const double> seq, double tol) {
    if (seq.size() < 2) return std::nullopt;
    const bool decreasing = seq[1] < seq[0];
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
        const double x = seq[i];
        const double y = seq[i + 1];
        if (x == y || (y < x) != decreasing) return std::nullopt;
        const double gap = std::abs(x - y);
        if (decreasing) {
            lo = std::max(lo, y - gap);
            hi = std::min(hi, y - 0.5 * gap);
        } else {
            lo = std::max(lo, y + 0.5 * gap);
            hi = std::min(hi, y + gap);
        }
    }
    if (!(lo < hi)) return std::nullopt;
    const double v = 0.5 * (lo + hi);
    if (!is_one_lacunary(seq, v, tol)) return std::nullopt;
    return v;
}

SlopeSet::SlopeSet(std::vector<double> slopes) : slopes_(std::move(slopes)) {
    for (double s : slopes_) {
        if (!(s > 0.0 && s < 1.0)) throw DomainError("slopes must lie in (0,1)");
    }
    std::sort(slopes_.begin(), slopes_.end());
    if (!strictly_increasing(slopes_)) throw StructuralError("duplicate slope in set");
}

SlopeSet::SlopeSet(std::vector<double> slopes, LacunaryCertificate cert)
    : SlopeSet(std::move(slopes)) {
    if (cert.chain.empty() || cert.chain.back() != slopes_) {
        throw StructuralError("certificate's last level differs from the set");
    }
    cert_ = std::move(cert);
}

bool SlopeSet::contains(double s) const noexcept { return contains_sorted(slopes_, s); }

std::vector<SlopeInterval> SlopeSet::gaps() const {
    std::vector<SlopeInterval> out;
    for (std::size_t i = 0; i + 1 < slopes_.size(); ++i) {
        out.emplace_back(slopes_[i], slopes_[i + 1]);
    }
    return out;
}

std::string CertificateReport::summary() const {
    if (issues.empty()) return "certificate valid";
    std::ostringstream os;
    for (const auto& issue : issues) {
        os << "level " << issue.level;
        if (issue.gap) os << " gap " << fmt_gap(issue.gap->first, issue.gap->second);
        os << ": " << issue.message << "\n";
    }
    return os.str();
}

CertificateReport verify_certificate(const SlopeSet& set, const LacunaryCertificate& cert,
                                     double tol) {
    CertificateReport report;
    auto fail = [&](std::size_t level, std::optional<std::pair<double, double>> gap,
                    std::string msg) {
        report.issues.push_back({level, gap, std::move(msg)});
    };

    if (cert.chain.empty()) {
        fail(0, std::nullopt, "empty chain");
        return report;
    }
    for (std::size_t k = 0; k < cert.chain.size(); ++k) {
        const auto& level = cert.chain[k];
        if (!strictly_increasing(level)) fail(k + 1, std::nullopt, "level not strictly increasing");
        for (double s : level) {
            if (!(s > 0.0 && s < 1.0)) {
                fail(k + 1, std::nullopt, "slope outside (0,1)");
                break;
            }
        }
    }
    if (!std::equal(cert.chain.back().begin(), cert.chain.back().end(), set.slopes().begin(),
                    set.slopes().end())) {
        fail(cert.order(), std::nullopt, "last level differs from the set");
    }
    for (std::size_t k = 0; k + 1 < cert.chain.size(); ++k) {
        for (double s : cert.chain[k]) {
            if (!contains_sorted(cert.chain[k + 1], s)) {
                fail(k + 2, std::nullopt, "inclusion violated: level " + std::to_string(k + 1) +
                                              " is not a subset of level " + std::to_string(k + 2));
                break;
            }
        }
    }
    if (!report.valid()) return report;

    using Key = std::tuple<std::size_t, double, double>;
    std::map<Key, const RunWitness*> by_gap;
    for (const auto& w : cert.witnesses) {
        const Key key{w.level, w.gap_lo, w.gap_hi};
        if (w.level == 0 || w.level > cert.order()) {
            fail(w.level, std::pair{w.gap_lo, w.gap_hi}, "witness level out of range");
        } else if (!by_gap.emplace(key, &w).second) {
            fail(w.level, std::pair{w.gap_lo, w.gap_hi}, "duplicate witness");
        }
    }

    auto check_run = [&](std::size_t level, double a, double b, std::vector<double> run) {
        const auto gap = std::pair{a, b};
        auto it = by_gap.find(Key{level, a, b});
        if (it == by_gap.end()) {
            fail(level, gap, "inserted run has no witness");
            return;
        }
        const double v_inf = it->second->v_inf;
        by_gap.erase(it);
        try {
            auto ordered = order_toward(std::move(run), v_inf);
            auto check = is_one_lacunary(ordered, v_inf, tol);
            if (!check) {
                fail(level, gap, "run fails the 1-lacunary test at pair " +
                                     std::to_string(check.k) + ": " + check.reason);
            }
        } catch (const std::exception& e) {
            fail(level, gap, std::string("run rejected: ") + e.what());
        }
    };

    const auto& base = cert.chain.front();
    if (!base.empty()) check_run(1, 0.0, 1.0, base);

    for (std::size_t k = 1; k < cert.chain.size(); ++k) {
        const auto& prev = cert.chain[k - 1];
        const auto& next = cert.chain[k];
        const std::size_t level = k + 1;
        for (double s : next) {
            if (prev.empty() || s < prev.front() || s > prev.back()) {
                fail(level, std::nullopt, "inserted slope lies outside every gap");
                break;
            }
        }
        for (std::size_t g = 0; g + 1 < prev.size(); ++g) {
            const double a = prev[g];
            const double b = prev[g + 1];
            auto first = std::upper_bound(next.begin(), next.end(), a);
            auto last = std::lower_bound(next.begin(), next.end(), b);
            if (first < last) check_run(level, a, b, std::vector<double>(first, last));
        }
    }
    for (const auto& [key, w] : by_gap) {
        fail(w->level, std::pair{w->gap_lo, w->gap_hi}, "witness for a gap with no inserted run");
    }
    return report;
}

LacunaryRecipe LacunaryRecipe::geometric(double ratio, std::size_t count, double anchor) {
    LacunaryRecipe recipe;
    double v = anchor;
    for (std::size_t k = 0; k < count; ++k) {
        v *= ratio;
        recipe.base.push_back(v);
    }
    recipe.base_v_inf = 0.0;
    return recipe;
}

SlopeSet build_n_lacunary(const LacunaryRecipe& recipe, double tol) {
    if (recipe.base.empty()) throw StructuralError("base run is empty");

    LacunaryCertificate cert;
    std::vector<double> base = recipe.base;
    {
        auto ordered = order_toward(base, recipe.base_v_inf);
        auto check = is_one_lacunary(ordered, recipe.base_v_inf, tol);
        if (!check) throw DomainError("base run is not 1-lacunary: " + check.reason);
    }
    {
        const SlopeSet checked(base);
        cert.chain.emplace_back(checked.slopes().begin(), checked.slopes().end());
    }
    cert.witnesses.push_back({1, 0.0, 1.0, recipe.base_v_inf});

    for (std::size_t li = 0; li < recipe.levels.size(); ++li) {
        const auto& spec = recipe.levels[li];
        const std::size_t level = li + 2;
        const auto& prev = cert.chain.back();
        std::vector<double> next = prev;
        std::map<std::pair<double, double>, bool> used;

        auto insert_run = [&](double a, double b, std::vector<double> run, double v_inf) {
            if (!used.emplace(std::pair{a, b}, true).second) {
                throw StructuralError("two runs inserted into gap " + fmt_gap(a, b));
            }
            for (double s : run) {
                if (!(s > a && s < b)) {
                    throw DomainError("inserted run leaves its host gap " + fmt_gap(a, b));
                }
            }
            auto ordered = order_toward(run, v_inf);
            auto check = is_one_lacunary(ordered, v_inf, tol);
            if (!check) {
                throw DomainError("run in gap " + fmt_gap(a, b) + " fails the 1-lacunary test at pair " +
                                  std::to_string(check.k));
            }
            next.insert(next.end(), run.begin(), run.end());
            cert.witnesses.push_back({level, a, b, v_inf});
        };

        for (const auto& run : spec.runs) {
            auto it = std::lower_bound(prev.begin(), prev.end(), run.gap_lo);
            if (it == prev.end() || *it != run.gap_lo || it + 1 == prev.end() ||
                *(it + 1) != run.gap_hi) {
                throw DomainError("explicit run names a gap " + fmt_gap(run.gap_lo, run.gap_hi) +
                                  " that is not a pair of neighbors");
            }
            if (!run.slopes.empty()) insert_run(run.gap_lo, run.gap_hi, run.slopes, run.v_inf);
        }
        if (spec.every_gap) {
            const auto& rule = spec.every_gap;
            for (std::size_t g = 0; g + 1 < prev.size(); ++g) {
                const double a = prev[g];
                const double b = prev[g + 1];
                if (used.count({a, b}) || rule->count == 0) continue;
                const double end = rule->toward == GapEnd::left ? a : b;
                const double other = rule->toward == GapEnd::left ? b : a;
                std::vector<double> run;
                double scale = 1.0;
                for (std::size_t j = 0; j < rule->count; ++j) {
                    scale *= rule->ratio;
                    run.push_back(end + (other - end) * scale);
                }
                insert_run(a, b, std::move(run), end);
            }
        }
        std::sort(next.begin(), next.end());
        if (!strictly_increasing(next)) throw StructuralError("inserted slopes collide");
        cert.chain.push_back(std::move(next));
    }
    std::vector<double> all = cert.chain.back();
    return SlopeSet(std::move(all), std::move(cert));
}

namespace {

// Grows a 1-lacunary run through the median interior point of a gap, with
// limit at the endpoint v. Ratios of successive distances to v are kept in
// (1/3, 1/2), preferring 0.4.
std::vector<double> grow_run(std::span<const double> interior, double v, double tol) {
    const std::size_t mid = (interior.size() - 1) / 2;
    auto dist = [v](double s) { return std::abs(s - v); };

    auto best_step = [&](double from, bool toward_limit) -> std::optional<double> {
        std::optional<double> best;
        double best_score = 0.0;
        for (double y : interior) {
            const bool ok = toward_limit ? (dist(y) < dist(from) && pair_ok(from, y, v, tol))
                                         : (dist(y) > dist(from) && pair_ok(y, from, v, tol));
            if (!ok) continue;
            const double ratio = toward_limit ? dist(y) / dist(from) : dist(from) / dist(y);
            const double score = std::abs(ratio - 0.4);
            // interior is increasing, so strict '<' keeps the smaller slope on ties
            if (!best || score < best_score) {
                best = y;
                best_score = score;
            }
        }
        return best;
    };

    std::vector<double> run{interior[mid]};
    for (auto y = best_step(run.back(), true); y; y = best_step(run.back(), true)) {
        run.push_back(*y);
    }
    for (auto y = best_step(run.front(), false); y; y = best_step(run.front(), false)) {
        run.insert(run.begin(), *y);
    }
    return run;
}

}  // namespace

LacunaryCertificate certify_log_order(const SlopeSet& set, double tol) {
    if (set.empty()) throw StructuralError("cannot certify an empty set");
    const auto s = set.slopes();
    LacunaryCertificate cert;

    if (s.size() == 1) {
        cert.chain.push_back({s[0]});
        cert.witnesses.push_back({1, 0.0, 1.0, 0.0});
        return cert;
    }

    std::vector<double> down(s.rbegin(), s.rend());
    if (auto v = fit_limit(down, tol)) {
        cert.chain.emplace_back(s.begin(), s.end());
        cert.witnesses.push_back({1, 0.0, 1.0, *v});
        return cert;
    }
    std::vector<double> up(s.begin(), s.end());
    if (auto v = fit_limit(up, tol)) {
        cert.chain.emplace_back(s.begin(), s.end());
        cert.witnesses.push_back({1, 0.0, 1.0, *v});
        return cert;
    }

    const std::vector<double> ends{s.back(), s.front()};
    const auto v_base = fit_limit(ends, tol);
    if (!v_base) throw VerificationError("two-point run has no admissible limit");
    cert.chain.push_back({s.front(), s.back()});
    cert.witnesses.push_back({1, 0.0, 1.0, *v_base});

    while (cert.chain.back().size() < s.size()) {
        const auto prev = cert.chain.back();
        std::vector<double> next = prev;
        const std::size_t level = cert.order() + 1;
        for (std::size_t g = 0; g + 1 < prev.size(); ++g) {
            const double a = prev[g];
            const double b = prev[g + 1];
            auto first = std::upper_bound(s.begin(), s.end(), a);
            auto last = std::lower_bound(s.begin(), s.end(), b);
            if (first == last) continue;
            const std::span<const double> interior(first, last);

            std::vector<double> run;
            double v_inf = a;
            std::vector<double> toward_a(interior.rbegin(), interior.rend());
            std::vector<double> toward_b(interior.begin(), interior.end());
            if (is_one_lacunary(toward_a, a, tol)) {
                run = std::move(toward_a);
            } else if (is_one_lacunary(toward_b, b, tol)) {
                run = std::move(toward_b);
                v_inf = b;
            } else {
                run = grow_run(interior, a, tol);
                auto alt = grow_run(interior, b, tol);
                if (alt.size() > run.size()) {
                    run = std::move(alt);
                    v_inf = b;
                }
            }
            next.insert(next.end(), run.begin(), run.end());
            cert.witnesses.push_back({level, a, b, v_inf});
        }
        std::sort(next.begin(), next.end());
        cert.chain.push_back(std::move(next));
    }
    return cert;
}

SlopeSet geometric_slopes(double ratio, std::size_t count, double anchor) {
    if (!(ratio > 1.0 / 3.0 && ratio < 0.5)) {
        throw DomainError(
            "geometric ratio must lie strictly inside (1/3, 1/2): outside it consecutive "
            "distances to the limit violate 1/2|v_k - v_k+1| < |v_k+1 - v_inf| < |v_k - v_k+1|");
    }
    if (count == 0) throw StructuralError("geometric run needs count >= 1");
    if (!(anchor > 0.0 && anchor < 1.0)) throw DomainError("anchor must lie in (0,1)");
    return build_n_lacunary(LacunaryRecipe::geometric(ratio, count, anchor));
}

SlopeSet equispaced_slopes(std::size_t count) {
    if (count == 0) throw StructuralError("equispaced family needs count >= 1");
    std::vector<double> s;
    for (std::size_t j = 1; j <= count; ++j) {
        s.push_back(static_cast<double>(j) / static_cast<double>(count + 1));
    }
    return with_log_certificate(SlopeSet(std::move(s)));
}

SlopeSet with_log_certificate(const SlopeSet& set, double tol) {
    std::vector<double> s(set.slopes().begin(), set.slopes().end());
    return SlopeSet(std::move(s), certify_log_order(set, tol));
}

}  // namespace dmax
