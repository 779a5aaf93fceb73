#include "dmax/experiment.hpp"

#include "dmax/errors.hpp"
#include "dmax/pinned.hpp"
#include "dmax/serialize.hpp"
#include "dmax/verify.hpp"
#include "random.hpp"

#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <set>

namespace dmax {

using nlohmann::json;

namespace {

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

// Sum of a thin sheared segment through (c1, c2) along slope alpha.
void add_segment(GridFunction& f, std::size_t c1, std::size_t c2, double alpha, long half_length, double value) {
    const long n = static_cast<long>(f.n());
    for (long i = -half_length; i <= half_length; ++i) {
        const long x = static_cast<long>(c1) + i;
        const long y = static_cast<long>(c2) + shear_offset(i, alpha);
        f(static_cast<std::size_t>((x % n + n) % n), static_cast<std::size_t>((y % n + n) % n)) += value;
    }
}

// One small random change near the peak of f (or anywhere, one time in
// four), clamped to stay nonnegative.
GridFunction perturb(const GridFunction& f, const SlopeSet& omega, detail::Rng& rng) {
    GridFunction g = f;
    const std::size_t n = f.n();
    const auto samples = f.samples();
    const auto peak_at = static_cast<std::size_t>(std::max_element(samples.begin(), samples.end()) - samples.begin());
    const double peak = std::max(samples[peak_at], 1e-12);
    std::size_t c1 = rng.below(n), c2 = rng.below(n);
    if (rng.below(4) != 0) {
        c1 = (peak_at / n + n - 8 + rng.below(17)) % n;
        c2 = (peak_at % n + n - 8 + rng.below(17)) % n;
    }
    switch (rng.below(3)) {
        case 0:
            g(c1, c2) += rng.uniform(0.05, 0.5) * peak;
            break;
        case 1: {
            const double alpha = omega.slopes()[rng.below(omega.size())];
            add_segment(g, c1, c2, alpha, static_cast<long>(1 + rng.below(8)), rng.uniform(0.02, 0.3) * peak);
            break;
        }
        default: {
            const std::size_t w = 1 + rng.below(4);
            const double factor = rng.uniform(0.5, 1.5);
            for (std::size_t a = 0; a < w; ++a) {
                for (std::size_t b = 0; b < w; ++b) g((c1 + a) % n, (c2 + b) % n) *= factor;
            }
            break;
        }
    }
    for (double& v : g.samples()) v = std::max(v, 0.0);
    return g;
}

std::vector<Scale> scales_for(const ExperimentConfig& config, std::size_t n) {
    if (!config.scales.empty()) return normalize_scales(config.scales, n);
    return dyadic_scales(n, config.max_half_width);
}

}  // namespace

std::vector<TestFunction> test_library(const SlopeSet& omega, std::size_t n, std::uint64_t seed,
                                       std::size_t random_count) {
    const double side = static_cast<double>(n);
    const long c = static_cast<long>(n / 2);
    std::vector<TestFunction> lib;

    GridFunction point(n, side);
    for (long a = -4; a <= 4; ++a) {
        for (long b = -4; b <= 4; ++b) {
            point(static_cast<std::size_t>(c + a), static_cast<std::size_t>(c + b)) =
                std::exp(-static_cast<double>(a * a + b * b) / 4.5);
        }
    }
    lib.push_back({"point", std::move(point)});

    GridFunction disc(n, side);
    const double radius = side / 8.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double d1 = static_cast<double>(static_cast<long>(i) - c);
            const double d2 = static_cast<double>(static_cast<long>(j) - c);
            if (d1 * d1 + d2 * d2 <= radius * radius) disc(i, j) = 1.0;
        }
    }
    lib.push_back({"disc", std::move(disc)});

    GridFunction stack(n, side);
    for (double alpha : omega.slopes()) add_segment(stack, n / 2, n / 2, alpha, static_cast<long>(n / 4), 1.0);
    lib.push_back({"besicovitch", std::move(stack)});

    detail::Rng rng(seed);
    for (std::size_t k = 0; k < random_count; ++k) {
        GridFunction f(n, side);
        if (k % 2 == 0) {
            for (double& v : f.samples()) v = rng.lattice();
        } else {
            for (std::size_t j = 0; j < n * n / 100 + 1; ++j) f(rng.below(n), rng.below(n)) = rng.uniform(0.1, 1.0);
        }
        lib.push_back({"random" + std::to_string(k), std::move(f)});
    }
    return lib;
}

double norm_ratio(const GridFunction& f, const SlopeSet& omega, std::span<const Scale> scales) {
    const double base = f.l2_norm();
    if (!(base > 0.0)) throw DomainError("test function vanishes");
    return directional_max(f, omega, scales).l2_norm() / base;
}

NormEstimate estimate_norm(const SlopeSet& omega, std::size_t n, const NormOptions& options) {
    if (omega.empty()) throw StructuralError("direction set is empty");
    if (options.budget == 0) throw DomainError("budget must be at least 1");
    const std::vector<Scale> scales = options.scales.empty() ? dyadic_scales(n) : normalize_scales(options.scales, n);

    NormEstimate best;
    auto consider = [&](const std::string& id, const GridFunction& f) {
        const double ratio = norm_ratio(f, omega, scales);
        ++best.evaluations;
        if (ratio > best.lower_bound) {
            best.lower_bound = ratio;
            best.witness = id;
            best.witness_f = f;
        }
    };

    GridFunction constant(n, static_cast<double>(n));
    for (double& v : constant.samples()) v = 1.0;
    consider("constant", constant);

    for (const auto& w : options.warm_start) {
        if (best.evaluations >= options.budget) break;
        if (w.f.n() != n) throw StructuralError("warm start candidate has the wrong grid size");
        consider(w.id, w.f);
    }
    for (const auto& t : test_library(omega, n, options.seed, options.random_fields)) {
        if (best.evaluations >= options.budget) break;
        consider(t.id, t.f);
    }

    detail::Rng rng(options.seed ^ 0x9e3779b97f4a7c15ULL);
    const std::string origin = best.witness;
    std::size_t accepted = 0;
    while (best.evaluations < options.budget) {
        GridFunction g = perturb(best.witness_f, omega, rng);
        const double before = best.lower_bound;
        consider(origin + "+ascent" + std::to_string(accepted + 1), g);
        if (best.lower_bound > before) ++accepted;
    }
    return best;
}

ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw FormatError("config must be a JSON object");
    static const std::set<std::string> known{"seed", "sizes", "scales", "budget", "random_fields", "timing",
                                             "warm_start", "tolerance", "families", "output"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) throw FormatError("unknown config key \"" + key + "\"");
    }

    ExperimentConfig c;
    c.source = text;
    try {
        c.seed = j.value("seed", std::uint64_t{1});
        c.sizes = j.at("sizes").get<std::vector<std::size_t>>();
        if (j.contains("scales")) {
            const json& s = j.at("scales");
            if (s.is_array()) {
                for (const auto& p : s) c.scales.push_back({p.at(0).get<std::size_t>(), p.at(1).get<std::size_t>()});
                if (c.scales.empty()) throw FormatError("scale list is empty");
            } else {
                c.max_half_width = s.value("max_half_width", std::size_t{0});
            }
        }
        c.budget = j.value("budget", std::size_t{16});
        c.random_fields = j.value("random_fields", std::size_t{2});
        c.timing = j.value("timing", false);
        c.warm_start = j.value("warm_start", true);
        c.tolerance = j.value("tolerance", kDefaultTolerance);
        std::set<std::string> ids;
        for (const auto& f : j.value("families", json::array())) {
            FamilySpec spec;
            spec.id = f.at("id").get<std::string>();
            spec.type = f.at("type").get<std::string>();
            if (spec.id.empty() || !ids.insert(spec.id).second) throw FormatError("family ids must be unique and nonempty");
            if (spec.id.find_first_of(",\"\n") != std::string::npos) throw FormatError("family id \"" + spec.id + "\" has CSV-unsafe characters");
            if (spec.type == "equispaced") {
                spec.count = f.at("count").get<std::size_t>();
            } else if (spec.type == "geometric") {
                spec.ratio = f.at("ratio").get<double>();
                spec.count = f.at("count").get<std::size_t>();
                spec.anchor = f.value("anchor", 0.9);
            } else if (spec.type == "built") {
                const json& b = f.at("base");
                spec.ratio = b.at("ratio").get<double>();
                spec.count = b.at("count").get<std::size_t>();
                spec.anchor = b.value("anchor", 0.9);
                for (const auto& lv : f.value("levels", json::array())) {
                    GapRule rule{lv.at("ratio").get<double>(), lv.at("count").get<std::size_t>(), GapEnd::left};
                    const auto toward = lv.value("toward", std::string("left"));
                    if (toward == "right") rule.toward = GapEnd::right;
                    else if (toward != "left") throw FormatError("toward must be left or right");
                    spec.levels.push_back(rule);
                }
            } else if (spec.type == "file") {
                spec.path = base / f.at("path").get<std::string>();
                if (!std::filesystem::exists(spec.path)) throw FormatError("direction file not found: " + spec.path.string());
            } else {
                throw FormatError("unknown family type \"" + spec.type + "\"");
            }
            c.families.push_back(std::move(spec));
        }
        if (j.contains("output")) {
            const json& o = j.at("output");
            c.output_dir = o.value("dir", std::string("."));
            c.csv_name = o.value("csv", c.csv_name);
            c.json_name = o.value("json", c.json_name);
        }
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid config: ") + e.what());
    }
    for (std::size_t n : c.sizes) {
        if (n < 16 || !is_power_of_two(n)) throw FormatError("grid sizes must be powers of two >= 16");
    }
    if (c.budget == 0) throw FormatError("budget must be at least 1");
    if (!(c.tolerance >= 0.0 && c.tolerance < 1e-3)) throw FormatError("tolerance must lie in [0, 1e-3)");
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    return parse_config(read_text(path), path.parent_path().empty() ? "." : path.parent_path());
}

SlopeSet make_family(const FamilySpec& spec, double tol) {
    if (spec.type == "equispaced") return with_log_certificate(equispaced_slopes(spec.count), tol);
    if (spec.type == "geometric") return geometric_slopes(spec.ratio, spec.count, spec.anchor);
    if (spec.type == "built") {
        LacunaryRecipe recipe = LacunaryRecipe::geometric(spec.ratio, spec.count, spec.anchor);
        for (const auto& rule : spec.levels) recipe.levels.push_back(InsertionLevel{rule, {}});
        return build_n_lacunary(recipe, tol);
    }
    if (spec.type == "file") {
        SlopeSet set = load_slopes(spec.path);
        if (set.certificate()) {
            const auto report = verify_certificate(set, *set.certificate(), tol);
            if (!report.valid()) throw FormatError(spec.path.string() + ": " + report.summary());
            return set;
        }
        return with_log_certificate(set, tol);
    }
    throw FormatError("unknown family type \"" + spec.type + "\"");
}

FamilySpec parse_family(const std::string& text) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    const std::size_t colon = text.find(':');
    if (colon != std::string::npos && text.compare(0, colon, "file") == 0) {
        parts = {"file", text.substr(colon + 1)};
    } else {
        while (true) {
            const std::size_t next = text.find(':', start);
            parts.push_back(text.substr(start, next - start));
            if (next == std::string::npos) break;
            start = next + 1;
        }
    }
    FamilySpec spec;
    spec.id = text;
    spec.type = parts[0];
    try {
        if (spec.type == "equispaced" && parts.size() == 2) {
            spec.count = std::stoul(parts[1]);
        } else if (spec.type == "geometric" && (parts.size() == 3 || parts.size() == 4)) {
            spec.ratio = std::stod(parts[1]);
            spec.count = std::stoul(parts[2]);
            if (parts.size() == 4) spec.anchor = std::stod(parts[3]);
        } else if (spec.type == "file" && parts.size() == 2 && !parts[1].empty()) {
            spec.path = parts[1];
        } else {
            throw FormatError("");
        }
    } catch (const std::logic_error&) {
        throw FormatError("bad family \"" + text + "\"");
    } catch (const FormatError&) {
        throw FormatError("bad family \"" + text +
                          "\"; expected equispaced:COUNT, geometric:RATIO:COUNT[:ANCHOR] or file:PATH");
    }
    return spec;
}

LinearFit fit_line(const std::string& model, std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw DomainError("a line fit needs at least two points");
    const double count = static_cast<double>(x.size());
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
    mx /= count;
    my /= count;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LinearFit fit;
    fit.model = model;
    fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
    fit.intercept = my - fit.slope * mx;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - fit.intercept - fit.slope * x[i];
        fit.rss += r * r;
    }
    return fit;
}

ExperimentReport run_experiment(const ExperimentConfig& config) {
    ExperimentReport report;
    std::vector<SlopeSet> sets;
    sets.reserve(config.families.size());
    for (const auto& spec : config.families) sets.push_back(make_family(spec, config.tolerance));

    for (std::size_t n : config.sizes) {
        const auto scales = scales_for(config, n);
        std::optional<TestFunction> previous;
        std::vector<ExperimentRow> group;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            const auto start = std::chrono::steady_clock::now();
            NormOptions opt;
            opt.budget = config.budget;
            opt.seed = config.seed;
            opt.random_fields = config.random_fields;
            opt.scales = scales;
            if (config.warm_start && previous) opt.warm_start.push_back(*previous);
            const NormEstimate est = estimate_norm(sets[i], n, opt);

            ExperimentRow row;
            row.family_id = config.families[i].id;
            row.n = n;
            row.num_dirs = sets[i].size();
            row.lac_order = sets[i].certificate() ? sets[i].certificate()->order() : 0;
            row.best_ratio = est.lower_bound;
            row.witness = est.witness;
            if (sets[i].certificate()) {
                const auto levels = check_sector_overlap(*sets[i].certificate());
                row.max_overlap = levels.empty() ? 0 : *std::max_element(levels.begin(), levels.end());
            }
            row.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            previous = TestFunction{"warm:" + row.family_id + "/" + est.witness, est.witness_f};
            group.push_back(row);
            report.rows.push_back(row);
        }
        if (group.size() >= 2) {
            std::vector<double> y, log_dirs, dirs, order, log_y;
            for (const auto& r : group) {
                y.push_back(r.best_ratio);
                log_y.push_back(std::log2(r.best_ratio));
                dirs.push_back(static_cast<double>(r.num_dirs));
                log_dirs.push_back(std::log2(static_cast<double>(r.num_dirs)));
                order.push_back(static_cast<double>(r.lac_order));
            }
            const std::pair<const char*, const std::vector<double>*> models[] = {
                {"best_ratio ~ log2(num_dirs)", &log_dirs},
                {"best_ratio ~ num_dirs", &dirs},
                {"best_ratio ~ lac_order", &order},
            };
            for (const auto& [name, xs] : models) {
                auto fit = fit_line(name, *xs, y);
                fit.n = n;
                report.fits.push_back(fit);
            }
            auto exponent = fit_line("log2(best_ratio) ~ log2(num_dirs)", log_dirs, log_y);
            exponent.n = n;
            report.fits.push_back(exponent);
        }
    }
    return report;
}

std::string report_csv(const ExperimentReport& report, bool timing) {
    std::string out = "family_id,n,num_dirs,lac_order,best_ratio,witness,max_overlap,wall_ms\n";
    for (const auto& r : report.rows) {
        char ms[32];
        std::snprintf(ms, sizeof ms, "%.3f", timing ? r.wall_ms : 0.0);
        out += r.family_id + "," + std::to_string(r.n) + "," + std::to_string(r.num_dirs) + "," +
               std::to_string(r.lac_order) + "," + fmt17(r.best_ratio) + "," + r.witness + "," +
               std::to_string(r.max_overlap) + "," + ms + "\n";
    }
    return out;
}

std::string report_json(const ExperimentReport& report, const ExperimentConfig& config) {
    json j;
    j["config"] = json::parse(config.source.empty() ? "{}" : config.source);
    j["pinned"] = {
        {"lemma1_constant", pinned::kLemma1Constant},
        {"lemma1_point_constant", pinned::kLemma1PointConstant},
        {"lemma2_constant", pinned::kLemma2Constant},
        {"zeta_constant_1_8", pinned::kZetaConstant},
        {"disc_ratio_n128_eq64", pinned::kDiscRatio},
        {"geometric_overlap", pinned::kGeometricOverlap},
        {"equispaced64_order", pinned::kEquispaced64Order},
        {"envelope", pinned::kEnvelope},
        {"slack", pinned::kPinSlack},
        {"log_order_bound", {{"slope", kLogOrderSlope}, {"offset", kLogOrderOffset}}},
    };
    j["rows"] = json::array();
    for (const auto& r : report.rows) {
        j["rows"].push_back({{"family_id", r.family_id}, {"n", r.n}, {"num_dirs", r.num_dirs},
                             {"lac_order", r.lac_order}, {"best_ratio", r.best_ratio}, {"witness", r.witness},
                             {"max_overlap", r.max_overlap}, {"wall_ms", r.wall_ms}});
    }
    j["fits"] = json::array();
    for (const auto& f : report.fits) {
        j["fits"].push_back({{"n", f.n}, {"model", f.model}, {"intercept", f.intercept}, {"slope", f.slope},
                             {"rss", f.rss}});
    }
    return j.dump(2) + "\n";
}

ExperimentReport run_and_write(const ExperimentConfig& config) {
    ExperimentReport report = run_experiment(config);
    std::filesystem::create_directories(config.output_dir);
    write_text(config.output_dir / config.csv_name, report_csv(report, config.timing));
    write_text(config.output_dir / config.json_name, report_json(report, config));
    return report;
}

}  // namespace dmax
