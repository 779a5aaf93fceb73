// Runs the ten acceptance criteria and prints one PASS/FAIL line for each.
// Exit status is the number of failed criteria.

#include "dmax/errors.hpp"
#include "dmax/experiment.hpp"
#include "dmax/grid.hpp"
#include "dmax/maxops.hpp"
#include "dmax/pinned.hpp"
#include "dmax/serialize.hpp"
#include "dmax/spectral.hpp"
#include "dmax/verify.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace fs = std::filesystem;
using namespace dmax;

namespace {

struct Outcome {
    bool passed = false;
    std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, pattern, args...);
    return buf;
}

fs::path scratch_dir() {
    static const fs::path dir = [] {
        auto d = fs::temp_directory_path() / ("dmax_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

GridFunction lattice_field(std::size_t n, std::mt19937_64& gen) {
    GridFunction f(n, static_cast<double>(n));
    const bool sparse = gen() % 2;
    for (double& v : f.samples()) {
        const bool keep = !sparse || gen() % 8 == 0;
        v = keep ? static_cast<double>(gen() >> 44) * 0x1p-20 : 0.0;
    }
    return f;
}

GridFunction gaussian_field(std::size_t n, double length, std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal;
    GridFunction f(n, length);
    for (double& v : f.samples()) v = normal(gen);
    return f;
}

bool same_bytes(const fs::path& a, const fs::path& b) {
    return read_text(a) == read_text(b);
}

Outcome kernel_exactness() {
    const auto gates = check_kernels();
    std::string failed;
    for (const auto& g : gates) {
        if (!g.passed) failed += " " + g.name;
    }
    double dft = 0.0, quad = 0.0;
    for (const auto& g : gates) {
        if (g.name.find("DFT") != std::string::npos) dft = g.value;
        if (g.name == "fejer vs quadrature") quad = g.value;
    }
    return {failed.empty(), fmt("%zu gates, DFT error %.3g, quadrature error %.3g%s", gates.size(), dft, quad,
                                failed.empty() ? "" : (", failed:" + failed).c_str())};
}

Outcome telescoping() {
    const auto cases = lemma2_suite(11, 20, 128);
    double worst = 0.0;
    std::size_t longest = 0;
    for (const auto& c : cases) {
        worst = std::max(worst, lemma2_telescoping(Spectrum(c.f), c.chain, c.R, c.h));
        longest = std::max(longest, c.chain.size());
    }
    return {worst <= 1e-10, fmt("max relative L2 gap %.3g over 20 grids, chains up to length %zu", worst, longest)};
}

Outcome support() {
    const auto cases = lemma2_suite(12, 10, 128);
    std::size_t violations = 0;
    for (const auto& c : cases) violations += lemma2_support(c.chain, c.R, c.h, c.f.n(), c.f.length());
    return {violations == 0, fmt("%zu violations over 10 chains", violations)};
}

Outcome scalar_ingredient() {
    double worst = 0.0;
    std::mt19937_64 gen(13);
    std::uniform_real_distribution<double> h(0.1, 100.0);
    for (std::uint64_t i = 0; i < 1000; ++i) {
        const auto chain = random_chain(random_lacunary_set(1000 + i), i);
        worst = std::max(worst, lemma2_scalar(chain, h(gen)));
    }
    return {worst <= 4.0, fmt("max %.17g over 1000 chains", worst)};
}

Outcome lemma1_constant() {
    const auto suite = lemma1_suite(1, 100, 128);
    const auto scales = dyadic_scales(128, 64);
    double worst = 0.0, drift = 0.0;
    for (const auto& c : suite) {
        const double a = check_lemma1(c.f, c.params, c.beta, scales).max_ratio;
        GridFunction twice = c.f;
        for (double& v : twice.samples()) v *= 2.0;
        const double b = check_lemma1(twice, c.params, c.beta, scales).max_ratio;
        worst = std::max(worst, a);
        drift = std::max(drift, std::abs(a - b) / a);
    }
    const double limit = pinned::kLemma1Constant * pinned::kPinSlack;
    return {worst <= limit && drift <= 1e-12,
            fmt("max ratio %.6g (limit %.4g), scaling drift %.3g", worst, limit, drift)};
}

Outcome bruteforce_equivalence() {
    const fs::path dir = scratch_dir() / "oracle";
    fs::create_directories(dir);
    std::mt19937_64 gen(14);
    std::size_t mismatches = 0, errors = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t n = t % 2 ? 16 : 32;
        const GridFunction f = lattice_field(n, gen);
        const double alpha = static_cast<double>(gen() >> 11) * 0x1p-53;
        std::string scales = "dyadic:" + std::to_string(n / 2);
        if (t % 3 == 1) {
            scales = std::to_string(1 + gen() % 5) + "x" + std::to_string(1 + gen() % 5) + "," +
                     std::to_string(1 + gen() % n) + "x" + std::to_string(1 + gen() % 3);
        }
        const fs::path in = dir / "in.dmg", slopes = dir / "slopes.json";
        const fs::path fast = dir / "fast.dmg", slow = dir / "slow.dmg";
        save_dmg1(in, f);
        write_text(slopes, fmt("[%.17g]\n", alpha));
        const std::string q = "\"";
        const std::string cli = q + DMAX_CLI + q + " apply --input " + q + in.string() + q + " --directions " + q +
                                slopes.string() + q + " --scales " + scales + " -o " + q + fast.string() + q +
                                " > /dev/null 2>&1";
        const std::string brute = q + DMAX_BRUTEFORCE + q + " --input " + q + in.string() + q + " --slope " +
                                  fmt("%.17g", alpha) + " --scales " + scales + " -o " + q + slow.string() + q +
                                  " > /dev/null 2>&1";
        if (std::system(cli.c_str()) != 0 || std::system(brute.c_str()) != 0) {
            ++errors;
            continue;
        }
        if (!same_bytes(fast, slow)) ++mismatches;
    }
    return {mismatches == 0 && errors == 0, fmt("%zu mismatches, %zu tool errors in 50 instances", mismatches, errors)};
}

Outcome sector_machinery() {
    const auto f = gaussian_field(128, 128.0, 15);
    const Sector s = sector_of(SlopeInterval(0.2, 0.45));
    const auto once = sector_project(f, s);
    const double idem = relative_l2(sector_project(once, s), once);

    GridFunction inside(128, 128.0);
    for (std::size_t i = 0; i < 128; ++i) {
        for (std::size_t j = 0; j < 128; ++j) {
            const double x1 = static_cast<double>(i), x2 = static_cast<double>(j);
            inside(i, j) = std::cos(2 * M_PI * (-3 * x1 + 10 * x2) / 128) + std::sin(2 * M_PI * (-12 * x1 + 40 * x2) / 128);
        }
    }
    const double ident = relative_l2(sector_project(inside, s), inside);

    const auto rest = sector_complement_project(f, s);
    const double total = f.l2_norm() * f.l2_norm();
    const double parseval =
        std::abs(once.l2_norm() * once.l2_norm() + rest.l2_norm() * rest.l2_norm() - total) / total;

    const auto levels = check_sector_overlap(*equispaced_slopes(32).certificate());
    std::size_t peak = 0;
    for (auto m : levels) peak = std::max(peak, m);
    const bool ok = idem <= 1e-12 && ident <= 1e-10 && parseval <= 1e-9 && levels.back() == 2;
    return {ok, fmt("idempotence %.3g, identity %.3g, Parseval %.3g, equispaced-32 multiplicity %zu at the final "
                    "level (%zu over all levels)",
                    idem, ident, parseval, levels.back(), peak)};
}

ExperimentReport run_bundled(const std::string& name, const std::string& subdir) {
    auto config = load_config(fs::path(DMAX_SOURCE_DIR) / "configs" / name);
    config.output_dir = scratch_dir() / subdir;
    return run_and_write(config);
}

Outcome katz_scaling() {
    const auto report = run_bundled("katz_sweep.json", "katz");
    bool increasing = true;
    std::string ratios;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        ratios += fmt("%s%.4f", i ? " " : "", report.rows[i].best_ratio);
        if (i > 0 && !(report.rows[i].best_ratio > report.rows[i - 1].best_ratio)) increasing = false;
    }
    double log_rss = -1.0, lin_rss = -1.0;
    for (const auto& fit : report.fits) {
        if (fit.model == "best_ratio ~ log2(num_dirs)") log_rss = fit.rss;
        if (fit.model == "best_ratio ~ num_dirs") lin_rss = fit.rss;
    }
    const bool fit_ok = log_rss >= 0.0 && lin_rss >= 0.0 && log_rss < lin_rss;
    return {increasing && fit_ok && report.rows.size() == 5,
            fmt("ratios %s; rss linear-in-k %.3g vs linear-in-2^k %.3g", ratios.c_str(), log_rss, lin_rss)};
}

Outcome theorem_sweep() {
    const auto report = run_bundled("theorem_sweep.json", "theorem");
    bool monotone = true, enveloped = true;
    std::string ratios;
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const auto& row = report.rows[i];
        ratios += fmt("%s%.4f", i ? " " : "", row.best_ratio);
        if (i > 0 && row.best_ratio < report.rows[i - 1].best_ratio) monotone = false;
        const double bound = pinned::kEnvelope * static_cast<double>(row.lac_order) * pinned::kPinSlack;
        if (row.best_ratio > bound) enveloped = false;
    }
    return {monotone && enveloped && report.rows.size() == 4,
            fmt("ratios %s for N = 1..4; envelope %.3g N", ratios.c_str(), pinned::kEnvelope)};
}

Outcome determinism() {
    const fs::path first = scratch_dir() / "theorem" / "theorem_sweep.csv";
    if (!fs::exists(first)) run_bundled("theorem_sweep.json", "theorem");
    run_bundled("theorem_sweep.json", "theorem_again");
    const bool same = same_bytes(first, scratch_dir() / "theorem_again" / "theorem_sweep.csv");
    return {same, same ? "theorem_sweep.json CSV byte-identical on rerun" : "CSV differs on rerun"};
}

}  // namespace

int main() {
    struct Criterion {
        const char* name;
        double budget_s;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {"kernel exactness", 5, kernel_exactness},
        {"telescoping identity", 30, telescoping},
        {"support containment", 30, support},
        {"scalar ingredient <= 4", 0, scalar_ingredient},
        {"lemma 1 empirical constant", 0, lemma1_constant},
        {"brute-force oracle equivalence", 60, bruteforce_equivalence},
        {"sector machinery", 0, sector_machinery},
        {"log-scaling for equispaced sets", 600, katz_scaling},
        {"monotone lacunary sweep", 600, theorem_sweep},
        {"determinism", 0, determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto& c = criteria[i];
        const auto start = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::string timing = fmt("%.2fs", secs);
        if (c.budget_s > 0 && secs > c.budget_s) {
            out.passed = false;
            timing += fmt(" over the %.0fs budget", c.budget_s);
        }
        if (!out.passed) ++failures;
        std::printf("criterion %2zu %s  %s: %s [%s]\n", i + 1, out.passed ? "PASS" : "FAIL", c.name,
                    out.detail.c_str(), timing.c_str());
        std::fflush(stdout);
    }
    std::error_code ec;
    fs::remove_all(scratch_dir(), ec);
    return failures;
}
