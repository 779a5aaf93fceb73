// dmax: direction sets, directional maximal averages, lemma checks and sweeps.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or format error.

#include "dmax/directions.hpp"
#include "dmax/errors.hpp"
#include "dmax/experiment.hpp"
#include "dmax/grid.hpp"
#include "dmax/maxops.hpp"
#include "dmax/pinned.hpp"
#include "dmax/serialize.hpp"
#include "dmax/verify.hpp"
#include "scale_spec.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <numbers>
#include <optional>

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

struct Failure {
    std::string what;
};

std::vector<dmax::Scale> lattice(const std::string& spec, std::size_t n) {
    std::vector<dmax::Scale> out;
    for (const auto& [a, b] : dmax::tools::parse_scales(spec, n)) out.push_back({a, b});
    return out;
}

void print_gate(const dmax::Gate& g) {
    std::printf("%-4s %-46s %.6g (limit %.6g)\n", g.passed ? "ok" : "FAIL", g.name.c_str(), g.value, g.limit);
}

int report(const std::vector<dmax::Gate>& gates) {
    for (const auto& g : gates) print_gate(g);
    for (const auto& g : gates) {
        if (!g.passed) {
            std::fprintf(stderr, "dmax: verification failed: %s\n", g.name.c_str());
            return kFail;
        }
    }
    return kOk;
}

// gen ------------------------------------------------------------------------

struct GenArgs {
    std::optional<double> geometric;
    std::size_t count = 0;
    double anchor = 0.9;
    std::optional<std::size_t> equispaced;
    std::string built;
    std::string output;
    double tol = dmax::kDefaultTolerance;
};

int run_gen(const GenArgs& a) {
    const int chosen = (a.geometric ? 1 : 0) + (a.equispaced ? 1 : 0) + (a.built.empty() ? 0 : 1);
    if (chosen != 1) throw dmax::FormatError("choose exactly one of --geometric, --equispaced, --built");
    dmax::SlopeSet set;
    if (a.geometric) {
        if (a.count == 0) throw dmax::FormatError("--geometric needs --count >= 1");
        set = dmax::geometric_slopes(*a.geometric, a.count, a.anchor);
    } else if (a.equispaced) {
        set = dmax::with_log_certificate(dmax::equispaced_slopes(*a.equispaced), a.tol);
    } else {
        set = dmax::build_n_lacunary(dmax::recipe_from_json(dmax::read_text(a.built)), a.tol);
    }
    const auto check = dmax::verify_certificate(set, *set.certificate(), a.tol);
    if (!check.valid()) throw Failure{"generated certificate does not verify: " + check.summary()};
    const std::string text = dmax::slopes_to_json(set);
    if (a.output.empty() || a.output == "-") std::cout << text;
    else dmax::write_text(a.output, text);
    std::fprintf(stderr, "%zu slopes, certificate order %zu\n", set.size(), set.certificate()->order());
    return kOk;
}

// apply ----------------------------------------------------------------------

struct ApplyArgs {
    std::string input, directions, scales = "dyadic", output, pgm;
};

int run_apply(const ApplyArgs& a) {
    const auto f = dmax::load_dmg1(a.input);
    const auto omega = dmax::load_slopes(a.directions);
    if (omega.empty()) throw dmax::FormatError("direction file holds no slopes");
    const auto out = dmax::directional_max(f, omega, lattice(a.scales, f.n()));
    dmax::save_dmg1(a.output, out);
    if (!a.pgm.empty()) dmax::save_pgm(a.pgm, out);
    const double base = f.l2_norm();
    if (base > 0.0) std::printf("l2_ratio %.17g\n", out.l2_norm() / base);
    else std::printf("l2_ratio undefined (zero input)\n");
    return kOk;
}

// verify ---------------------------------------------------------------------

struct VerifyArgs {
    std::string which;
    std::string chain_file;
    std::string family = "equispaced:32";
    std::size_t max_multiplicity = 4;
    std::uint64_t seed = 1;
    std::size_t count = 0;
    std::size_t n = 128;
};

int verify_lemma1(const VerifyArgs& a) {
    const std::size_t count = a.count ? a.count : 100;
    const auto scales = dmax::dyadic_scales(a.n, a.n / 2);
    double worst = 0.0;
    double drift = 0.0;
    for (const auto& c : dmax::lemma1_suite(a.seed, count, a.n)) {
        const auto r = dmax::check_lemma1(c.f, c.params, c.beta, scales);
        worst = std::max(worst, r.max_ratio);
        dmax::GridFunction doubled = c.f;
        for (double& v : doubled.samples()) v *= 2.0;
        const auto r2 = dmax::check_lemma1(doubled, c.params, c.beta, scales);
        drift = std::max(drift, std::abs(r2.max_ratio - r.max_ratio) / r.max_ratio);
    }
    dmax::GridFunction point(a.n, static_cast<double>(a.n));
    point(a.n / 2, a.n / 2) = 1.0;
    const auto single = dmax::check_lemma1(point, dmax::KernelParams{0.0, 2.0, 4.0, 0.3}, 0.3, scales);
    std::printf("lemma 1: %zu instances, n = %zu, max ratio %.6f\n", count, a.n, worst);
    const bool pinned_suite = a.seed == 1 && count == 100 && a.n == 128;
    std::vector<dmax::Gate> gates{
        {"ratio invariant under f -> 2f", drift, 1e-12, drift <= 1e-12},
        {"center cell ratio", single.max_ratio, dmax::pinned::kLemma1PointConstant * dmax::pinned::kPinSlack,
         single.max_ratio <= dmax::pinned::kLemma1PointConstant * dmax::pinned::kPinSlack},
    };
    if (pinned_suite) {
        const double limit = dmax::pinned::kLemma1Constant * dmax::pinned::kPinSlack;
        gates.push_back({"suite max ratio <= pinned constant", worst, limit, worst <= limit});
    }
    return report(gates);
}

int verify_lemma2(const VerifyArgs& a) {
    const auto scales = dmax::dyadic_scales(a.n, a.n / 2);
    if (!a.chain_file.empty()) {
        const auto chain = dmax::chain_from_json(dmax::read_text(a.chain_file));
        dmax::validate_chain(chain);
        const double R = 4.0;
        const double h = 4.0 / (R * chain.intervals.back().length());
        dmax::GridFunction f(a.n, std::numbers::pi * static_cast<double>(a.n) / (1.5 * R));
        for (std::size_t i = 0; i < a.n; ++i) {
            for (std::size_t j = 0; j < a.n; ++j) f(i, j) = ((i * 131 + j * 71) % 97) / 97.0;
        }
        const auto rep = dmax::check_lemma2(f, chain, R, h, scales);
        std::printf("lemma 2: %zu levels, %zu pieces, telescoping %.3g, scalar max %.6f, constant %.6f\n",
                    chain.size(), rep.pieces, rep.telescoping_error, rep.scalar_max, rep.constant);
        return kOk;
    }
    const std::size_t count = a.count ? a.count : 20;
    double tele = 0.0, scalar = 0.0, constant = 0.0;
    std::size_t support = 0;
    for (const auto& c : dmax::lemma2_suite(a.seed, count, a.n)) {
        const auto rep = dmax::check_lemma2(c.f, c.chain, c.R, c.h, scales);
        tele = std::max(tele, rep.telescoping_error);
        scalar = std::max(scalar, rep.scalar_max);
        constant = std::max(constant, rep.constant);
        support += rep.support_violations;
    }
    std::printf("lemma 2: %zu chains, n = %zu\n", count, a.n);
    std::vector<dmax::Gate> gates{
        {"telescoping relative L2", tele, 1e-10, tele <= 1e-10},
        {"support violations", static_cast<double>(support), 0.0, support == 0},
        {"h r_{k+1} min|theta - endpoint|", scalar, 4.0, scalar <= 4.0},
    };
    if (a.seed == 1 && count == 20 && a.n == 128) {
        const double limit = dmax::pinned::kLemma2Constant * dmax::pinned::kPinSlack;
        gates.push_back({"pointwise constant <= pinned", constant, limit, constant <= limit});
    } else {
        std::printf("pointwise constant %.6f\n", constant);
    }
    return report(gates);
}

int verify_overlap(const VerifyArgs& a) {
    const auto set = dmax::make_family(dmax::parse_family(a.family));
    const auto levels = dmax::check_sector_overlap(*set.certificate());
    for (std::size_t k = 0; k < levels.size(); ++k) std::printf("level %zu: multiplicity %zu\n", k + 1, levels[k]);
    std::printf("multiplicity %zu\n", levels.back());
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (levels[k] > a.max_multiplicity) {
            std::fprintf(stderr, "dmax: verification failed: level %zu multiplicity %zu exceeds %zu\n", k + 1,
                         levels[k], a.max_multiplicity);
            return kFail;
        }
    }
    return kOk;
}

int run_verify(const VerifyArgs& a) {
    if (a.n < 16 || !dmax::is_power_of_two(a.n)) throw dmax::FormatError("--n must be a power of two >= 16");
    if (a.which == "kernels") return report(dmax::check_kernels());
    if (a.which == "lemma1") return verify_lemma1(a);
    if (a.which == "lemma2") return verify_lemma2(a);
    return verify_overlap(a);
}

// experiment -----------------------------------------------------------------

int run_experiment_cmd(const std::string& path, const std::string& out_dir) {
    auto config = dmax::load_config(path);
    if (!out_dir.empty()) config.output_dir = out_dir;
    const auto rep = dmax::run_and_write(config);
    std::printf("%zu rows -> %s\n", rep.rows.size(), (config.output_dir / config.csv_name).string().c_str());
    for (const auto& f : rep.fits) {
        std::printf("n=%zu %-34s slope %.6g intercept %.6g rss %.3g\n", f.n, f.model.c_str(), f.slope, f.intercept,
                    f.rss);
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Directional maximal operators on periodic grids"};
    app.require_subcommand(1);

    GenArgs gen;
    auto* g = app.add_subcommand("gen", "generate a certified direction set (JSON)");
    g->add_option("--geometric", gen.geometric, "ratio in (1/3, 1/2)");
    g->add_option("--count", gen.count, "number of slopes");
    g->add_option("--anchor", gen.anchor, "anchor slope in (0,1)");
    g->add_option("--equispaced", gen.equispaced, "j/(N+1), j = 1..N");
    g->add_option("--built", gen.built, "recipe JSON for an N-lacunary set");
    g->add_option("--tol", gen.tol, "relative tolerance of strict inequalities");
    g->add_option("-o,--output", gen.output, "output file (default stdout)");

    ApplyArgs apply;
    auto* ap = app.add_subcommand("apply", "directional maximal function of a DMG1 grid");
    ap->add_option("--input", apply.input, "DMG1 input")->required();
    ap->add_option("--directions", apply.directions, "slope set JSON")->required();
    ap->add_option("--scales", apply.scales, "dyadic | dyadic:K | D1xD2,...");
    ap->add_option("-o,--output", apply.output, "DMG1 output")->required();
    ap->add_option("--pgm", apply.pgm, "also write a normalized PGM image");

    VerifyArgs ver;
    auto* v = app.add_subcommand("verify", "run a verification suite");
    v->add_option("which", ver.which, "kernels | lemma1 | lemma2 | overlap")
        ->required()
        ->check(CLI::IsMember({"kernels", "lemma1", "lemma2", "overlap"}));
    v->add_option("--chain-file", ver.chain_file, "lemma2: check one interval chain (JSON)");
    v->add_option("--family", ver.family, "overlap: equispaced:N | geometric:R:C[:A] | file:PATH");
    v->add_option("--max-multiplicity", ver.max_multiplicity, "overlap: per-level bound");
    v->add_option("--seed", ver.seed, "suite seed");
    v->add_option("--count", ver.count, "suite size (default 100 for lemma1, 20 for lemma2)");
    v->add_option("--n", ver.n, "grid size");

    std::string config_path, out_dir;
    auto* ex = app.add_subcommand("experiment", "run a sweep from a JSON config");
    ex->add_option("config", config_path, "config file")->required();
    ex->add_option("--out-dir", out_dir, "override the config's output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (g->parsed()) return run_gen(gen);
        if (ap->parsed()) return run_apply(apply);
        if (v->parsed()) return run_verify(ver);
        return run_experiment_cmd(config_path, out_dir);
    } catch (const Failure& f) {
        std::cerr << "dmax: verification failed: " << f.what << "\n";
        return kFail;
    } catch (const dmax::ChainError& e) {
        std::cerr << "dmax: verification failed: chain level " << e.level() << ": " << e.what() << "\n";
        return kFail;
    } catch (const dmax::VerificationError& e) {
        std::cerr << "dmax: verification failed: " << e.what() << "\n";
        return kFail;
    } catch (const std::exception& e) {
        std::cerr << "dmax: " << e.what() << "\n";
        return kUsage;
    }
}
