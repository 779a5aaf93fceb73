#pragma once

// Lower bounds for the L2 operator norm of the directional maximal operator,
// and the config-driven sweeps built on them.

#include "dmax/directions.hpp"
#include "dmax/grid.hpp"
#include "dmax/maxops.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dmax {

struct TestFunction {
    std::string id;
    GridFunction f;
};

/// Fixed library on an n x n grid of side n: point (mollified point mass),
/// disc (radius n/8), besicovitch (one thin sheared rectangle per slope of
/// omega through the center), then `random_count` seeded nonnegative fields.
std::vector<TestFunction> test_library(const SlopeSet& omega, std::size_t n, std::uint64_t seed,
                                       std::size_t random_count);

struct NormOptions {
    std::size_t budget = 16;          // total evaluations, >= 1
    std::uint64_t seed = 1;
    std::size_t random_fields = 2;
    std::vector<Scale> scales;        // empty: dyadic_scales(n)
    std::vector<TestFunction> warm_start;
};

struct NormEstimate {
    double lower_bound = 0.0;
    std::string witness;
    GridFunction witness_f;
    std::size_t evaluations = 0;
};

/// ||M_omega f||_2 / ||f||_2 maximized over: the constant function, the warm
/// start candidates, the test library, then seeded coordinate ascent from the
/// best candidate until the budget is spent. Always >= 1.
NormEstimate estimate_norm(const SlopeSet& omega, std::size_t n, const NormOptions& options);

double norm_ratio(const GridFunction& f, const SlopeSet& omega, std::span<const Scale> scales);

struct FamilySpec {
    std::string id;
    std::string type;  // equispaced | geometric | built | file
    std::size_t count = 0;
    double ratio = 0.4;
    double anchor = 0.9;
    std::vector<GapRule> levels;  // built: one rule per insertion level
    std::filesystem::path path;   // file
};

struct ExperimentConfig {
    std::uint64_t seed = 1;
    std::vector<std::size_t> sizes;
    std::size_t max_half_width = 0;  // 0: n/4
    std::vector<Scale> scales;       // explicit lattice, overrides max_half_width
    std::size_t budget = 16;
    std::size_t random_fields = 2;
    bool timing = false;
    bool warm_start = true;
    double tolerance = kDefaultTolerance;
    std::vector<FamilySpec> families;
    std::filesystem::path output_dir = ".";
    std::string csv_name = "report.csv";
    std::string json_name = "report.json";
    std::string source;  // the config text, echoed into the JSON report
};

/// Parses and validates; paths of file families are resolved against `base`.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base = ".");
ExperimentConfig load_config(const std::filesystem::path& path);

SlopeSet make_family(const FamilySpec& spec, double tol = kDefaultTolerance);

/// Short form used on the command line: "equispaced:COUNT",
/// "geometric:RATIO:COUNT[:ANCHOR]" or "file:PATH".
FamilySpec parse_family(const std::string& text);

struct ExperimentRow {
    std::string family_id;
    std::size_t n = 0;
    std::size_t num_dirs = 0;
    std::size_t lac_order = 0;
    double best_ratio = 0.0;
    std::string witness;
    std::size_t max_overlap = 0;
    double wall_ms = 0.0;
};

struct LinearFit {
    std::size_t n = 0;  // grid size of the rows fitted
    std::string model;  // "ratio ~ log2(num_dirs)" etc.
    double intercept = 0.0;
    double slope = 0.0;
    double rss = 0.0;
};

struct ExperimentReport {
    std::vector<ExperimentRow> rows;
    std::vector<LinearFit> fits;
};

/// Least squares y = intercept + slope x; rss is the residual sum of squares.
LinearFit fit_line(const std::string& model, std::span<const double> x, std::span<const double> y);

/// Runs every (family, size) cell in config order. Families at the same size
/// warm-start from their predecessor's witness when enabled.
ExperimentReport run_experiment(const ExperimentConfig& config);

std::string report_csv(const ExperimentReport& report, bool timing);
std::string report_json(const ExperimentReport& report, const ExperimentConfig& config);

/// run_experiment plus writing both files; returns the report.
ExperimentReport run_and_write(const ExperimentConfig& config);

}  // namespace dmax
