#include "doctest.h"

#include "dmax/errors.hpp"
#include "dmax/experiment.hpp"
#include "dmax/serialize.hpp"

#include <cmath>
#include <filesystem>

using namespace dmax;

TEST_CASE("slope sets round trip through JSON") {
    const SlopeSet set = build_n_lacunary([] {
        auto r = LacunaryRecipe::geometric(0.4, 4, 0.9);
        r.levels.push_back({GapRule{0.4, 1, GapEnd::right}, {}});
        return r;
    }());
    const auto back = slopes_from_json(slopes_to_json(set));
    CHECK(std::vector<double>(back.slopes().begin(), back.slopes().end()) ==
          std::vector<double>(set.slopes().begin(), set.slopes().end()));
    CHECK(back.certificate() == set.certificate());

    CHECK(slopes_from_json("[0.1, 0.5]").size() == 2);
    CHECK(slopes_from_json("{\"slopes\": [0.5, 0.1]}").slopes()[0] == 0.1);
    CHECK_THROWS_AS(slopes_from_json("{\"slopes\": [0.5, 0.5]}"), StructuralError);
    CHECK_THROWS_AS(slopes_from_json("{nope"), FormatError);
}

TEST_CASE("chains and recipes from JSON") {
    const IntervalChain c{{SlopeInterval(0.1, 0.9), SlopeInterval(0.4, 0.6)}, 0.5};
    const auto back = chain_from_json(chain_to_json(c));
    CHECK(back.theta == 0.5);
    CHECK(back.intervals == c.intervals);

    const auto recipe = recipe_from_json(
        R"({"base": {"ratio": 0.4, "count": 3, "anchor": 0.9}, "levels": [{"every_gap": {"ratio": 0.4, "count": 1}}]})");
    CHECK(build_n_lacunary(recipe).certificate()->order() == 2);
}

TEST_CASE("short family forms") {
    CHECK(make_family(parse_family("equispaced:8")).size() == 8);
    CHECK(make_family(parse_family("geometric:0.4:5")).size() == 5);
    CHECK_THROWS(parse_family("spiral:3"));
    CHECK_THROWS(parse_family("equispaced:x"));
}

TEST_CASE("norm estimates") {
    const SlopeSet few(std::vector<double>{0.3});
    const SlopeSet more = equispaced_slopes(8);
    NormOptions opt;
    opt.budget = 8;
    opt.scales = dyadic_scales(32);
    const auto a = estimate_norm(few, 32, opt);
    CHECK(a.lower_bound >= 1.0);
    CHECK(a.evaluations <= opt.budget);
    CHECK(norm_ratio(a.witness_f, few, opt.scales) == doctest::Approx(a.lower_bound).epsilon(1e-14));

    opt.warm_start.push_back({a.witness, a.witness_f});
    const auto b = estimate_norm(more, 32, opt);
    CHECK(b.lower_bound >= a.lower_bound);

    const auto again = estimate_norm(few, 32, NormOptions{8, 1, 2, dyadic_scales(32), {}});
    CHECK(again.lower_bound == a.lower_bound);
    CHECK(again.witness == a.witness);
}

TEST_CASE("line fit") {
    const std::vector<double> x{1, 2, 3, 4};
    const std::vector<double> y{3, 5, 7, 9};
    const auto fit = fit_line("y ~ x", x, y);
    CHECK(fit.slope == doctest::Approx(2.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
    CHECK(fit.rss <= 1e-20);
}

TEST_CASE("config validation") {
    const std::string base = R"({"seed": 3, "sizes": [32], "budget": 4,
        "families": [{"id": "a", "type": "equispaced", "count": 4}]})";
    const auto c = parse_config(base);
    CHECK(c.seed == 3);
    CHECK(c.families.size() == 1);

    CHECK_THROWS_AS(parse_config(R"({"sizes": [32], "colour": 1, "families": []})"), FormatError);
    CHECK_THROWS(parse_config(R"({"sizes": [32], "families": [{"id": "a", "type": "equispaced", "count": 4},
                                                              {"id": "a", "type": "equispaced", "count": 8}]})"));
    CHECK_THROWS(parse_config(R"({"sizes": [32], "families": [{"id": "a,b", "type": "equispaced", "count": 4}]})"));
    CHECK_THROWS(parse_config(R"({"sizes": [24], "families": [{"id": "a", "type": "equispaced", "count": 4}]})"));
    CHECK_THROWS(parse_config(R"({"sizes": [32], "families": [{"id": "a", "type": "file", "path": "missing.json"}]})"));
}

TEST_CASE("small experiment is reproducible") {
    const auto dir = std::filesystem::temp_directory_path() / "dmax_test_experiment";
    std::filesystem::remove_all(dir);
    auto c = parse_config(R"({"seed": 2, "sizes": [32], "budget": 5, "random_fields": 1,
        "families": [{"id": "e2", "type": "equispaced", "count": 2},
                     {"id": "e4", "type": "equispaced", "count": 4}]})");
    c.output_dir = dir;
    const auto first = run_and_write(c);
    const std::string csv = read_text(dir / c.csv_name);
    run_and_write(c);
    CHECK(read_text(dir / c.csv_name) == csv);
    REQUIRE(first.rows.size() == 2);
    CHECK(first.rows[1].best_ratio >= first.rows[0].best_ratio);
    CHECK(csv.rfind("family_id,n,num_dirs,lac_order,best_ratio,witness,max_overlap,wall_ms\n", 0) == 0);
    std::filesystem::remove_all(dir);
}
