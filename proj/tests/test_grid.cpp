#include "doctest.h"

#include "dmax/errors.hpp"
#include "dmax/grid.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dmax;

TEST_CASE("construction rules") {
    CHECK_THROWS_AS(GridFunction(24, 1.0), StructuralError);
    CHECK_THROWS_AS(GridFunction(8, 1.0), StructuralError);
    CHECK_THROWS(GridFunction(16, 0.0));
    CHECK_THROWS(GridFunction(16, 1.0, std::vector<double>(10)));
    std::vector<double> bad(256, 0.0);
    bad[3] = std::nan("");
    CHECK_THROWS(GridFunction(16, 1.0, bad));
    CHECK(is_power_of_two(64));
    CHECK_FALSE(is_power_of_two(48));
}

TEST_CASE("norms") {
    GridFunction f(16, 8.0);
    for (double& v : f.samples()) v = 2.0;
    CHECK(f.l2_norm() == doctest::Approx(16.0));
    CHECK(f.max_abs() == 2.0);
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
}

TEST_CASE("DMG1 round trip") {
    GridFunction f(16, 3.5);
    for (std::size_t i = 0; i < f.samples().size(); ++i) f.samples()[i] = std::sin(0.37 * static_cast<double>(i));
    std::stringstream buf;
    write_dmg1(buf, f);
    const std::string bytes = buf.str();
    CHECK(bytes.size() == 8 + 4 + 8 + 256 * 8);
    CHECK(bytes.substr(0, 8) == "DMAXGRD1");
    std::stringstream in(bytes);
    CHECK(read_dmg1(in) == f);

    const auto path = std::filesystem::temp_directory_path() / "dmax_test_roundtrip.dmg";
    save_dmg1(path, f);
    CHECK(load_dmg1(path) == f);
    std::filesystem::remove(path);
}

TEST_CASE("DMG1 rejects damaged input") {
    GridFunction f(16, 1.0);
    std::stringstream buf;
    write_dmg1(buf, f);
    const std::string good = buf.str();

    std::string magic = good;
    magic[0] = 'X';
    std::stringstream a(magic);
    CHECK_THROWS_AS(read_dmg1(a), FormatError);

    std::stringstream b(good.substr(0, good.size() - 5));
    CHECK_THROWS_AS(read_dmg1(b), FormatError);

    std::string size = good;
    size[8] = 17;
    std::stringstream c(size);
    CHECK_THROWS_AS(read_dmg1(c), FormatError);

    std::stringstream d(good + "x");
    CHECK_THROWS_AS(read_dmg1(d), FormatError);

    CHECK_THROWS_AS(load_dmg1("/nonexistent/grid.dmg"), FormatError);
}
