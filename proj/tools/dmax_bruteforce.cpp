// Reference oracle: direct-summation sheared maximal average of one slope.

#include "bruteforce_average.hpp"
#include "scale_spec.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"Brute-force parallelogram maximal average (reference oracle)"};
    std::string input, output, scales = "dyadic";
    double slope = 0.0;
    app.add_option("--input", input, "DMG1 input grid")->required();
    app.add_option("--slope", slope, "shear slope alpha, |alpha| <= 1")->required();
    app.add_option("--scales", scales, "dyadic | dyadic:K | D1xD2,...");
    app.add_option("-o,--output", output, "DMG1 output grid")->required();
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    try {
        if (!(std::abs(slope) <= 1.0)) throw std::invalid_argument("slope must satisfy |alpha| <= 1");
        const auto f = dmax::load_dmg1(input);
        auto lattice = dmax::tools::parse_scales(scales, f.n());
        for (auto& [a, b] : lattice) {
            if (a == 0 || b == 0) throw std::invalid_argument("half-widths must be >= 1");
            a = std::min(a, f.n() / 2);
            b = std::min(b, f.n() / 2);
        }
        const auto out = dmax::reference::bruteforce_max(f, slope, lattice);
        dmax::save_dmg1(output, out);
    } catch (const std::exception& e) {
        std::cerr << "dmax_bruteforce: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
