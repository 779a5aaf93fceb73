#pragma once

// Scale lattice flag shared by the command-line tools:
//   "dyadic"      dyadic half-widths 1, 2, 4, ..., n/4 in both axes
//   "dyadic:K"    the same up to K
//   "1x1,2x4,..." explicit (d1, d2) pairs

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dmax::tools {

inline std::vector<std::pair<std::size_t, std::size_t>> parse_scales(const std::string& spec, std::size_t n) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    auto dyadic = [&](std::size_t max) {
        for (std::size_t a = 1; a <= max; a *= 2) {
            for (std::size_t b = 1; b <= max; b *= 2) out.emplace_back(a, b);
        }
    };
    if (spec == "dyadic") {
        dyadic(n / 4 > 0 ? n / 4 : 1);
        return out;
    }
    if (spec.rfind("dyadic:", 0) == 0) {
        dyadic(std::stoul(spec.substr(7)));
        if (out.empty()) throw std::invalid_argument("dyadic scale bound must be >= 1");
        return out;
    }
    std::size_t start = 0;
    while (start <= spec.size()) {
        const std::size_t comma = spec.find(',', start);
        const std::string item = spec.substr(start, comma - start);
        const std::size_t x = item.find('x');
        if (x == std::string::npos || x == 0 || x + 1 == item.size()) {
            throw std::invalid_argument("bad scale \"" + item + "\"; expected D1xD2");
        }
        std::size_t used = 0;
        const std::size_t d1 = std::stoul(item.substr(0, x), &used);
        if (used != x) throw std::invalid_argument("bad scale \"" + item + "\"");
        const std::size_t d2 = std::stoul(item.substr(x + 1), &used);
        if (used != item.size() - x - 1) throw std::invalid_argument("bad scale \"" + item + "\"");
        out.emplace_back(d1, d2);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace dmax::tools
