#include "dmax/serialize.hpp"

#include "dmax/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace dmax {

using nlohmann::json;

namespace {

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("invalid JSON: ") + e.what());
    }
}

template <typename F>
auto guarded(F&& f) {
    try {
        return f();
    } catch (const json::exception& e) {
        throw FormatError(std::string("unexpected JSON shape: ") + e.what());
    }
}

std::vector<double> numbers(const json& j) {
    if (!j.is_array()) throw FormatError("expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw FormatError("expected a number");
        out.push_back(v.get<double>());
    }
    return out;
}

std::pair<double, double> pair_of(const json& j) {
    const auto v = numbers(j);
    if (v.size() != 2) throw FormatError("expected a pair [a, b]");
    return {v[0], v[1]};
}

GapEnd gap_end(const json& j) {
    const auto s = j.get<std::string>();
    if (s == "left") return GapEnd::left;
    if (s == "right") return GapEnd::right;
    throw FormatError("toward must be \"left\" or \"right\"");
}

}  // namespace

std::string slopes_to_json(const SlopeSet& set) {
    json j;
    j["slopes"] = std::vector<double>(set.slopes().begin(), set.slopes().end());
    if (const auto& cert = set.certificate()) {
        json c;
        c["order"] = cert->order();
        c["chain"] = cert->chain;
        c["witnesses"] = json::array();
        for (const auto& w : cert->witnesses) {
            c["witnesses"].push_back({{"gap", {w.gap_lo, w.gap_hi}}, {"v_inf", w.v_inf}, {"level", w.level}});
        }
        j["certificate"] = std::move(c);
    }
    return j.dump(2) + "\n";
}

SlopeSet slopes_from_json(const std::string& text) {
    const json j = parse(text);
    return guarded([&] {
        if (j.is_array()) return SlopeSet(numbers(j));
        if (!j.is_object() || !j.contains("slopes")) throw FormatError("expected {\"slopes\": [...]}");
        auto slopes = numbers(j.at("slopes"));
        if (!j.contains("certificate") || j.at("certificate").is_null()) return SlopeSet(std::move(slopes));
        const json& c = j.at("certificate");
        LacunaryCertificate cert;
        for (const auto& level : c.at("chain")) cert.chain.push_back(numbers(level));
        for (const auto& w : c.at("witnesses")) {
            const auto [lo, hi] = pair_of(w.at("gap"));
            cert.witnesses.push_back({w.at("level").get<std::size_t>(), lo, hi, w.at("v_inf").get<double>()});
        }
        if (c.contains("order") && c.at("order").get<std::size_t>() != cert.order()) {
            throw FormatError("certificate order does not match its chain length");
        }
        return SlopeSet(std::move(slopes), std::move(cert));
    });
}

void save_slopes(const std::filesystem::path& path, const SlopeSet& set) { write_text(path, slopes_to_json(set)); }

SlopeSet load_slopes(const std::filesystem::path& path) { return slopes_from_json(read_text(path)); }

std::string profile_to_json(const SymbolProfile& profile) {
    json j = json::array();
    for (const auto& [xi, v] : profile.breakpoints()) j.push_back({xi, v});
    return j.dump();
}

std::string chain_to_json(const IntervalChain& chain) {
    json j;
    j["theta"] = chain.theta;
    j["intervals"] = json::array();
    for (const auto& iv : chain.intervals) j["intervals"].push_back({iv.lo, iv.hi});
    return j.dump(2) + "\n";
}

IntervalChain chain_from_json(const std::string& text) {
    const json j = parse(text);
    return guarded([&] {
        IntervalChain chain;
        chain.theta = j.at("theta").get<double>();
        for (const auto& iv : j.at("intervals")) {
            const auto [lo, hi] = pair_of(iv);
            if (!(lo > 0.0 && lo < hi && hi < 1.0)) throw FormatError("chain intervals must satisfy 0 < a < b < 1");
            chain.intervals.emplace_back(lo, hi);
        }
        return chain;
    });
}

LacunaryRecipe recipe_from_json(const std::string& text) {
    const json j = parse(text);
    return guarded([&] {
        LacunaryRecipe recipe;
        const json& base = j.at("base");
        if (base.contains("slopes")) {
            recipe.base = numbers(base.at("slopes"));
            recipe.base_v_inf = base.at("v_inf").get<double>();
        } else {
            recipe = LacunaryRecipe::geometric(base.at("ratio").get<double>(), base.at("count").get<std::size_t>(),
                                               base.at("anchor").get<double>());
        }
        if (j.contains("levels")) {
            for (const auto& lv : j.at("levels")) {
                InsertionLevel level;
                if (lv.contains("every_gap")) {
                    const json& g = lv.at("every_gap");
                    level.every_gap = GapRule{g.at("ratio").get<double>(), g.at("count").get<std::size_t>(),
                                              g.contains("toward") ? gap_end(g.at("toward")) : GapEnd::left};
                }
                if (lv.contains("runs")) {
                    for (const auto& r : lv.at("runs")) {
                        const auto [lo, hi] = pair_of(r.at("gap"));
                        level.runs.push_back({lo, hi, numbers(r.at("slopes")), r.at("v_inf").get<double>()});
                    }
                }
                recipe.levels.push_back(std::move(level));
            }
        }
        return recipe;
    });
}

std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw FormatError("cannot open " + path.string() + " for writing");
        out << text;
        if (!out) throw FormatError("write failed: " + path.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace dmax
