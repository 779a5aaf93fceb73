#pragma once

// JSON forms of slope sets, certificates, symbol profiles and interval chains.
//
// Slope set: {"slopes": [...], "certificate": {"order": N, "chain": [[...], ...],
// "witnesses": [{"gap": [a, b], "v_inf": v, "level": k}, ...]}}; a bare array
// of slopes is accepted on read.

#include "dmax/directions.hpp"
#include "dmax/kernels.hpp"
#include "dmax/verify.hpp"

#include <filesystem>
#include <string>

namespace dmax {

std::string slopes_to_json(const SlopeSet& set);
SlopeSet slopes_from_json(const std::string& text);
void save_slopes(const std::filesystem::path& path, const SlopeSet& set);
SlopeSet load_slopes(const std::filesystem::path& path);

/// [[xi, value], ...]
std::string profile_to_json(const SymbolProfile& profile);

/// {"theta": t, "intervals": [[a, b], ...]}. Reading does not validate the
/// chain conditions, only the shape.
std::string chain_to_json(const IntervalChain& chain);
IntervalChain chain_from_json(const std::string& text);

/// {"base": {"ratio", "count", "anchor"} | {"slopes": [...], "v_inf"},
///  "levels": [{"every_gap": {"ratio", "count", "toward": "left"|"right"},
///              "runs": [{"gap": [a, b], "slopes": [...], "v_inf": v}]}]}
LacunaryRecipe recipe_from_json(const std::string& text);

std::string read_text(const std::filesystem::path& path);
/// Writes via a temporary sibling and rename, so no partial file is left.
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace dmax
