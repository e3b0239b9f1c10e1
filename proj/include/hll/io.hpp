#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "hll/dimension.hpp"
#include "hll/holder.hpp"
#include "hll/level.hpp"
#include "hll/simplicial.hpp"

namespace hll {

using Json = nlohmann::ordered_json;

// Binary grid file, magic "HLGRID01": p (u8), N (u8), bounds as 2p
// little-endian f64 (lo then hi per axis), then the row-major bitset
// padded to whole bytes.
void write_grid(const GridSet& g, const std::string& path);
GridSet read_grid(const std::string& path);

// Binary function file, magic "HLFUN001": p (u8), N (u8), alpha and c as
// f64, then the row-major vertex values as f64.
void write_function(const GridFunction& f, const std::string& path);
GridFunction read_function(const std::string& path);

Json to_json(const DimEstimate& est);
Json to_json(const SimplicialInterpolant& interp);

// Columns: r, a_N per scale, slope, residual, empty_flag.
std::string profile_csv_string(const LevelProfile& profile);
void write_profile_csv(const LevelProfile& profile, const std::string& path);

void write_text(const std::string& path, const std::string& content);
std::string read_text(const std::string& path);

}  // namespace hll
