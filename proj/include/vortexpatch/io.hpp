#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortexpatch/dynamics.hpp"
#include "vortexpatch/geometry.hpp"
#include "vortexpatch/stability.hpp"

namespace vortexpatch::io {

using nlohmann::json;

json to_json(const Moments& m);
json to_json(const Disk& d);
json to_json(const StabilityReport& r);
json to_json(const TheoremBound& b);
json to_json(std::span<const std::vector<Point>> loops);
json to_json(const PatchRegion& region);

/// Region from {"loops": [[[x, y], ...], ...]}. Structural problems throw
/// ParseError; geometric ones ValidationError. Orientation is normalized.
PatchRegion region_from_json(const json& j);
PatchRegion read_region(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const json& j);

inline constexpr const char* kSeriesHeader = "t,mass,mx,my,i,q,l1,bound,margin";

/// One CSV row with every value at 17 significant digits.
std::string csv_row(const TimeSeriesRecord& r);
void write_series(std::ostream& os, std::span<const TimeSeriesRecord> records);

} // namespace vortexpatch::io
