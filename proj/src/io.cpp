#include "vortexpatch/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "vortexpatch/errors.hpp"

namespace vortexpatch::io {

json to_json(const Moments& m) {
  return {{"mass", m.mass}, {"momentum", {m.momentum.x, m.momentum.y}}, {"angular", m.angular}};
}

json to_json(const Disk& d) {
  return {{"center", {d.center.x, d.center.y}}, {"radius", d.radius}};
}

json to_json(const StabilityReport& r) {
  return {{"moments", to_json(r.moments)},
          {"q", r.q},
          {"lemma1_gap", r.lemma1_gap},
          {"l1_distance", r.l1_distance},
          {"lemma2_lhs", r.lemma2_lhs},
          {"lemma2_rhs", r.lemma2_rhs},
          {"margin", r.margin}};
}

json to_json(const TheoremBound& b) {
  return {{"sup_weight", b.sup_weight},
          {"initial_l1", b.initial_l1},
          {"bound", b.bound},
          {"q", b.q},
          {"q_cap", b.q_cap}};
}

json to_json(std::span<const std::vector<Point>> loops) {
  json out = json::array();
  for (const auto& l : loops) {
    json pts = json::array();
    for (Point p : l)
      pts.push_back({p.x, p.y});
    out.push_back(std::move(pts));
  }
  return {{"loops", std::move(out)}};
}

json to_json(const PatchRegion& region) {
  std::vector<std::vector<Point>> loops;
  for (const Loop& l : region.loops())
    loops.emplace_back(l.vertices().begin(), l.vertices().end());
  return to_json(std::span<const std::vector<Point>>(loops));
}

PatchRegion region_from_json(const json& j) {
  if (!j.is_object())
    throw ParseError("$: region must be an object");
  for (const auto& [key, _] : j.items())
    if (key != "loops")
      throw ParseError("$." + key + ": unknown key");
  if (!j.contains("loops") || !j["loops"].is_array())
    throw ParseError("$.loops: expected an array of loops");
  std::vector<std::vector<Point>> loops;
  const json& jl = j["loops"];
  for (std::size_t l = 0; l < jl.size(); ++l) {
    const std::string where = "$.loops[" + std::to_string(l) + "]";
    if (!jl[l].is_array())
      throw ParseError(where + ": expected an array of points");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < jl[l].size(); ++i) {
      const json& p = jl[l][i];
      if (!p.is_array() || p.size() != 2 || !p[0].is_number() || !p[1].is_number())
        throw ParseError(where + "[" + std::to_string(i) + "]: expected [x, y]");
      pts.push_back({p[0].get<double>(), p[1].get<double>()});
    }
    loops.push_back(std::move(pts));
  }
  return PatchRegion(loops);
}

PatchRegion read_region(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ParseError("cannot open region file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return region_from_json(j);
}

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

std::string csv_row(const TimeSeriesRecord& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g", r.t,
                r.moments.mass, r.moments.momentum.x, r.moments.momentum.y, r.moments.angular, r.q,
                r.l1, r.bound, r.margin);
  return buf;
}

void write_series(std::ostream& os, std::span<const TimeSeriesRecord> records) {
  os << kSeriesHeader << '\n';
  for (const auto& r : records)
    os << csv_row(r) << '\n';
}

} // namespace vortexpatch::io
