#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "vortexpatch/dynamics.hpp"
#include "vortexpatch/geometry.hpp"

namespace vortexpatch {

enum class ScenarioKind { moments, lemma1, lemma2, prelim, bound, evolve, verify };

std::string_view to_string(ScenarioKind kind);
std::optional<ScenarioKind> scenario_kind_from(std::string_view name);

/// Named fixture with its parameters. Unused fields keep their defaults.
struct FixtureSpec {
  std::string type;  // circle | ellipse | square | equality_case | perturbed_circle
  int n = 512;
  double r = 1.0;
  double a = 0.0;      // ellipse semi-axis / equality-case inner radius
  double b = 0.0;      // ellipse semi-axis
  double side = 2.0;   // square side length
  int mode = 3;        // perturbed_circle angular mode k
  double amplitude = 0.1;
  Point center;
  bool area_matched = true;
};

struct RegionSource {
  std::optional<std::string> file;
  std::optional<FixtureSpec> fixture;
};

struct OracleParams {
  double h = 0.005;
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
};

struct Tolerances {
  double inequality = kNumEps;  // relative slack on static inequalities
  double mc_sigma = 4.0;        // Monte Carlo agreement in standard errors
  double additivity = 1e-3;     // relative gap for the grid additivity check
};

struct ScenarioConfig {
  ScenarioKind kind = ScenarioKind::moments;
  RegionSource region;
  Disk disk{{0.0, 0.0}, 1.0};
  EvolutionParams evolution;
  int snapshot_stride = 0;  // 0 disables region snapshots
  OracleParams oracle;
  Tolerances tolerances;
};

/// Strict JSON config parser. Unknown keys, type mismatches and ambiguous
/// region sources throw ParseError naming the key path. If `kind` is given it
/// overrides (and must agree with) any "kind" key in the text.
ScenarioConfig parse_config(std::string_view text, std::optional<ScenarioKind> kind = {});

/// Canonical form with every default spelled out; parse_config accepts it.
nlohmann::json serialize_config(const ScenarioConfig& config);

/// Materialize the region; relative file paths resolve against `base_dir`.
PatchRegion build_region(const RegionSource& source, const std::filesystem::path& base_dir);
PatchRegion build_fixture(const FixtureSpec& fixture);

} // namespace vortexpatch
