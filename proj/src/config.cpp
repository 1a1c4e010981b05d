#include "vortexpatch/config.hpp"

#include <array>
#include <cmath>
#include <initializer_list>

#include "vortexpatch/errors.hpp"
#include "vortexpatch/io.hpp"
#include "vortexpatch/stability.hpp"

namespace vortexpatch {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<ScenarioKind, std::string_view>, 7> kKinds{{
    {ScenarioKind::moments, "moments"},
    {ScenarioKind::lemma1, "lemma1"},
    {ScenarioKind::lemma2, "lemma2"},
    {ScenarioKind::prelim, "prelim"},
    {ScenarioKind::bound, "bound"},
    {ScenarioKind::evolve, "evolve"},
    {ScenarioKind::verify, "verify"},
}};

// A JSON object plus its key path, with typed accessors that report the
// path on failure.
class Node {
public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object())
      throw ParseError(path_ + ": expected an object");
  }

  void allow(std::initializer_list<std::string_view> keys) const {
    for (const auto& [key, _] : j_.items()) {
      bool ok = false;
      for (auto k : keys)
        ok = ok || k == key;
      if (!ok)
        throw ParseError(path_ + "." + key + ": unknown key");
    }
  }

  [[nodiscard]] bool has(const char* key) const { return j_.contains(key); }
  [[nodiscard]] std::string at(const char* key) const { return path_ + "." + key; }

  [[nodiscard]] Node child(const char* key) const { return Node(j_[key], at(key)); }

  void get(const char* key, double& out) const {
    if (!has(key))
      return;
    if (!j_[key].is_number())
      throw ParseError(at(key) + ": expected a number");
    out = j_[key].get<double>();
  }
  void get(const char* key, int& out) const {
    if (!has(key))
      return;
    if (!j_[key].is_number_integer())
      throw ParseError(at(key) + ": expected an integer");
    out = j_[key].get<int>();
  }
  void get(const char* key, std::uint64_t& out) const {
    if (!has(key))
      return;
    if (!j_[key].is_number_unsigned())
      throw ParseError(at(key) + ": expected a non-negative integer");
    out = j_[key].get<std::uint64_t>();
  }
  void get(const char* key, bool& out) const {
    if (!has(key))
      return;
    if (!j_[key].is_boolean())
      throw ParseError(at(key) + ": expected a boolean");
    out = j_[key].get<bool>();
  }
  void get(const char* key, std::string& out) const {
    if (!has(key))
      return;
    if (!j_[key].is_string())
      throw ParseError(at(key) + ": expected a string");
    out = j_[key].get<std::string>();
  }
  void get(const char* key, Point& out) const {
    if (!has(key))
      return;
    const json& v = j_[key];
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
      throw ParseError(at(key) + ": expected [x, y]");
    out = {v[0].get<double>(), v[1].get<double>()};
  }

private:
  const json& j_;
  std::string path_;
};

FixtureSpec parse_fixture(const Node& f) {
  FixtureSpec spec;
  if (!f.has("type"))
    throw ParseError(f.at("type") + ": missing fixture type");
  f.get("type", spec.type);
  if (spec.type == "circle") {
    f.allow({"type", "n", "r", "center", "area_matched"});
  } else if (spec.type == "ellipse") {
    f.allow({"type", "n", "a", "b", "center"});
  } else if (spec.type == "square") {
    f.allow({"type", "side", "center"});
  } else if (spec.type == "equality_case") {
    f.allow({"type", "n", "r", "a"});
    spec.a = std::sqrt(0.5);
  } else if (spec.type == "perturbed_circle") {
    f.allow({"type", "n", "r", "mode", "amplitude"});
  } else {
    throw ParseError(f.at("type") + ": unknown fixture '" + spec.type + "'");
  }
  f.get("n", spec.n);
  f.get("r", spec.r);
  f.get("a", spec.a);
  f.get("b", spec.b);
  f.get("side", spec.side);
  f.get("mode", spec.mode);
  f.get("amplitude", spec.amplitude);
  f.get("center", spec.center);
  f.get("area_matched", spec.area_matched);
  if (spec.type == "ellipse" && (!f.has("a") || !f.has("b")))
    throw ParseError(f.at("a") + ": ellipse needs both a and b");
  return spec;
}

json fixture_json(const FixtureSpec& f) {
  json j{{"type", f.type}};
  const json center{f.center.x, f.center.y};
  if (f.type == "circle")
    j.update({{"n", f.n}, {"r", f.r}, {"center", center}, {"area_matched", f.area_matched}});
  else if (f.type == "ellipse")
    j.update({{"n", f.n}, {"a", f.a}, {"b", f.b}, {"center", center}});
  else if (f.type == "square")
    j.update({{"side", f.side}, {"center", center}});
  else if (f.type == "equality_case")
    j.update({{"n", f.n}, {"r", f.r}, {"a", f.a}});
  else if (f.type == "perturbed_circle")
    j.update({{"n", f.n}, {"r", f.r}, {"mode", f.mode}, {"amplitude", f.amplitude}});
  return j;
}

} // namespace

std::string_view to_string(ScenarioKind kind) {
  for (const auto& [k, name] : kKinds)
    if (k == kind)
      return name;
  return "unknown";
}

std::optional<ScenarioKind> scenario_kind_from(std::string_view name) {
  for (const auto& [k, n] : kKinds)
    if (n == name)
      return k;
  return std::nullopt;
}

ScenarioConfig parse_config(std::string_view text, std::optional<ScenarioKind> kind) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("$: invalid JSON: ") + e.what());
  }
  const Node top(root, "$");
  top.allow({"kind", "region", "disk", "evolution", "output", "oracle", "tolerances"});

  ScenarioConfig cfg;
  if (top.has("kind")) {
    std::string name;
    top.get("kind", name);
    const auto parsed = scenario_kind_from(name);
    if (!parsed)
      throw ParseError(top.at("kind") + ": unknown kind '" + name + "'");
    if (kind && *kind != *parsed)
      throw ParseError(top.at("kind") + ": '" + name + "' conflicts with the subcommand");
    cfg.kind = *parsed;
  } else if (!kind) {
    throw ParseError(top.at("kind") + ": missing");
  }
  if (kind)
    cfg.kind = *kind;

  if (!top.has("region"))
    throw ParseError(top.at("region") + ": missing");
  {
    const Node region = top.child("region");
    region.allow({"file", "fixture", "strength"});
    if (region.has("file") && region.has("fixture"))
      throw ParseError(region.at("file") + ": both file and fixture given (ambiguous)");
    if (region.has("file")) {
      std::string file;
      region.get("file", file);
      cfg.region.file = file;
    } else if (region.has("fixture")) {
      cfg.region.fixture = parse_fixture(region.child("fixture"));
    } else {
      throw ParseError(region.at("fixture") + ": region needs a file or a fixture");
    }
    double strength = 1.0;
    region.get("strength", strength);
    if (strength != DiscretizedPatch::strength)
      throw DomainError(region.at("strength") + ": only unit-strength patches are supported");
  }

  if (top.has("disk")) {
    const Node d = top.child("disk");
    d.allow({"radius", "center"});
    double r = cfg.disk.radius;
    Point c = cfg.disk.center;
    d.get("radius", r);
    d.get("center", c);
    cfg.disk = Disk(c, r);
  }

  if (top.has("evolution")) {
    const Node e = top.child("evolution");
    e.allow({"dt", "t_end", "s_min", "s_max", "output_stride", "c_cfl", "remesh",
             "max_step_halvings", "conservation_tol", "drift_allowance"});
    auto& p = cfg.evolution;
    e.get("dt", p.dt);
    e.get("t_end", p.t_end);
    e.get("s_min", p.s_min);
    e.get("s_max", p.s_max);
    e.get("output_stride", p.output_stride);
    e.get("c_cfl", p.c_cfl);
    e.get("remesh", p.remesh);
    e.get("max_step_halvings", p.max_step_halvings);
    e.get("conservation_tol", p.conservation_tol);
    e.get("drift_allowance", p.drift_allowance);
  }

  if (top.has("output")) {
    const Node o = top.child("output");
    o.allow({"snapshot_stride"});
    o.get("snapshot_stride", cfg.snapshot_stride);
  }

  if (top.has("oracle")) {
    const Node o = top.child("oracle");
    o.allow({"h", "samples", "seed"});
    o.get("h", cfg.oracle.h);
    o.get("samples", cfg.oracle.samples);
    o.get("seed", cfg.oracle.seed);
  }

  if (top.has("tolerances")) {
    const Node t = top.child("tolerances");
    t.allow({"inequality", "mc_sigma", "additivity"});
    t.get("inequality", cfg.tolerances.inequality);
    t.get("mc_sigma", cfg.tolerances.mc_sigma);
    t.get("additivity", cfg.tolerances.additivity);
  }
  return cfg;
}

json serialize_config(const ScenarioConfig& c) {
  json region = json::object();
  if (c.region.file)
    region["file"] = *c.region.file;
  if (c.region.fixture)
    region["fixture"] = fixture_json(*c.region.fixture);
  region["strength"] = DiscretizedPatch::strength;
  const auto& e = c.evolution;
  return {
      {"kind", std::string(to_string(c.kind))},
      {"region", region},
      {"disk", io::to_json(c.disk)},
      {"evolution",
       {{"dt", e.dt},
        {"t_end", e.t_end},
        {"s_min", e.s_min},
        {"s_max", e.s_max},
        {"output_stride", e.output_stride},
        {"c_cfl", e.c_cfl},
        {"remesh", e.remesh},
        {"max_step_halvings", e.max_step_halvings},
        {"conservation_tol", e.conservation_tol},
        {"drift_allowance", e.drift_allowance}}},
      {"output", {{"snapshot_stride", c.snapshot_stride}}},
      {"oracle", {{"h", c.oracle.h}, {"samples", c.oracle.samples}, {"seed", c.oracle.seed}}},
      {"tolerances",
       {{"inequality", c.tolerances.inequality},
        {"mc_sigma", c.tolerances.mc_sigma},
        {"additivity", c.tolerances.additivity}}},
  };
}

PatchRegion build_fixture(const FixtureSpec& f) {
  if (f.type == "circle")
    return regular_ngon(f.n, Disk(f.center, f.r), f.area_matched);
  if (f.type == "equality_case")
    return equality_case_region(f.r, f.a, f.n);
  if (f.type == "square") {
    if (!(f.side > 0.0))
      throw DomainError("square side must be positive");
    const double h = 0.5 * f.side;
    const Point c = f.center;
    return PatchRegion(std::vector<std::vector<Point>>{
        {c + Vec2{-h, -h}, c + Vec2{h, -h}, c + Vec2{h, h}, c + Vec2{-h, h}}});
  }
  if (f.n < 3)
    throw DomainError("fixture needs n >= 3");
  std::vector<Point> v(static_cast<std::size_t>(f.n));
  if (f.type == "ellipse") {
    if (!(f.a > 0.0) || !(f.b > 0.0))
      throw DomainError("ellipse semi-axes must be positive");
    for (int k = 0; k < f.n; ++k) {
      const double t = 2.0 * kPi * k / f.n;
      v[static_cast<std::size_t>(k)] = f.center + Vec2{f.a * std::cos(t), f.b * std::sin(t)};
    }
    return PatchRegion(std::vector<std::vector<Point>>{v});
  }
  if (f.type == "perturbed_circle") {
    if (!(f.r > 0.0) || !(std::abs(f.amplitude) < f.r))
      throw DomainError("perturbed circle needs |amplitude| < r");
    for (int k = 0; k < f.n; ++k) {
      const double t = 2.0 * kPi * k / f.n;
      const double rho = f.r + f.amplitude * std::cos(f.mode * t);
      v[static_cast<std::size_t>(k)] = {rho * std::cos(t), rho * std::sin(t)};
    }
    return PatchRegion(std::vector<std::vector<Point>>{v});
  }
  throw DomainError("unknown fixture '" + f.type + "'");
}

PatchRegion build_region(const RegionSource& source, const std::filesystem::path& base_dir) {
  if (source.fixture)
    return build_fixture(*source.fixture);
  if (source.file) {
    std::filesystem::path p(*source.file);
    if (p.is_relative())
      p = base_dir / p;
    return io::read_region(p);
  }
  throw DomainError("region source is empty");
}

} // namespace vortexpatch
