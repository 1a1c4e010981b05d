#include "vortexpatch/scenario.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "vortexpatch/errors.hpp"
#include "vortexpatch/io.hpp"
#include "vortexpatch/oracle.hpp"
#include "vortexpatch/stability.hpp"

namespace vortexpatch {

using nlohmann::json;

namespace {

double perimeter(const PatchRegion& region) {
  double p = 0.0;
  for (const Loop& l : region.loops())
    for (std::size_t i = 0; i < l.size(); ++i)
      p += norm(l[(i + 1) % l.size()] - l[i]);
  return p;
}

double max_distance(const PatchRegion& region, Point from) {
  double d = 0.0;
  for (const Loop& l : region.loops())
    for (Point p : l.vertices())
      d = std::max(d, norm(p - from));
  return d;
}

bool within(double lhs, double rhs, double rel) {
  return lhs <= rhs + rel * std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

json check(const std::string& name, double exact, double oracle, double tol) {
  return {{"name", name},
          {"exact", exact},
          {"oracle", oracle},
          {"tolerance", tol},
          {"pass", std::abs(exact - oracle) <= tol}};
}

json run_verify(const PatchRegion& region, const ScenarioConfig& cfg) {
  const double h = cfg.oracle.h;
  const Disk& disk = cfg.disk;
  const auto grid = oracle::grid_for(region, disk, h);
  const double per = perimeter(region);
  const double reach = max_distance(region, {0.0, 0.0});

  // Each boundary-cut cell misclassifies at most h^2 of area, and at most
  // about sqrt(2) * perimeter / h cells are cut.
  const double area_tol = 2.0 * per * h;
  const Moments exact = region_moments(region);
  const Moments grid_m = oracle::grid_moments(region, grid);

  json checks = json::array();
  checks.push_back(check("mass", exact.mass, grid_m.mass, area_tol));
  checks.push_back(check("momentum_x", exact.momentum.x, grid_m.momentum.x, area_tol * reach));
  checks.push_back(check("momentum_y", exact.momentum.y, grid_m.momentum.y, area_tol * reach));
  checks.push_back(check("angular", exact.angular, grid_m.angular, area_tol * reach * reach));

  const double rr = disk.radius * disk.radius;
  const double far = max_distance(region, disk.center);
  const double weight_cap = std::max(rr, far * far);
  const double q_tol = 2.0 * (per + 2.0 * kPi * disk.radius) * h * weight_cap;
  const double q = q_value(region, disk).q;
  checks.push_back(check("q_direct", q, oracle::grid_q_direct(region, disk, grid), q_tol));

  const auto add = oracle::grid_q_additivity(region, disk, grid);
  checks.push_back(check("q_additivity", add.rhs, add.lhs,
                         cfg.tolerances.additivity * std::max(add.rhs, 1e-300)));

  const auto mc = oracle::mc_symmetric_difference(region, disk,
                                                  {cfg.oracle.samples, cfg.oracle.seed});
  json mc_check = check("symmetric_difference_mc", symmetric_difference_area(region, disk),
                        mc.estimate, cfg.tolerances.mc_sigma * mc.stderr_);
  mc_check["stderr"] = mc.stderr_;
  checks.push_back(mc_check);

  bool pass = true;
  for (const auto& c : checks)
    pass = pass && c["pass"].get<bool>();
  return {{"grid", {{"h", h}, {"lo", {grid.lo.x, grid.lo.y}}, {"hi", {grid.hi.x, grid.hi.y}}}},
          {"checks", checks},
          {"pass", pass}};
}

ExitCode run_evolve(const PatchRegion& region, const ScenarioConfig& cfg,
                    const std::filesystem::path& out_dir, std::ostream& log) {
  const DiscretizedPatch patch(region);
  const long stride = cfg.snapshot_stride;
  StepObserver observer;
  if (stride > 0) {
    observer = [&](const DiscretizedPatch& p, long step) {
      if (step % stride != 0)
        return;
      std::ostringstream name;
      name << "region_" << std::setw(6) << std::setfill('0') << step << ".json";
      io::write_json(out_dir / name.str(), io::to_json(std::span(p.loops())));
    };
  }
  const EvolutionResult res = evolve(patch, cfg.disk, cfg.evolution, observer);

  std::ofstream csv(out_dir / "series.csv");
  if (!csv)
    throw std::runtime_error("cannot write series.csv");
  io::write_series(csv, res.records);

  log << "steps " << res.steps_taken << ", records " << res.records.size() << ", remesh events "
      << res.remesh_events << "\n";
  log << "drift: mass " << res.max_mass_drift << ", momentum " << res.max_momentum_drift
      << ", angular " << res.max_angular_drift << ", q " << res.max_q_drift << "\n";
  if (res.aborted) {
    log << "aborted: " << res.diagnostic << "\n";
    return kExitViolation;
  }
  if (res.first_violation >= 0) {
    const auto& r = res.records[static_cast<std::size_t>(res.first_violation)];
    log << "theorem bound violated at record " << res.first_violation << " (t=" << r.t
        << "): l1^2=" << r.l1 * r.l1 << " > bound=" << r.bound << "\n";
    return kExitViolation;
  }
  if (!res.conserved) {
    log << res.diagnostic << "\n";
    return kExitViolation;
  }
  return kExitOk;
}

} // namespace

ExitCode run_scenario(const ScenarioConfig& cfg, const std::filesystem::path& config_dir,
                      const std::filesystem::path& out_dir, std::ostream& log) {
  const PatchRegion region = build_region(cfg.region, config_dir);
  std::filesystem::create_directories(out_dir);

  if (cfg.kind == ScenarioKind::evolve)
    return run_evolve(region, cfg, out_dir, log);

  const double tol = cfg.tolerances.inequality;
  json report{{"kind", std::string(to_string(cfg.kind))}};
  bool pass = true;
  switch (cfg.kind) {
  case ScenarioKind::moments: {
    const Moments m = region_moments(region);
    report["moments"] = io::to_json(m);
    report["best_fit_disk"] = io::to_json(best_fit_disk(m));
    break;
  }
  case ScenarioKind::lemma1: {
    const Moments m = region_moments(region);
    const double gap = lemma1_gap(region);
    report["moments"] = io::to_json(m);
    report["lemma1_gap"] = gap;
    report["best_fit_disk"] = io::to_json(best_fit_disk(m));
    pass = gap >= -tol * m.angular;
    break;
  }
  case ScenarioKind::lemma2: {
    const StabilityReport r = lemma2_check(region, cfg.disk);
    report["disk"] = io::to_json(cfg.disk);
    report["report"] = io::to_json(r);
    pass = within(r.lemma2_lhs, r.lemma2_rhs, tol);
    break;
  }
  case ScenarioKind::prelim: {
    const PrelimCheck c = prelim_check(region, cfg.disk);
    report["disk"] = io::to_json(cfg.disk);
    report["lhs"] = c.lhs;
    report["rhs"] = c.rhs;
    pass = within(c.lhs, c.rhs, tol);
    break;
  }
  case ScenarioKind::bound: {
    const TheoremBound b = theorem_bound(region, cfg.disk);
    const double lhs = b.initial_l1 * b.initial_l1;
    report["disk"] = io::to_json(cfg.disk);
    report["theorem_bound"] = io::to_json(b);
    report["lemma2_lhs"] = lhs;
    pass = within(lhs, b.bound, tol) && within(b.q, b.q_cap, tol);
    break;
  }
  case ScenarioKind::verify: {
    report["disk"] = io::to_json(cfg.disk);
    json v = run_verify(region, cfg);
    pass = v["pass"].get<bool>();
    report.update(v);
    break;
  }
  case ScenarioKind::evolve:
    break;
  }
  report["pass"] = pass;
  io::write_json(out_dir / "report.json", report);
  if (!pass)
    log << to_string(cfg.kind) << ": check failed, see " << (out_dir / "report.json").string()
        << "\n";
  return pass ? kExitOk : kExitViolation;
}

ExitCode run_config_file(ScenarioKind kind, const std::filesystem::path& config_path,
                         const std::filesystem::path& out_dir, std::ostream& log) {
  try {
    std::ifstream in(config_path);
    if (!in) {
      log << "error: cannot open config " << config_path.string() << "\n";
      return kExitParse;
    }
    std::stringstream text;
    text << in.rdbuf();
    const ScenarioConfig cfg = parse_config(text.str(), kind);
    return run_scenario(cfg, config_path.parent_path(), out_dir, log);
  } catch (const ParseError& e) {
    log << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const ValidationError& e) {
    log << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    log << "validation error: " << e.what() << "\n";
    return kExitValidation;
  }
}

} // namespace vortexpatch
