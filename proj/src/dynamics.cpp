#include "vortexpatch/dynamics.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <sstream>

#include "vortexpatch/errors.hpp"

namespace vortexpatch {

DiscretizedPatch::DiscretizedPatch(const PatchRegion& region, double time) : time_(time) {
  for (const Loop& l : region.loops()) {
    if (l.size() < kMinMarkersPerLoop)
      throw ValidationError("discretized patch loops need at least " +
                            std::to_string(kMinMarkersPerLoop) + " markers");
    loops_.emplace_back(l.vertices().begin(), l.vertices().end());
  }
  rebuild_flat();
}

DiscretizedPatch DiscretizedPatch::from_loops(std::vector<std::vector<Point>> loops, double time) {
  DiscretizedPatch p;
  p.loops_ = std::move(loops);
  p.time_ = time;
  p.rebuild_flat();
  return p;
}

void DiscretizedPatch::rebuild_flat() {
  markers_.clear();
  offsets_.assign(1, 0);
  for (const auto& l : loops_) {
    markers_.insert(markers_.end(), l.begin(), l.end());
    offsets_.push_back(markers_.size());
  }
}

PatchRegion DiscretizedPatch::to_region() const { return PatchRegion(loops_); }

double DiscretizedPatch::mean_spacing() const {
  double total = 0.0;
  std::size_t count = 0;
  for (const auto& l : loops_)
    for (std::size_t i = 0; i < l.size(); ++i, ++count)
      total += norm(l[(i + 1) % l.size()] - l[i]);
  return count ? total / static_cast<double>(count) : 0.0;
}

Vec2 boundary_velocity(const DiscretizedPatch& patch, Point x) {
  return kernels::velocity_at(patch.view(), x);
}

std::vector<Vec2> self_velocities(const DiscretizedPatch& patch) {
  std::vector<Vec2> u(patch.marker_count());
  kernels::induced_velocity(patch.view(), patch.markers(), u);
  return u;
}

std::vector<Vec2> self_velocities_serial(const DiscretizedPatch& patch) {
  std::vector<Vec2> u(patch.marker_count());
  kernels::induced_velocity_serial(patch.view(), patch.markers(), u);
  return u;
}

namespace {

std::vector<std::vector<Point>> displaced(const DiscretizedPatch& base, std::span<const Vec2> u,
                                          double scale) {
  std::vector<std::vector<Point>> out = base.loops();
  std::size_t k = 0;
  for (auto& loop : out)
    for (auto& p : loop)
      p += scale * u[k++];
  return out;
}

double strain_rate(const DiscretizedPatch& patch, std::span<const Vec2> u) {
  double worst = 0.0;
  std::size_t k = 0;
  for (const auto& loop : patch.loops()) {
    const std::size_t n = loop.size();
    for (std::size_t i = 0; i < n; ++i)
      worst = std::max(worst, norm(u[k + (i + 1) % n] - u[k + i]));
    k += n;
  }
  return worst;
}

double cfl_from(const DiscretizedPatch& patch, std::span<const Vec2> u, double s_min,
                double c_cfl) {
  const double rate = strain_rate(patch, u);
  return rate > 0.0 ? c_cfl * s_min / rate : std::numeric_limits<double>::infinity();
}

DiscretizedPatch step_rk4_from(const DiscretizedPatch& patch, const std::vector<Vec2>& k1,
                               double dt) {
  const auto s1 = DiscretizedPatch::from_loops(displaced(patch, k1, 0.5 * dt), patch.time());
  const auto k2 = self_velocities(s1);
  const auto s2 = DiscretizedPatch::from_loops(displaced(patch, k2, 0.5 * dt), patch.time());
  const auto k3 = self_velocities(s2);
  const auto s3 = DiscretizedPatch::from_loops(displaced(patch, k3, dt), patch.time());
  const auto k4 = self_velocities(s3);

  std::vector<Vec2> incr(k1.size());
  for (std::size_t i = 0; i < incr.size(); ++i)
    incr[i] = (1.0 / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  auto loops = displaced(patch, incr, dt);

  for (std::size_t l = 0; l < loops.size(); ++l) {
    const auto& v = loops[l];
    for (std::size_t i = 0; i < v.size(); ++i)
      if (norm(v[(i + 1) % v.size()] - v[i]) <= kGeomEps) {
        std::ostringstream os;
        os << "marker collision at t=" << patch.time() + dt << " (loop " << l << ", marker " << i
           << ")";
        throw StepRejected(os.str());
      }
  }
  if (!is_simple(loops)) {
    std::ostringstream os;
    os << "boundary self-intersection at t=" << patch.time() + dt;
    throw StepRejected(os.str());
  }
  return DiscretizedPatch::from_loops(std::move(loops), patch.time() + dt);
}

} // namespace

double strain_cfl_limit(const DiscretizedPatch& patch, double s_min, double c_cfl) {
  return cfl_from(patch, self_velocities(patch), s_min, c_cfl);
}

DiscretizedPatch step_rk4(const DiscretizedPatch& patch, double dt) {
  if (dt == 0.0)
    return patch;
  return step_rk4_from(patch, self_velocities(patch), dt);
}

namespace {

// Lagrange cubic through (t[i], p[i]) evaluated at s.
Point cubic_at(const std::array<double, 4>& t, const std::array<Point, 4>& p, double s) {
  Point out;
  for (int i = 0; i < 4; ++i) {
    double w = 1.0;
    for (int j = 0; j < 4; ++j)
      if (j != i)
        w *= (s - t[j]) / (t[i] - t[j]);
    out += w * p[i];
  }
  return out;
}

// Cubic through the neighbours of edge (i, i+1), parametrized by chord length
// with the edge spanning [0, |p_{i+1} - p_i|].
struct EdgeCubic {
  std::array<double, 4> t;
  std::array<Point, 4> p;

  EdgeCubic(const std::vector<Point>& v, std::size_t i) {
    const std::size_t n = v.size();
    p = {v[(i + n - 1) % n], v[i], v[(i + 1) % n], v[(i + 2) % n]};
    t[1] = 0.0;
    t[0] = -norm(p[1] - p[0]);
    t[2] = norm(p[2] - p[1]);
    t[3] = t[2] + norm(p[3] - p[2]);
  }
  [[nodiscard]] Point at_fraction(double f) const { return cubic_at(t, p, f * t[2]); }
};

double loop_area(const std::vector<Point>& v) {
  double s = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    s += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * s;
}

// Shift the touched markers along their local normals by a common offset so
// the loop area returns to `target`. Area is at most quadratic in the offset,
// so a few Newton steps reach rounding level.
void restore_area(std::vector<Point>& v, const std::vector<char>& touched, double target) {
  const std::size_t n = v.size();
  std::vector<Vec2> normal(n);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    if (!touched[i])
      continue;
    const Vec2 chord = v[(i + 1) % n] - v[(i + n - 1) % n];
    const double len = norm(chord);
    if (len > 0.0) {
      normal[i] = {chord.y / len, -chord.x / len};
      any = true;
    }
  }
  if (!any)
    return;
  for (int iter = 0; iter < 4; ++iter) {
    const double f = loop_area(v) - target;
    if (std::abs(f) <= 1e-15 * std::abs(target))
      break;
    double df = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (touched[i]) {
        const Vec2 chord = v[(i + 1) % n] - v[(i + n - 1) % n];
        df += 0.5 * dot(normal[i], Vec2{chord.y, -chord.x});
      }
    if (df == 0.0)
      break;
    const double mu = -f / df;
    for (std::size_t i = 0; i < n; ++i)
      if (touched[i])
        v[i] += mu * normal[i];
  }
}

bool remesh_loop(std::vector<Point>& v, double s_min, double s_max, std::size_t& events) {
  const double target = loop_area(v);
  std::vector<char> touched(v.size(), 0);
  bool changed = false;

  for (std::size_t i = 0; i < v.size() && v.size() > kMinMarkersPerLoop;) {
    const std::size_t j = (i + 1) % v.size();
    if (norm(v[j] - v[i]) >= s_min) {
      ++i;
      continue;
    }
    const Point merged = EdgeCubic(v, i).at_fraction(0.5);
    if (j == 0) {
      v[i] = merged;
      touched[i] = 1;
      v.erase(v.begin());
      touched.erase(touched.begin());
    } else {
      v[i] = merged;
      touched[i] = 1;
      v.erase(v.begin() + static_cast<std::ptrdiff_t>(j));
      touched.erase(touched.begin() + static_cast<std::ptrdiff_t>(j));
    }
    ++events;
    changed = true;
  }

  std::vector<Point> out;
  std::vector<char> out_touched;
  out.reserve(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(v[i]);
    out_touched.push_back(touched[i]);
    const double len = norm(v[(i + 1) % v.size()] - v[i]);
    if (len <= s_max * (1.0 + 1e-9))
      continue;
    const auto pieces = static_cast<int>(std::ceil(len / s_max - 1e-9));
    const EdgeCubic cubic(v, i);
    for (int k = 1; k < pieces; ++k) {
      out.push_back(cubic.at_fraction(static_cast<double>(k) / pieces));
      out_touched.push_back(1);
    }
    ++events;
    changed = true;
  }
  if (changed) {
    restore_area(out, out_touched, target);
    v = std::move(out);
  }
  return changed;
}

} // namespace

DiscretizedPatch remesh(const DiscretizedPatch& patch, double s_min, double s_max,
                        std::size_t* events) {
  if (!(s_min > 0.0) || !(s_min < s_max))
    throw DomainError("remesh needs 0 < s_min < s_max");
  auto loops = patch.loops();
  std::size_t count = 0;
  bool changed = false;
  for (auto& loop : loops)
    changed |= remesh_loop(loop, s_min, s_max, count);
  if (events)
    *events += count;
  if (!changed)
    return patch;
  return DiscretizedPatch::from_loops(std::move(loops), patch.time());
}

void default_spacing_bounds(const DiscretizedPatch& patch, EvolutionParams& params) {
  const double h = patch.mean_spacing();
  if (params.s_min <= 0.0)
    params.s_min = 0.25 * h;
  if (params.s_max <= 0.0)
    params.s_max = 2.0 * h;
}

double principal_axis_angle(const PatchRegion& region) {
  const CentralInertia in = central_inertia(region);
  return 0.5 * std::atan2(2.0 * in.xy, in.xx - in.yy);
}

namespace {

TimeSeriesRecord make_record(const PatchRegion& region, double t, const Disk& disk,
                             double bound) {
  TimeSeriesRecord r;
  r.t = t;
  r.moments = region_moments(region);
  r.q = q_value(region, disk).q;
  r.l1 = symmetric_difference_area(region, disk);
  r.bound = bound;
  r.margin = bound - r.l1 * r.l1;
  return r;
}

DiscretizedPatch advance(const DiscretizedPatch& p, double dt, int halvings_left) {
  try {
    return step_rk4(p, dt);
  } catch (const StepRejected&) {
    if (halvings_left <= 0)
      throw;
    return advance(advance(p, 0.5 * dt, halvings_left - 1), 0.5 * dt, halvings_left - 1);
  }
}

} // namespace

EvolutionResult evolve(const DiscretizedPatch& initial, const Disk& disk,
                       const EvolutionParams& in_params, const StepObserver& observer) {
  require_origin_centered(disk, "evolve");
  EvolutionParams params = in_params;
  default_spacing_bounds(initial, params);
  if (!(params.dt > 0.0))
    throw DomainError("dt must be positive");
  if (!(params.t_end >= 0.0))
    throw DomainError("t_end must be non-negative");
  if (params.output_stride < 1)
    throw DomainError("output_stride must be >= 1");
  if (!(params.s_min > 0.0) || !(params.s_min < params.s_max))
    throw DomainError("need 0 < s_min < s_max");

  EvolutionResult result;
  const PatchRegion region0 = initial.to_region();
  result.bound = theorem_bound(region0, disk);
  const TimeSeriesRecord first = make_record(region0, initial.time(), disk, result.bound.bound);
  result.records.push_back(first);
  if (observer)
    observer(initial, 0);

  auto track = [&](const TimeSeriesRecord& r) {
    const Moments& m0 = first.moments;
    result.max_mass_drift =
        std::max(result.max_mass_drift, std::abs(r.moments.mass - m0.mass) / m0.mass);
    result.max_momentum_drift =
        std::max(result.max_momentum_drift, norm(r.moments.momentum - m0.momentum));
    result.max_angular_drift = std::max(result.max_angular_drift,
                                        std::abs(r.moments.angular - m0.angular) / m0.angular);
    if (first.q > 0.0)
      result.max_q_drift = std::max(result.max_q_drift, std::abs(r.q - first.q) / first.q);
    else
      result.max_q_drift = std::max(result.max_q_drift, std::abs(r.q));
    if (r.margin < -params.drift_allowance * std::max(r.bound, 1.0) && result.first_violation < 0)
      result.first_violation = static_cast<long>(result.records.size()) - 1;
  };

  const auto nsteps = static_cast<long>(std::llround(params.t_end / params.dt));
  DiscretizedPatch patch = initial;
  const double t0 = initial.time();
  for (long step = 1; step <= nsteps; ++step) {
    try {
      const auto u = self_velocities(patch);
      const double limit = cfl_from(patch, u, params.s_min, params.c_cfl);
      const auto substeps = static_cast<long>(std::max(1.0, std::ceil(params.dt / limit)));
      const double h = params.dt / static_cast<double>(substeps);
      for (long s = 0; s < substeps; ++s) {
        if (s == 0) {
          try {
            patch = step_rk4_from(patch, u, h);
            continue;
          } catch (const StepRejected&) {
            if (params.max_step_halvings <= 0)
              throw;
          }
        }
        patch = advance(patch, h, params.max_step_halvings);
      }
      patch.set_time(t0 + static_cast<double>(step) * params.dt);
      if (params.remesh) {
        std::size_t events = 0;
        patch = remesh(patch, params.s_min, params.s_max, &events);
        result.remesh_events += static_cast<long>(events);
      }
      result.steps_taken = step;
      if (observer)
        observer(patch, step);
      if (step % params.output_stride == 0 || step == nsteps) {
        result.records.push_back(make_record(patch.to_region(), patch.time(), disk, result.bound.bound));
        track(result.records.back());
      }
    } catch (const StepRejected& e) {
      result.aborted = true;
      result.diagnostic = e.what();
      break;
    } catch (const ValidationError& e) {
      result.aborted = true;
      result.diagnostic = std::string("invalid boundary after step: ") + e.what();
      break;
    }
  }

  result.conserved = result.max_mass_drift < params.conservation_tol &&
                     result.max_momentum_drift < params.conservation_tol &&
                     result.max_angular_drift < params.conservation_tol &&
                     result.max_q_drift < params.conservation_tol;
  if (!result.conserved && result.diagnostic.empty()) {
    std::ostringstream os;
    os << "conservation drift above " << params.conservation_tol << ": mass "
       << result.max_mass_drift << ", momentum " << result.max_momentum_drift << ", angular "
       << result.max_angular_drift << ", q " << result.max_q_drift;
    result.diagnostic = os.str();
  }
  return result;
}

} // namespace vortexpatch
