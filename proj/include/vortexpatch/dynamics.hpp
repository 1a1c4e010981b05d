#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "vortexpatch/geometry.hpp"
#include "vortexpatch/kernels.hpp"
#include "vortexpatch/stability.hpp"

namespace vortexpatch {

inline constexpr std::size_t kMinMarkersPerLoop = 16;

/// Marker-point boundary of a unit-strength patch at time `time`. Markers are
/// advected by the velocity of the polygonal patch they bound, which realizes
/// the flow map on the boundary.
class DiscretizedPatch {
public:
  static constexpr double strength = 1.0;

  DiscretizedPatch() = default;
  /// Markers are the region's vertices, orientation preserved.
  explicit DiscretizedPatch(const PatchRegion& region, double time = 0.0);

  [[nodiscard]] const std::vector<std::vector<Point>>& loops() const { return loops_; }
  [[nodiscard]] std::size_t marker_count() const { return markers_.size(); }
  [[nodiscard]] std::span<const Point> markers() const { return markers_; }
  [[nodiscard]] kernels::BoundaryView view() const { return {markers_, offsets_}; }
  [[nodiscard]] double time() const { return time_; }
  void set_time(double t) { time_ = t; }

  /// Validating conversion; throws ValidationError for a broken boundary.
  [[nodiscard]] PatchRegion to_region() const;
  [[nodiscard]] double mean_spacing() const;

  /// Rebuild from raw loops without the PatchRegion checks (used between
  /// time-step stages, where simplicity is checked separately).
  static DiscretizedPatch from_loops(std::vector<std::vector<Point>> loops, double time);

private:
  void rebuild_flat();

  std::vector<std::vector<Point>> loops_;
  std::vector<Point> markers_;
  std::vector<std::size_t> offsets_;
  double time_ = 0.0;
};

struct EvolutionParams {
  double dt = 0.01;
  double t_end = 10.0;
  double s_min = 0.0;
  double s_max = 0.0;
  int output_stride = 10;
  double c_cfl = 0.5;
  bool remesh = true;
  int max_step_halvings = 4;
  /// Relative drift allowed for mass, angular momentum and Q; absolute for
  /// the momentum vector.
  double conservation_tol = 1e-4;
  /// Allowed negative margin against the time-uniform bound, relative to it.
  double drift_allowance = 1e-6;
};

struct TimeSeriesRecord {
  double t = 0.0;
  Moments moments;
  double q = 0.0;
  double l1 = 0.0;
  double bound = 0.0;
  double margin = 0.0;  // bound - l1^2
};

struct EvolutionResult {
  std::vector<TimeSeriesRecord> records;
  TheoremBound bound;
  long steps_taken = 0;
  long remesh_events = 0;
  bool aborted = false;
  std::string diagnostic;

  double max_mass_drift = 0.0;      // relative
  double max_momentum_drift = 0.0;  // absolute
  double max_angular_drift = 0.0;   // relative
  double max_q_drift = 0.0;         // relative
  bool conserved = true;
  /// Index of the first record with margin below the allowance, or -1.
  long first_violation = -1;

  [[nodiscard]] bool ok() const { return !aborted && conserved && first_violation < 0; }
};

Vec2 boundary_velocity(const DiscretizedPatch& patch, Point x);
std::vector<Vec2> self_velocities(const DiscretizedPatch& patch);
std::vector<Vec2> self_velocities_serial(const DiscretizedPatch& patch);

/// Largest dt for which no edge shortens by more than c_cfl * s_min in one
/// step, estimated from the current relative velocity of neighbouring markers.
double strain_cfl_limit(const DiscretizedPatch& patch, double s_min, double c_cfl);

/// Classical RK4 advection of every marker. Throws StepRejected if the new
/// boundary has colliding markers or crossing edges.
DiscretizedPatch step_rk4(const DiscretizedPatch& patch, double dt);

/// Insert markers (chord-length cubic through four neighbours) on edges
/// longer than s_max, merge edges shorter than s_min, then restore each
/// loop's polygon area with a common normal offset of the touched markers.
DiscretizedPatch remesh(const DiscretizedPatch& patch, double s_min, double s_max,
                        std::size_t* events = nullptr);

/// Default remesh bounds relative to the patch's mean marker spacing.
void default_spacing_bounds(const DiscretizedPatch& patch, EvolutionParams& params);

using StepObserver = std::function<void(const DiscretizedPatch&, long step)>;

/// Time-step to t_end against the origin-centered comparison disk, emitting
/// a record at t=0, every output_stride steps and at the final step.
EvolutionResult evolve(const DiscretizedPatch& initial, const Disk& disk,
                       const EvolutionParams& params, const StepObserver& observer = {});

/// Principal-axis angle of the patch in (-pi/2, pi/2].
double principal_axis_angle(const PatchRegion& region);

} // namespace vortexpatch
