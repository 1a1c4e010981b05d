#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "vortexpatch/geometry.hpp"

namespace vortexpatch::kernels {

/// Closed oriented loops stored back to back. Loop l occupies
/// markers[offsets[l] .. offsets[l+1]).
struct BoundaryView {
  std::span<const Point> markers;
  std::span<const std::size_t> offsets;

  [[nodiscard]] std::size_t loop_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }
};

/// Velocity induced at `x` by unit vorticity inside the boundary:
///   u(x) = -(1/2pi) sum_edges  t_e * int_e log|x - y| ds,
/// with each edge integral in closed form. Summation order is fixed and
/// compensated, so the result is independent of how targets are scheduled.
Vec2 velocity_at(const BoundaryView& boundary, Point x);

/// OpenMP-parallel evaluation at every target. Bit-identical for any thread
/// count.
void induced_velocity(const BoundaryView& boundary, std::span<const Point> targets,
                      std::span<Vec2> out);

/// Straightforward single-threaded evaluation of the same integrals using the
/// textbook antiderivative per edge endpoint. Kept as a reference for tests
/// and benchmarks; agrees with induced_velocity to rounding.
void induced_velocity_serial(const BoundaryView& boundary, std::span<const Point> targets,
                             std::span<Vec2> out);

} // namespace vortexpatch::kernels
