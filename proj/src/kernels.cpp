#include "vortexpatch/kernels.hpp"

#include <cmath>

#include "vortexpatch/summation.hpp"

namespace vortexpatch::kernels {

namespace {

constexpr double kInvTwoPi = 1.0 / (2.0 * kPi);

inline double safe_log(double r2) { return r2 > 0.0 ? std::log(r2) : 0.0; }

} // namespace

// Per edge p->q with unit tangent t, length L, along-coordinate a of x and
// perpendicular distance h:
//   I = 1/2 [(L-a) log|x-q|^2 + a log|x-p|^2] - L + |h| alpha,
// where alpha is the angle the edge subtends at x. The endpoint logs are
// shared between neighbouring edges.
Vec2 velocity_at(const BoundaryView& boundary, Point x) {
  CompensatedSum ux, uy;
  for (std::size_t l = 0; l < boundary.loop_count(); ++l) {
    const std::size_t begin = boundary.offsets[l];
    const std::size_t end = boundary.offsets[l + 1];
    if (end - begin < 2)
      continue;
    const Vec2 r_first = boundary.markers[begin] - x;
    const double lg_first = safe_log(norm2(r_first));
    Vec2 rp = r_first;
    double lgp = lg_first;
    for (std::size_t j = begin; j < end; ++j) {
      const bool last = j + 1 == end;
      const Vec2 rq = last ? r_first : boundary.markers[j + 1] - x;
      const double lgq = last ? lg_first : safe_log(norm2(rq));
      const Vec2 d = rq - rp;
      const double len = norm(d);
      if (len > 0.0) {
        const double a = -dot(rp, d) / len;
        const double h = std::abs(cross(d, rp)) / len;
        const double alpha = std::abs(std::atan2(cross(rp, rq), dot(rp, rq)));
        const double integral = 0.5 * ((len - a) * lgq + a * lgp) - len + h * alpha;
        const double s = -kInvTwoPi * integral / len;
        ux += s * d.x;
        uy += s * d.y;
      }
      rp = rq;
      lgp = lgq;
    }
  }
  return {ux.value(), uy.value()};
}

void induced_velocity(const BoundaryView& boundary, std::span<const Point> targets,
                      std::span<Vec2> out) {
  const auto n = static_cast<std::ptrdiff_t>(targets.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i)
    out[static_cast<std::size_t>(i)] = velocity_at(boundary, targets[static_cast<std::size_t>(i)]);
}

} // namespace vortexpatch::kernels
