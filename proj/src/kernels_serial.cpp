#include <cmath>

#include "vortexpatch/kernels.hpp"
#include "vortexpatch/summation.hpp"

namespace vortexpatch::kernels {

namespace {

// Antiderivative of (1/2) log(u^2 + h^2) in u.
double log_antiderivative(double u, double h) {
  const double r2 = u * u + h * h;
  const double ulog = r2 > 0.0 ? 0.5 * u * std::log(r2) : 0.0;
  const double angle = h != 0.0 ? h * std::atan(u / h) : 0.0;
  return ulog - u + angle;
}

} // namespace

void induced_velocity_serial(const BoundaryView& boundary, std::span<const Point> targets,
                             std::span<Vec2> out) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const Point x = targets[i];
    CompensatedSum ux, uy;
    for (std::size_t l = 0; l < boundary.loop_count(); ++l) {
      const std::size_t begin = boundary.offsets[l];
      const std::size_t end = boundary.offsets[l + 1];
      for (std::size_t j = begin; j < end; ++j) {
        const Point p = boundary.markers[j];
        const Point q = boundary.markers[j + 1 == end ? begin : j + 1];
        const Vec2 d = q - p;
        const double len = norm(d);
        if (len == 0.0)
          continue;
        const Vec2 t = (1.0 / len) * d;
        const double a = dot(x - p, t);
        const double h = cross(t, x - p);
        const double integral = log_antiderivative(len - a, h) - log_antiderivative(-a, h);
        ux += -integral * t.x / (2.0 * kPi);
        uy += -integral * t.y / (2.0 * kPi);
      }
    }
    out[i] = {ux.value(), uy.value()};
  }
}

} // namespace vortexpatch::kernels
