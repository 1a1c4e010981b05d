#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <cstring>
#include <vector>

#include "vortexpatch/dynamics.hpp"
#include "vortexpatch/kernels.hpp"

using namespace vortexpatch;
using doctest::Approx;

namespace {

DiscretizedPatch disk_patch(int n, Disk d = Disk({0, 0}, 1)) {
  return DiscretizedPatch(regular_ngon(n, d, true));
}

DiscretizedPatch blob(int n) {
  std::vector<Point> v;
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n;
    const double r = 1.0 + 0.2 * std::cos(3 * t) + 0.05 * std::sin(7 * t);
    v.push_back({r * std::cos(t) + 0.3, r * std::sin(t) - 0.1});
  }
  // Hole off center so the kernel sees two loops.
  std::vector<Point> hole;
  for (int k = 0; k < 32; ++k) {
    const double t = -2 * kPi * k / 32;
    hole.push_back({0.5 + 0.2 * std::cos(t), 0.1 + 0.2 * std::sin(t)});
  }
  return DiscretizedPatch(PatchRegion(std::vector<std::vector<Point>>{v, hole}));
}

std::vector<Point> probe_points() {
  std::vector<Point> x;
  for (int i = -12; i <= 12; ++i)
    for (int j = -12; j <= 12; ++j)
      x.push_back({0.17 * i + 0.013, 0.17 * j - 0.007});
  return x;
}

} // namespace

TEST_CASE("Rankine velocity of a disk") {
  const DiscretizedPatch p = disk_patch(4096);
  const Vec2 on = boundary_velocity(p, {1.0, 0.0});
  CHECK(std::abs(on.x) < 1e-6);
  CHECK(on.y == Approx(0.5).epsilon(1e-5));
  const Vec2 out = boundary_velocity(p, {2.0, 0.0});
  CHECK(std::abs(out.x) < 1e-9);
  CHECK(out.y == Approx(0.25).epsilon(1e-6));
  const Vec2 in = boundary_velocity(p, {0.0, 0.4});
  CHECK(in.x == Approx(-0.2).epsilon(1e-6));
  CHECK(std::abs(in.y) < 1e-9);
  const Vec2 center = boundary_velocity(p, {0.0, 0.0});
  CHECK(norm(center) < 1e-12);
}

TEST_CASE("marker velocities converge at least at second order") {
  double prev = 0.0;
  for (int n : {64, 128, 256, 512}) {
    const auto u = self_velocities(disk_patch(n));
    double err = 0.0;
    for (const Vec2& v : u)
      err = std::max(err, std::abs(norm(v) - 0.5));
    if (prev > 0.0)
      CHECK(prev / err > 3.8);
    prev = err;
  }
}

TEST_CASE("serial reference agrees with the parallel kernel") {
  const DiscretizedPatch p = blob(300);
  const auto x = probe_points();
  std::vector<Vec2> a(x.size()), b(x.size());
  kernels::induced_velocity(p.view(), x, a);
  kernels::induced_velocity_serial(p.view(), x, b);
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(norm(a[i] - b[i]) < 1e-12);

  const auto ua = self_velocities(p);
  const auto ub = self_velocities_serial(p);
  for (std::size_t i = 0; i < ua.size(); ++i)
    CHECK(norm(ua[i] - ub[i]) < 1e-12);
}

TEST_CASE("parallel kernel is bit-identical across thread counts") {
  const DiscretizedPatch p = blob(500);
  const auto x = probe_points();
  std::vector<Vec2> one(x.size()), many(x.size());
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  kernels::induced_velocity(p.view(), x, one);
  omp_set_num_threads(4);
  kernels::induced_velocity(p.view(), x, many);
  omp_set_num_threads(saved);
  CHECK(std::memcmp(one.data(), many.data(), one.size() * sizeof(Vec2)) == 0);
}

TEST_CASE("velocity respects mirror symmetry and translation") {
  // Patch symmetric about the x axis: u_x even, u_y odd in y.
  std::vector<Point> v;
  for (int k = 0; k < 200; ++k) {
    const double t = 2 * kPi * k / 200;
    v.push_back({1.5 * std::cos(t), 0.7 * std::sin(t) * (1 + 0.3 * std::cos(t))});
  }
  const DiscretizedPatch p(PatchRegion(std::vector<std::vector<Point>>{v}));
  for (Point x : {Point{0.3, 0.4}, Point{2.0, 1.0}, Point{-0.2, 0.9}}) {
    const Vec2 a = boundary_velocity(p, x);
    const Vec2 b = boundary_velocity(p, {x.x, -x.y});
    CHECK(a.x == Approx(-b.x).epsilon(1e-12));
    CHECK(a.y == Approx(b.y).epsilon(1e-12));
  }

  std::vector<Point> shifted = v;
  for (Point& q : shifted)
    q += Vec2{3.0, -2.0};
  const DiscretizedPatch ps(PatchRegion(std::vector<std::vector<Point>>{shifted}));
  const Vec2 a = boundary_velocity(p, {0.3, 0.4});
  const Vec2 b = boundary_velocity(ps, {3.3, -1.6});
  CHECK(norm(a - b) < 1e-12);
}

TEST_CASE("holes subtract their own contribution") {
  // Annulus 0.5 < |x| < 1: inside the hole the flow is at rest.
  std::vector<Point> outer, inner;
  for (int k = 0; k < 2048; ++k) {
    const double t = 2 * kPi * k / 2048;
    outer.push_back({std::cos(t), std::sin(t)});
    inner.push_back({0.5 * std::cos(-t), 0.5 * std::sin(-t)});
  }
  const DiscretizedPatch p(PatchRegion(std::vector<std::vector<Point>>{outer, inner}));
  CHECK(norm(boundary_velocity(p, {0.1, 0.2})) < 1e-6);
  // Outside: circulation pi (1 - 1/4) spread over the circle of radius 2.
  const Vec2 far = boundary_velocity(p, {0.0, 2.0});
  CHECK(far.x == Approx(-0.75 * kPi / (2 * kPi * 2)).epsilon(1e-5));
}
