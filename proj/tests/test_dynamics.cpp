#include <doctest.h>

#include <cmath>
#include <vector>

#include "vortexpatch/dynamics.hpp"
#include "vortexpatch/errors.hpp"

using namespace vortexpatch;
using doctest::Approx;

namespace {

const Disk kUnit({0, 0}, 1.0);

std::vector<Point> ellipse_points(int n, double a, double b, double rot = 0.0) {
  std::vector<Point> v;
  const double c = std::cos(rot), s = std::sin(rot);
  for (int k = 0; k < n; ++k) {
    const double t = 2 * kPi * k / n;
    const Point p{a * std::cos(t), b * std::sin(t)};
    v.push_back({c * p.x - s * p.y, s * p.x + c * p.y});
  }
  return v;
}

DiscretizedPatch patch_of(std::vector<Point> v) {
  return DiscretizedPatch(PatchRegion(std::vector<std::vector<Point>>{std::move(v)}));
}

double loops_area(const DiscretizedPatch& p) { return p.to_region().area(); }

// Rectangle [0, 0.94] x [0, 0.96] with ~0.08 spacing, except one top edge
// of length 0.3 in the middle of a straight run.
std::vector<Point> rectangle_with_long_edge() {
  std::vector<Point> v;
  for (int k = 0; k < 12; ++k)
    v.push_back({0.94 * k / 12, 0.0});
  for (int k = 0; k < 12; ++k)
    v.push_back({0.94, 0.96 * k / 12});
  const double xs[] = {0.94, 0.86, 0.78, 0.70, 0.62, 0.32, 0.24, 0.16, 0.08};
  for (double x : xs)
    v.push_back({x, 0.96});
  for (int k = 0; k < 12; ++k)
    v.push_back({0.0, 0.96 - 0.96 * k / 12});
  return v;
}

} // namespace

TEST_CASE("discretized patch requires enough markers") {
  CHECK_THROWS_AS(DiscretizedPatch(regular_ngon(15, kUnit, true)), ValidationError);
  const DiscretizedPatch p(regular_ngon(16, kUnit, true), 2.5);
  CHECK(p.marker_count() == 16);
  CHECK(p.time() == 2.5);
  CHECK(p.view().loop_count() == 1);
}

TEST_CASE("zero time step is the identity") {
  const DiscretizedPatch p = patch_of(ellipse_points(64, 1.2, 0.8));
  const DiscretizedPatch q = step_rk4(p, 0.0);
  CHECK(q.loops() == p.loops());
  CHECK(q.time() == p.time());
}

TEST_CASE("circular patch is stationary") {
  const DiscretizedPatch p(regular_ngon(256, kUnit, true));
  EvolutionParams params;
  params.dt = 0.05;
  params.t_end = 2.0;
  params.output_stride = 5;
  const EvolutionResult r = evolve(p, kUnit, params);
  REQUIRE(r.ok());
  CHECK(r.steps_taken == 40);
  CHECK(r.records.size() == 9);
  CHECK(r.records.back().t == Approx(2.0));
  // RK4 damps rigid rotation at O((dt/2)^6) per step.
  CHECK(r.max_mass_drift < 1e-8);
  CHECK(r.max_momentum_drift < 1e-8);
  CHECK(r.max_angular_drift < 1e-8);
  for (const auto& rec : r.records)
    CHECK(std::abs(rec.l1 - r.records.front().l1) < 1e-8);
  // Rigid rotation at angular speed 1/2 leaves each marker on the circle.
  const DiscretizedPatch moved = step_rk4(p, 0.1);
  for (Point x : moved.markers())
    CHECK(norm(x) == Approx(norm(p.markers()[0])).epsilon(1e-9));
}

TEST_CASE("Kirchhoff ellipse rotates at ab/(a+b)^2") {
  DiscretizedPatch p = patch_of(ellipse_points(256, 1.0, 0.5));
  std::vector<double> ts, angles;
  double unwrap = 0.0, last = 0.0;
  for (int step = 0; step <= 100; ++step) {
    double th = principal_axis_angle(p.to_region());
    if (step > 0) {
      while (th + unwrap - last > kPi / 2)
        unwrap -= kPi;
      while (th + unwrap - last < -kPi / 2)
        unwrap += kPi;
    }
    last = th + unwrap;
    ts.push_back(p.time());
    angles.push_back(last);
    p = step_rk4(p, 0.02);
  }
  // Least-squares slope.
  double st = 0, sa = 0, stt = 0, sta = 0;
  const double n = static_cast<double>(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    st += ts[i];
    sa += angles[i];
    stt += ts[i] * ts[i];
    sta += ts[i] * angles[i];
  }
  const double slope = (n * sta - st * sa) / (n * stt - st * st);
  CHECK(slope == Approx(2.0 / 9.0).epsilon(0.01));
}

TEST_CASE("remesh leaves a uniform circle alone") {
  const DiscretizedPatch p(regular_ngon(128, kUnit, true));
  EvolutionParams params;
  default_spacing_bounds(p, params);
  std::size_t events = 0;
  const DiscretizedPatch q = remesh(p, params.s_min, params.s_max, &events);
  CHECK(events == 0);
  CHECK(q.loops() == p.loops());
}

TEST_CASE("remesh splits a long edge") {
  const DiscretizedPatch p = patch_of(rectangle_with_long_edge());
  const double area = loops_area(p);
  std::size_t events = 0;
  const DiscretizedPatch q = remesh(p, 0.02, 0.1, &events);
  CHECK(events == 1);
  CHECK(q.marker_count() == p.marker_count() + 2);
  CHECK(std::abs(loops_area(q) - area) < 1e-8 * area);
  for (const auto& l : q.loops())
    for (std::size_t i = 0; i < l.size(); ++i)
      CHECK(norm(l[(i + 1) % l.size()] - l[i]) <= 0.1 + 1e-12);
}

TEST_CASE("remesh merges short edges and keeps area") {
  std::vector<Point> v = ellipse_points(200, 1.3, 0.9);
  // Crowd a few markers together.
  v.insert(v.begin() + 10, 0.95 * v[9] + 0.05 * v[10]);
  v.insert(v.begin() + 50, 0.9 * v[49] + 0.1 * v[50]);
  const DiscretizedPatch p = patch_of(v);
  const double area = loops_area(p);
  const double h = p.mean_spacing();
  std::size_t events = 0;
  const DiscretizedPatch q = remesh(p, 0.3 * h, 2.0 * h, &events);
  CHECK(events >= 2);
  CHECK(q.marker_count() < p.marker_count());
  CHECK(std::abs(loops_area(q) - area) < 1e-8 * area);
  for (const auto& l : q.loops())
    for (std::size_t i = 0; i < l.size(); ++i)
      CHECK(norm(l[(i + 1) % l.size()] - l[i]) >= 0.3 * h * 0.5);

  CHECK_THROWS_AS(remesh(p, 0.1, 0.05), DomainError);
}

TEST_CASE("step rejection on boundary crossing") {
  // Ellipses only deform linearly, so use a lobed shape whose arms shear
  // past each other under a huge step.
  std::vector<Point> v;
  for (int k = 0; k < 128; ++k) {
    const double t = 2 * kPi * k / 128;
    const double r = 1.0 + 0.5 * std::cos(5 * t);
    v.push_back({r * std::cos(t), r * std::sin(t)});
  }
  const DiscretizedPatch p = patch_of(v);
  CHECK_NOTHROW(step_rk4(p, 0.01));
  CHECK_THROWS_AS(step_rk4(p, 40.0), StepRejected);
}

TEST_CASE("evolve argument checks") {
  const DiscretizedPatch p(regular_ngon(64, kUnit, true));
  EvolutionParams params;
  params.t_end = 0.1;
  CHECK_THROWS_AS(evolve(p, Disk({0.1, 0}, 1), params), DomainError);
  params.dt = 0.0;
  CHECK_THROWS_AS(evolve(p, kUnit, params), DomainError);
  params.dt = 0.01;
  params.output_stride = 0;
  CHECK_THROWS_AS(evolve(p, kUnit, params), DomainError);
}

TEST_CASE("evolve is rotation equivariant") {
  const double rot = 0.7;
  const DiscretizedPatch a = patch_of(ellipse_points(96, 1.4, 0.6));
  const DiscretizedPatch b = patch_of(ellipse_points(96, 1.4, 0.6, rot));
  EvolutionParams params;
  params.dt = 0.05;
  params.t_end = 0.5;
  params.remesh = false;
  DiscretizedPatch fa = a, fb = b;
  long last_step = -1;
  auto capture = [](DiscretizedPatch& dst) {
    return [&dst](const DiscretizedPatch& p, long) { dst = p; };
  };
  const EvolutionResult ra = evolve(a, kUnit, params, capture(fa));
  const EvolutionResult rb = evolve(b, kUnit, params, [&](const DiscretizedPatch& p, long s) {
    fb = p;
    last_step = s;
  });
  REQUIRE(ra.ok());
  REQUIRE(rb.ok());
  CHECK(last_step == 10);
  const double c = std::cos(rot), s = std::sin(rot);
  for (std::size_t i = 0; i < fa.marker_count(); ++i) {
    const Point p = fa.markers()[i];
    const Point q{c * p.x - s * p.y, s * p.x + c * p.y};
    CHECK(norm(q - fb.markers()[i]) < 1e-10);
  }
  for (std::size_t k = 0; k < ra.records.size(); ++k) {
    CHECK(rb.records[k].q == Approx(ra.records[k].q).epsilon(1e-10));
    CHECK(rb.records[k].l1 == Approx(ra.records[k].l1).epsilon(1e-8));
  }
}

TEST_CASE("perturbed circle stays within its bound") {
  std::vector<Point> v;
  for (int k = 0; k < 256; ++k) {
    const double t = 2 * kPi * k / 256;
    const double r = 1.0 + 0.1 * std::cos(3 * t);
    v.push_back({r * std::cos(t), r * std::sin(t)});
  }
  EvolutionParams params;
  params.dt = 0.02;
  params.t_end = 2.0;
  const EvolutionResult r = evolve(patch_of(v), kUnit, params);
  REQUIRE(r.ok());
  CHECK(r.bound.bound > 0.0);
  for (const auto& rec : r.records)
    CHECK(rec.margin >= 0.0);
  CHECK(r.max_q_drift < 1e-4);
}
