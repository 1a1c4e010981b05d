#include "vortexpatch/geometry.hpp"

#include <algorithm>
#include <limits>
#include <sstream>
#include <string>

#include "vortexpatch/errors.hpp"
#include "vortexpatch/summation.hpp"

namespace vortexpatch {

namespace {

double loop_signed_area(std::span<const Point> v) {
  CompensatedSum s;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i)
    s += cross(v[i], v[(i + 1) % n]);
  return 0.5 * s.value();
}

struct Segment {
  Point a, b;
  double xmin, xmax, ymin, ymax;
  std::size_t loop, edge, loop_size;
};

// Distance from p to the line through a,b is <= eps and p projects into [a,b].
bool on_segment(Point p, Point a, Point b) {
  const Vec2 d = b - a;
  const double len2 = norm2(d);
  if (len2 == 0.0)
    return norm2(p - a) <= kGeomEps * kGeomEps;
  const double t = dot(p - a, d) / len2;
  if (t < -kGeomEps || t > 1.0 + kGeomEps)
    return false;
  return std::abs(cross(d, p - a)) <= kGeomEps * std::sqrt(len2);
}

bool segments_touch(const Segment& s, const Segment& t) {
  const Vec2 ds = s.b - s.a;
  const Vec2 dt = t.b - t.a;
  const double d1 = cross(ds, t.a - s.a);
  const double d2 = cross(ds, t.b - s.a);
  const double d3 = cross(dt, s.a - t.a);
  const double d4 = cross(dt, s.b - t.a);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  return on_segment(t.a, s.a, s.b) || on_segment(t.b, s.a, s.b) || on_segment(s.a, t.a, t.b) ||
         on_segment(s.b, t.a, t.b);
}

// Consecutive edges share a vertex; they only conflict when they fold back
// onto each other.
bool adjacent_edges_fold(const Segment& first, const Segment& second) {
  // first.b == second.a
  return on_segment(second.b, first.a, first.b) || on_segment(first.a, second.a, second.b);
}

std::string find_intersection(std::span<const std::vector<Point>> loops) {
  std::vector<Segment> segs;
  for (std::size_t l = 0; l < loops.size(); ++l) {
    const auto& v = loops[l];
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point a = v[i];
      const Point b = v[(i + 1) % n];
      segs.push_back({a, b, std::min(a.x, b.x), std::max(a.x, b.x), std::min(a.y, b.y),
                      std::max(a.y, b.y), l, i, n});
    }
  }
  std::sort(segs.begin(), segs.end(),
            [](const Segment& s, const Segment& t) { return s.xmin < t.xmin; });

  for (std::size_t i = 0; i < segs.size(); ++i) {
    const Segment& s = segs[i];
    for (std::size_t j = i + 1; j < segs.size() && segs[j].xmin <= s.xmax + kGeomEps; ++j) {
      const Segment& t = segs[j];
      if (t.ymin > s.ymax + kGeomEps || s.ymin > t.ymax + kGeomEps)
        continue;
      bool conflict = false;
      if (s.loop == t.loop) {
        const std::size_t n = s.loop_size;
        if ((s.edge + 1) % n == t.edge)
          conflict = adjacent_edges_fold(s, t);
        else if ((t.edge + 1) % n == s.edge)
          conflict = adjacent_edges_fold(t, s);
        else
          conflict = segments_touch(s, t);
      } else {
        conflict = segments_touch(s, t);
      }
      if (conflict) {
        std::ostringstream os;
        os << "edges " << s.edge << " of loop " << s.loop << " and " << t.edge << " of loop "
           << t.loop << " intersect";
        return os.str();
      }
    }
  }
  return {};
}

void check_loop_basic(std::span<const Point> v, std::size_t index) {
  auto fail = [&](const std::string& why) {
    throw ValidationError("loop " + std::to_string(index) + ": " + why);
  };
  if (v.size() < 3)
    fail("fewer than 3 vertices");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i].x) || !std::isfinite(v[i].y))
      fail("non-finite vertex " + std::to_string(i));
    if (norm(v[(i + 1) % v.size()] - v[i]) <= kGeomEps)
      fail("coincident vertices at " + std::to_string(i));
  }
  if (std::abs(loop_signed_area(v)) <= kGeomEps * kGeomEps)
    fail("zero area");
}

double point_segment_distance2(Point p, Point a, Point b) {
  const Vec2 d = b - a;
  const double len2 = norm2(d);
  double t = len2 > 0.0 ? dot(p - a, d) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return norm2(p - (a + t * d));
}

// Signed area of (triangle origin,p,q) ∩ disk(origin, r).
double triangle_disk_area(Point p, Point q, double r) {
  const Vec2 d = q - p;
  const double a = norm2(d);
  if (a == 0.0)
    return 0.0;
  const double rr = r * r;

  std::array<double, 4> ts{0.0, 0.0, 0.0, 0.0};
  std::size_t nt = 0;
  ts[nt++] = 0.0;
  const double line_dist = std::abs(cross(p, d)) / std::sqrt(a);
  if (line_dist < r - kGeomEps) {
    const double b = dot(p, d);
    const double c = norm2(p) - rr;
    const double disc = std::sqrt(std::max(b * b - a * c, 0.0));
    // Stable root pair.
    const double qroot = -(b + std::copysign(disc, b));
    double t1 = qroot / a;
    double t2 = qroot != 0.0 ? c / qroot : t1;
    if (t1 > t2)
      std::swap(t1, t2);
    if (t1 > 0.0 && t1 < 1.0)
      ts[nt++] = t1;
    if (t2 > 0.0 && t2 < 1.0)
      ts[nt++] = t2;
  }
  ts[nt++] = 1.0;

  double area = 0.0;
  for (std::size_t k = 0; k + 1 < nt; ++k) {
    const Point p0 = p + ts[k] * d;
    const Point p1 = p + ts[k + 1] * d;
    const Point mid = p + (0.5 * (ts[k] + ts[k + 1])) * d;
    if (norm2(mid) < rr)
      area += 0.5 * cross(p0, p1);
    else
      area += 0.5 * rr * std::atan2(cross(p0, p1), dot(p0, p1));
  }
  return area;
}

struct LocalMoments {
  Point ref;
  double mass;
  Vec2 first;  // about ref
  double xx, yy, xy;  // about ref
};

LocalMoments local_moments(const PatchRegion& region) {
  Point ref;
  std::size_t count = 0;
  for (const Loop& l : region.loops())
    for (Point p : l.vertices()) {
      ref += p;
      ++count;
    }
  ref = (1.0 / static_cast<double>(count)) * ref;

  CompensatedSum a, mx, my, ixx, iyy, ixy;
  for (const Loop& loop : region.loops()) {
    const auto v = loop.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Point p = v[i] - ref;
      const Point q = v[(i + 1) % n] - ref;
      const double c = cross(p, q);
      a += c;
      mx += (p.x + q.x) * c;
      my += (p.y + q.y) * c;
      ixx += (p.x * p.x + p.x * q.x + q.x * q.x) * c;
      iyy += (p.y * p.y + p.y * q.y + q.y * q.y) * c;
      ixy += (2.0 * p.x * p.y + p.x * q.y + q.x * p.y + 2.0 * q.x * q.y) * c;
    }
  }
  return {ref,           a.value() / 2.0,   {mx.value() / 6.0, my.value() / 6.0},
          ixx.value() / 12.0, iyy.value() / 12.0, ixy.value() / 24.0};
}

} // namespace

Loop::Loop(std::vector<Point> vertices)
    : vertices_(std::move(vertices)), signed_area_(loop_signed_area(vertices_)) {}

Loop Loop::reversed() const {
  std::vector<Point> v(vertices_.rbegin(), vertices_.rend());
  return Loop(std::move(v));
}

PatchRegion::PatchRegion(const std::vector<std::vector<Point>>& loops)
    : PatchRegion([&] {
        std::vector<Loop> out;
        out.reserve(loops.size());
        for (const auto& l : loops)
          out.emplace_back(l);
        return out;
      }()) {}

PatchRegion::PatchRegion(std::vector<Loop> loops) : loops_(std::move(loops)) {
  if (loops_.empty())
    throw ValidationError("region has no loops");
  std::vector<std::vector<Point>> raw;
  raw.reserve(loops_.size());
  for (std::size_t i = 0; i < loops_.size(); ++i) {
    check_loop_basic(loops_[i].vertices(), i);
    raw.emplace_back(loops_[i].vertices().begin(), loops_[i].vertices().end());
  }
  check_simple(raw);

  for (std::size_t i = 0; i < loops_.size(); ++i) {
    int depth = 0;
    for (std::size_t j = 0; j < loops_.size(); ++j)
      if (j != i && winding_number(raw[j], raw[i][0]) != 0)
        ++depth;
    const bool want_ccw = depth % 2 == 0;
    if ((loops_[i].signed_area() > 0.0) != want_ccw)
      loops_[i] = loops_[i].reversed();
  }
  if (area() <= kGeomEps * kGeomEps)
    throw ValidationError("region has non-positive total area");
}

std::size_t PatchRegion::vertex_count() const {
  std::size_t n = 0;
  for (const Loop& l : loops_)
    n += l.size();
  return n;
}

double PatchRegion::area() const {
  CompensatedSum s;
  for (const Loop& l : loops_)
    s += l.signed_area();
  return s.value();
}

Disk::Disk(Point c, double r) : center(c), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw DomainError("disk radius must be positive and finite");
  if (!std::isfinite(c.x) || !std::isfinite(c.y))
    throw DomainError("disk center must be finite");
}

int winding_number(std::span<const Point> v, Point p) {
  int w = 0;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point a = v[i];
    const Point b = v[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && cross(b - a, p - a) > 0.0)
        ++w;
    } else if (b.y <= p.y && cross(b - a, p - a) < 0.0) {
      --w;
    }
  }
  return w;
}

int winding_number(const PatchRegion& region, Point p) {
  int w = 0;
  for (const Loop& l : region.loops())
    w += winding_number(l.vertices(), p);
  return w;
}

bool contains(const PatchRegion& region, Point p) { return winding_number(region, p) != 0; }

void check_simple(std::span<const std::vector<Point>> loops) {
  if (auto why = find_intersection(loops); !why.empty())
    throw ValidationError("boundary not simple: " + why);
}

bool is_simple(std::span<const std::vector<Point>> loops) {
  return find_intersection(loops).empty();
}

Moments region_moments(const PatchRegion& region) {
  const LocalMoments m = local_moments(region);
  const Point c = m.ref;
  Moments out;
  out.mass = m.mass;
  out.momentum = m.first + m.mass * c;
  out.angular = (m.xx + m.yy) + 2.0 * dot(c, m.first) + norm2(c) * m.mass;
  return out;
}

double centered_polar_moment(const PatchRegion& region) {
  const LocalMoments m = local_moments(region);
  return (m.xx + m.yy) - norm2(m.first) / m.mass;
}

CentralInertia central_inertia(const PatchRegion& region) {
  const LocalMoments m = local_moments(region);
  const Vec2 c = (1.0 / m.mass) * m.first;
  return {m.xx - m.mass * c.x * c.x, m.yy - m.mass * c.y * c.y, m.xy - m.mass * c.x * c.y};
}

Moments disk_moments(const Disk& disk) {
  if (!(disk.radius > 0.0))
    throw DomainError("disk radius must be positive");
  const double r2 = disk.radius * disk.radius;
  const double mass = kPi * r2;
  return {mass, mass * disk.center, 0.5 * kPi * r2 * r2 + mass * norm2(disk.center)};
}

double polygon_disk_intersection_area(const PatchRegion& region, const Disk& disk) {
  CompensatedSum s;
  for (const Loop& loop : region.loops()) {
    const auto v = loop.vertices();
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i)
      s += triangle_disk_area(v[i] - disk.center, v[(i + 1) % n] - disk.center, disk.radius);
  }
  const double disk_area = kPi * disk.radius * disk.radius;
  return std::clamp(s.value(), 0.0, std::min(region.area(), disk_area));
}

double symmetric_difference_area(const PatchRegion& region, const Disk& disk) {
  const double inter = polygon_disk_intersection_area(region, disk);
  const double d = region.area() + kPi * disk.radius * disk.radius - 2.0 * inter;
  return std::max(d, 0.0);
}

double sup_weight(const PatchRegion& region, const Disk& disk) {
  if (norm(disk.center) > kGeomEps)
    throw DomainError("sup_weight requires a disk centered at the origin");
  const double rr = disk.radius * disk.radius;
  const Point origin{0.0, 0.0};

  double max_r2 = 0.0;
  double min_d2 = std::numeric_limits<double>::infinity();
  for (const Loop& loop : region.loops()) {
    const auto v = loop.vertices();
    const std::size_t n = v.size();
    // Vertices maximize |x|^2 on A; perpendicular feet (or endpoints)
    // minimize the distance from the origin to the boundary.
#pragma omp parallel for reduction(max : max_r2) reduction(min : min_d2) if (n > 4096)
    for (std::size_t i = 0; i < n; ++i) {
      max_r2 = std::max(max_r2, norm2(v[i]));
      min_d2 = std::min(min_d2, point_segment_distance2(origin, v[i], v[(i + 1) % n]));
    }
  }

  const double outside = max_r2 > rr ? max_r2 - rr : 0.0;
  // If the origin is not in A it belongs to the closure of B \ A.
  const double d2 = contains(region, origin) ? min_d2 : 0.0;
  const double inside = d2 < rr ? rr - d2 : 0.0;
  return std::max(outside, inside);
}

double area_matched_circumradius(int n, double radius) {
  if (n < 3)
    throw DomainError("regular polygon needs n >= 3");
  const double s = std::sin(2.0 * kPi / n);
  return radius * std::sqrt(2.0 * kPi / (n * s));
}

std::vector<Point> regular_ngon_vertices(int n, const Disk& target, bool area_matched) {
  if (n < 3)
    throw DomainError("regular polygon needs n >= 3");
  const double R = area_matched ? area_matched_circumradius(n, target.radius) : target.radius;
  std::vector<Point> v(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double th = 2.0 * kPi * k / n;
    v[static_cast<std::size_t>(k)] = target.center + R * Vec2{std::cos(th), std::sin(th)};
  }
  return v;
}

PatchRegion regular_ngon(int n, const Disk& target, bool area_matched) {
  return PatchRegion(std::vector<Loop>{Loop(regular_ngon_vertices(n, target, area_matched))});
}

double sagitta_area_bound(int n, double radius) {
  const double r2 = radius * radius;
  return kPi * r2 - 0.5 * n * r2 * std::sin(2.0 * kPi / n);
}

} // namespace vortexpatch
