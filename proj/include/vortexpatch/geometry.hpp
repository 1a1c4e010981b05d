#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace vortexpatch {

/// Tolerance for vertex coincidence and simplicity tests (length units).
inline constexpr double kGeomEps = 1e-9;
/// Relative slack for inequality checks.
inline constexpr double kNumEps = 1e-9;

inline constexpr double kPi = 3.14159265358979323846;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  constexpr Vec2& operator+=(Vec2 b) {
    x += b.x;
    y += b.y;
    return *this;
  }
  friend constexpr bool operator==(Vec2, Vec2) = default;
};

using Point = Vec2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// A closed polygonal loop. The closing edge back to the first vertex is
/// implicit. Counterclockwise loops bound material, clockwise loops are holes.
class Loop {
public:
  Loop() = default;
  explicit Loop(std::vector<Point> vertices);

  [[nodiscard]] std::span<const Point> vertices() const { return vertices_; }
  [[nodiscard]] std::size_t size() const { return vertices_.size(); }
  [[nodiscard]] const Point& operator[](std::size_t i) const { return vertices_[i]; }
  [[nodiscard]] double signed_area() const { return signed_area_; }

  /// Same vertices, opposite traversal.
  [[nodiscard]] Loop reversed() const;

private:
  std::vector<Point> vertices_;
  double signed_area_ = 0.0;
};

/// A bounded open set represented by non-crossing oriented loops.
///
/// Construction normalizes orientation by nesting depth (loops at even depth
/// become counterclockwise outer boundaries, odd depth clockwise holes) and
/// validates every invariant, throwing ValidationError on failure.
class PatchRegion {
public:
  explicit PatchRegion(std::vector<Loop> loops);
  explicit PatchRegion(const std::vector<std::vector<Point>>& loops);

  [[nodiscard]] std::span<const Loop> loops() const { return loops_; }
  [[nodiscard]] std::size_t vertex_count() const;
  [[nodiscard]] double area() const;

private:
  std::vector<Loop> loops_;
};

struct Disk {
  Point center;
  double radius = 1.0;

  Disk() = default;
  Disk(Point c, double r);
};

struct Moments {
  double mass = 0.0;
  Vec2 momentum;
  double angular = 0.0;
};

/// Second moments about the centroid: integrals of (x-c_x)^2, (y-c_y)^2 and
/// (x-c_x)(y-c_y).
struct CentralInertia {
  double xx = 0.0;
  double yy = 0.0;
  double xy = 0.0;
};

/// Winding number of the oriented boundary of `region` about `p`.
int winding_number(const PatchRegion& region, Point p);
/// Winding number of a single loop about `p`.
int winding_number(std::span<const Point> loop, Point p);
/// True when `p` lies in the region (non-zero total winding).
bool contains(const PatchRegion& region, Point p);
inline bool contains(const Disk& d, Point p) { return norm2(p - d.center) < d.radius * d.radius; }

/// Throws ValidationError if any two edges of the given loops intersect or
/// touch, excluding the shared vertex of consecutive edges.
void check_simple(std::span<const std::vector<Point>> loops);
/// Non-throwing variant of check_simple.
bool is_simple(std::span<const std::vector<Point>> loops);

/// Mass, momentum and angular momentum by per-edge Green's theorem.
Moments region_moments(const PatchRegion& region);
Moments disk_moments(const Disk& disk);
CentralInertia central_inertia(const PatchRegion& region);

/// i(A) - |M(A)|^2/|A| evaluated about a local reference point, which keeps
/// the cancellation out of the translation part.
double centered_polar_moment(const PatchRegion& region);

/// |A ∩ B|, exact: edge portions inside the disk plus closed-form arc terms.
double polygon_disk_intersection_area(const PatchRegion& region, const Disk& disk);
/// |A △ B| = |A| + |B| - 2|A ∩ B|.
double symmetric_difference_area(const PatchRegion& region, const Disk& disk);

/// sup of ||x|^2 - r^2| over the closure of A △ B for an origin-centered disk.
/// Throws DomainError for an off-origin disk.
double sup_weight(const PatchRegion& region, const Disk& disk);

/// Regular n-gon centered on `target`. With `area_matched` the circumradius
/// is scaled so the polygon area equals pi r^2; otherwise it is inscribed.
PatchRegion regular_ngon(int n, const Disk& target, bool area_matched);
/// Vertices of the same polygon, counterclockwise, first vertex at angle 0.
std::vector<Point> regular_ngon_vertices(int n, const Disk& target, bool area_matched);

/// Circumradius that gives a regular n-gon the area pi r^2.
double area_matched_circumradius(int n, double radius);

/// Area between a circle of radius r and its inscribed regular n-gon, used as
/// a per-fixture discretization slack.
double sagitta_area_bound(int n, double radius);

} // namespace vortexpatch
