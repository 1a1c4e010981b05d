#include "vortexpatch/stability.hpp"

#include <cmath>
#include <string>

#include "vortexpatch/errors.hpp"

namespace vortexpatch {

namespace {

void require_mass(double mass) {
  if (!(mass > 0.0))
    throw DomainError("region has zero mass");
}

} // namespace

double lemma1_gap(const Moments& m) {
  require_mass(m.mass);
  return m.angular - m.mass * m.mass / (2.0 * kPi) - norm2(m.momentum) / m.mass;
}

double lemma1_gap(const PatchRegion& region) {
  const double mass = region.area();
  require_mass(mass);
  return centered_polar_moment(region) - mass * mass / (2.0 * kPi);
}

namespace {

double q_from_gap(double gap, const Moments& m, const Disk& disk) {
  const double disk_area = kPi * disk.radius * disk.radius;
  const Vec2 offset = disk.center - (1.0 / m.mass) * m.momentum;
  const double mass_term = (disk_area - m.mass) * (disk_area - m.mass) / (2.0 * kPi);
  return gap + mass_term + m.mass * norm2(offset);
}

} // namespace

QValue q_value(const Moments& m, const Disk& disk) {
  return {q_from_gap(lemma1_gap(m), m, disk)};
}

QValue q_value(const PatchRegion& region, const Disk& disk) {
  const Moments m = region_moments(region);
  return {q_from_gap(lemma1_gap(region), m, disk)};
}

Disk best_fit_disk(const Moments& m) {
  require_mass(m.mass);
  return Disk((1.0 / m.mass) * m.momentum, std::sqrt(m.mass / kPi));
}

Disk best_fit_disk(const PatchRegion& region) { return best_fit_disk(region_moments(region)); }

void require_origin_centered(const Disk& disk, const char* what) {
  if (norm(disk.center) > kGeomEps)
    throw DomainError(std::string(what) + " requires a disk centered at the origin");
}

StabilityReport lemma2_check(const PatchRegion& region, const Disk& disk) {
  require_origin_centered(disk, "lemma2_check");
  StabilityReport rep;
  rep.moments = region_moments(region);
  rep.lemma1_gap = lemma1_gap(region);
  rep.q = q_from_gap(rep.lemma1_gap, rep.moments, disk);
  rep.l1_distance = symmetric_difference_area(region, disk);
  rep.lemma2_lhs = rep.l1_distance * rep.l1_distance;
  rep.lemma2_rhs = 4.0 * kPi * rep.q;
  rep.margin = rep.lemma2_rhs - rep.lemma2_lhs;
  return rep;
}

PrelimCheck prelim_check(const PatchRegion& region, const Disk& disk) {
  require_origin_centered(disk, "prelim_check");
  const double excess = region.area() - kPi * disk.radius * disk.radius;
  return {excess * excess, 2.0 * kPi * q_value(region, disk).q};
}

PatchRegion equality_case_region(double r, double a, int n) {
  if (!(r > 0.0))
    throw DomainError("equality case needs r > 0");
  if (!(a > 0.0) || !(a < r))
    throw DomainError("equality case needs 0 < a < r");
  if (n < 16)
    throw DomainError("equality case needs n >= 16");
  const double b = std::sqrt(2.0 * r * r - a * a);
  const Point o{0.0, 0.0};
  std::vector<Loop> loops;
  loops.emplace_back(regular_ngon_vertices(n, Disk(o, b), true));
  loops.emplace_back(regular_ngon_vertices(n, Disk(o, r), true));
  loops.emplace_back(regular_ngon_vertices(n, Disk(o, a), true));
  return PatchRegion(std::move(loops));
}

TheoremBound theorem_bound(const PatchRegion& initial, const Disk& disk) {
  require_origin_centered(disk, "theorem_bound");
  TheoremBound tb;
  tb.sup_weight = sup_weight(initial, disk);
  tb.initial_l1 = symmetric_difference_area(initial, disk);
  tb.bound = 4.0 * kPi * tb.sup_weight * tb.initial_l1;
  tb.q = q_value(initial, disk).q;
  tb.q_cap = tb.sup_weight * tb.initial_l1;
  return tb;
}

} // namespace vortexpatch
