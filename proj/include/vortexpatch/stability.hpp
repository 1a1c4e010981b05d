#pragma once

#include "vortexpatch/geometry.hpp"

namespace vortexpatch {

/// The weighted symmetric-difference functional Q(A; B_r(x0)), always >= 0.
struct QValue {
  double q = 0.0;
};

struct StabilityReport {
  Moments moments;
  double q = 0.0;
  double lemma1_gap = 0.0;
  double l1_distance = 0.0;
  double lemma2_lhs = 0.0;  // l1_distance^2
  double lemma2_rhs = 0.0;  // 4 pi q
  double margin = 0.0;      // rhs - lhs
};

struct TheoremBound {
  double sup_weight = 0.0;
  double initial_l1 = 0.0;
  double bound = 0.0;  // 4 pi sup_weight initial_l1
  // Q(A0;B) <= sup_weight * initial_l1, the step that closes the estimate.
  double q = 0.0;
  double q_cap = 0.0;
};

struct PrelimCheck {
  double lhs = 0.0;  // (|A| - pi r^2)^2
  double rhs = 0.0;  // 2 pi Q(A;B)
};

/// Q from the moments alone:
///   Q = i - |A|^2/2pi - |M|^2/|A| + (pi r^2 - |A|)^2/2pi + |A| |x0 - M/|A||^2.
/// Every term is non-negative, so the sum carries no cancellation beyond the
/// one inside the moment gap.
QValue q_value(const Moments& m, const Disk& disk);
QValue q_value(const PatchRegion& region, const Disk& disk);

/// i(A) - |A|^2/2pi - |M(A)|^2/|A|; non-negative, zero only for disks.
double lemma1_gap(const Moments& m);
/// Same gap evaluated with centered moments for better conditioning.
double lemma1_gap(const PatchRegion& region);

/// Disk with the same mass and center of mass; the unique minimizer of Q(A; .).
Disk best_fit_disk(const Moments& m);
Disk best_fit_disk(const PatchRegion& region);

/// Throws DomainError unless the disk is centered at the origin.
void require_origin_centered(const Disk& disk, const char* what);

StabilityReport lemma2_check(const PatchRegion& region, const Disk& disk);
PrelimCheck prelim_check(const PatchRegion& region, const Disk& disk);

/// Polygonal B_a(0) ∪ (B_b(0) \ B_r(0)) with b^2 = 2r^2 - a^2, built from
/// three area-matched n-gons: outer b-loop, r-hole and the inner a-loop.
PatchRegion equality_case_region(double r, double a, int n);

TheoremBound theorem_bound(const PatchRegion& initial, const Disk& disk);

} // namespace vortexpatch
