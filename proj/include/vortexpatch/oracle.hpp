#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "vortexpatch/geometry.hpp"

namespace vortexpatch::oracle {

/// Uniform grid of square cells with pitch h covering [lo, hi].
struct GridSpec {
  double pitch = 0.005;
  Point lo;
  Point hi;

  [[nodiscard]] std::size_t nx() const;
  [[nodiscard]] std::size_t ny() const;
  [[nodiscard]] Point cell_center(std::size_t i, std::size_t j) const {
    return {lo.x + (static_cast<double>(i) + 0.5) * pitch,
            lo.y + (static_cast<double>(j) + 0.5) * pitch};
  }
};

struct McConfig {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 42;
};

struct AdditivityCheck {
  double lhs = 0.0;  // Q(A∪B;B) + Q(A∩B;B)
  double rhs = 0.0;  // Q(A;B)
};

struct McEstimate {
  double estimate = 0.0;
  double stderr_ = 0.0;
};

/// Grid with pitch h whose box contains the region (and the disk, if given)
/// with a 3h margin.
GridSpec grid_for(const PatchRegion& region, const std::optional<Disk>& disk, double pitch);

/// Occupancy of cell centers, row-major (j * nx + i). Scanline fill, rows in
/// parallel.
std::vector<std::uint8_t> rasterize(const PatchRegion& region, const GridSpec& grid);
/// Same mask by an independent winding-number test per cell.
std::vector<std::uint8_t> rasterize_serial(const PatchRegion& region, const GridSpec& grid);

/// Cell-center sums of 1, x and |x|^2 over occupied cells. First-order in h.
Moments grid_moments(const PatchRegion& region, const GridSpec& grid);

/// Direct quadrature of the weighted symmetric difference:
///   sum over cells in exactly one of A, B of ||x_c - x0|^2 - r^2| h^2.
double grid_q_direct(const PatchRegion& region, const Disk& disk, const GridSpec& grid);

/// Q(A∪B;B) + Q(A∩B;B) against Q(A;B), all on the same rasterization.
AdditivityCheck grid_q_additivity(const PatchRegion& region, const Disk& disk,
                                  const GridSpec& grid);

/// Uniform sampling of |A △ B| over the joint bounding box. Deterministic for
/// a fixed seed regardless of thread count.
McEstimate mc_symmetric_difference(const PatchRegion& region, const Disk& disk,
                                   const McConfig& config);

} // namespace vortexpatch::oracle
