#include "vortexpatch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <utility>

#include "vortexpatch/errors.hpp"
#include "vortexpatch/summation.hpp"

namespace vortexpatch::oracle {

namespace {

struct Box {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void add(Point p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
};

Box bounds(const PatchRegion& region, const std::optional<Disk>& disk) {
  Box b;
  for (const Loop& l : region.loops())
    for (Point p : l.vertices())
      b.add(p);
  if (disk) {
    b.add(disk->center - Vec2{disk->radius, disk->radius});
    b.add(disk->center + Vec2{disk->radius, disk->radius});
  }
  return b;
}

void check_grid(const GridSpec& g, const PatchRegion& region, const std::optional<Disk>& disk) {
  if (!(g.pitch > 0.0))
    throw DomainError("grid pitch must be positive");
  const Box b = bounds(region, disk);
  const double pad = 2.0 * g.pitch;
  if (g.lo.x > b.lo.x - pad || g.lo.y > b.lo.y - pad || g.hi.x < b.hi.x + pad ||
      g.hi.y < b.hi.y + pad)
    throw DomainError("grid box must contain the inputs padded by 2h");
}

// Edges bucketed by y so that scanlines and point queries only visit edges
// spanning the query height.
class EdgeIndex {
public:
  explicit EdgeIndex(const PatchRegion& region) {
    for (const Loop& l : region.loops()) {
      const auto v = l.vertices();
      for (std::size_t i = 0; i < v.size(); ++i)
        edges_.push_back({v[i], v[(i + 1) % v.size()]});
    }
    ymin_ = std::numeric_limits<double>::infinity();
    ymax_ = -ymin_;
    for (const auto& [a, b] : edges_) {
      ymin_ = std::min({ymin_, a.y, b.y});
      ymax_ = std::max({ymax_, a.y, b.y});
    }
    nbins_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::sqrt(edges_.size())) * 2);
    width_ = (ymax_ - ymin_) / static_cast<double>(nbins_);
    bins_.resize(nbins_);
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      const auto& [a, b] = edges_[e];
      const std::size_t lo = bin(std::min(a.y, b.y));
      const std::size_t hi = bin(std::max(a.y, b.y));
      for (std::size_t k = lo; k <= hi; ++k)
        bins_[k].push_back(e);
    }
  }

  // Sorted (x, direction) crossings of the horizontal line at y.
  void crossings(double y, std::vector<std::pair<double, int>>& out) const {
    out.clear();
    if (y < ymin_ || y > ymax_)
      return;
    for (std::size_t e : bins_[bin(y)]) {
      const auto& [a, b] = edges_[e];
      if ((a.y <= y) != (b.y <= y)) {
        const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
        out.emplace_back(x, b.y > a.y ? 1 : -1);
      }
    }
    std::sort(out.begin(), out.end());
  }

  [[nodiscard]] int winding(Point p) const {
    if (p.y < ymin_ || p.y > ymax_)
      return 0;
    int w = 0;
    for (std::size_t e : bins_[bin(p.y)]) {
      const auto& [a, b] = edges_[e];
      if (a.y <= p.y) {
        if (b.y > p.y && cross(b - a, p - a) > 0.0)
          ++w;
      } else if (b.y <= p.y && cross(b - a, p - a) < 0.0) {
        --w;
      }
    }
    return w;
  }

private:
  [[nodiscard]] std::size_t bin(double y) const {
    if (width_ <= 0.0)
      return 0;
    const auto k = static_cast<std::ptrdiff_t>((y - ymin_) / width_);
    return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, static_cast<std::ptrdiff_t>(nbins_) - 1));
  }

  std::vector<std::pair<Point, Point>> edges_;
  std::vector<std::vector<std::size_t>> bins_;
  double ymin_ = 0.0, ymax_ = 0.0, width_ = 0.0;
  std::size_t nbins_ = 1;
};

// Walks the cells of one row reporting occupancy from sorted crossings.
template <class CellFn>
void scan_row(const GridSpec& g, const EdgeIndex& index, std::size_t j,
              std::vector<std::pair<double, int>>& xs, CellFn&& fn) {
  const double y = g.lo.y + (static_cast<double>(j) + 0.5) * g.pitch;
  index.crossings(y, xs);
  std::size_t k = 0;
  int w = 0;
  const std::size_t nx = g.nx();
  for (std::size_t i = 0; i < nx; ++i) {
    const double x = g.lo.x + (static_cast<double>(i) + 0.5) * g.pitch;
    while (k < xs.size() && xs[k].first <= x) {
      w -= xs[k].second;
      ++k;
    }
    fn(i, Point{x, y}, w != 0);
  }
}

// Runs `row_fn(j, xs) -> T` over all rows in parallel and returns the
// per-row results in row order.
template <class T, class RowFn>
std::vector<T> per_row(const GridSpec& g, RowFn&& row_fn) {
  const std::size_t ny = g.ny();
  std::vector<T> rows(ny);
#pragma omp parallel
  {
    std::vector<std::pair<double, int>> xs;
#pragma omp for schedule(static)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(ny); ++j)
      rows[static_cast<std::size_t>(j)] = row_fn(static_cast<std::size_t>(j), xs);
  }
  return rows;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double unit_double(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

} // namespace

std::size_t GridSpec::nx() const {
  return static_cast<std::size_t>(std::ceil((hi.x - lo.x) / pitch - 1e-9));
}

std::size_t GridSpec::ny() const {
  return static_cast<std::size_t>(std::ceil((hi.y - lo.y) / pitch - 1e-9));
}

GridSpec grid_for(const PatchRegion& region, const std::optional<Disk>& disk, double pitch) {
  if (!(pitch > 0.0))
    throw DomainError("grid pitch must be positive");
  const Box b = bounds(region, disk);
  const double pad = 3.0 * pitch;
  return {pitch, {b.lo.x - pad, b.lo.y - pad}, {b.hi.x + pad, b.hi.y + pad}};
}

std::vector<std::uint8_t> rasterize(const PatchRegion& region, const GridSpec& grid) {
  check_grid(grid, region, std::nullopt);
  const EdgeIndex index(region);
  const std::size_t nx = grid.nx();
  std::vector<std::uint8_t> mask(nx * grid.ny(), 0);
  per_row<char>(grid, [&](std::size_t j, auto& xs) {
    scan_row(grid, index, j, xs,
             [&](std::size_t i, Point, bool in) { mask[j * nx + i] = in ? 1 : 0; });
    return char{0};
  });
  return mask;
}

std::vector<std::uint8_t> rasterize_serial(const PatchRegion& region, const GridSpec& grid) {
  check_grid(grid, region, std::nullopt);
  const std::size_t nx = grid.nx();
  const std::size_t ny = grid.ny();
  std::vector<std::uint8_t> mask(nx * ny, 0);
  for (std::size_t j = 0; j < ny; ++j)
    for (std::size_t i = 0; i < nx; ++i)
      mask[j * nx + i] = contains(region, grid.cell_center(i, j)) ? 1 : 0;
  return mask;
}

Moments grid_moments(const PatchRegion& region, const GridSpec& grid) {
  check_grid(grid, region, std::nullopt);
  const EdgeIndex index(region);
  struct Row {
    double n = 0, mx = 0, my = 0, i = 0;
  };
  const auto rows = per_row<Row>(grid, [&](std::size_t j, auto& xs) {
    CompensatedSum n, mx, my, in;
    scan_row(grid, index, j, xs, [&](std::size_t, Point c, bool inside) {
      if (!inside)
        return;
      n += 1.0;
      mx += c.x;
      my += c.y;
      in += norm2(c);
    });
    return Row{n.value(), mx.value(), my.value(), in.value()};
  });
  CompensatedSum n, mx, my, in;
  for (const Row& r : rows) {
    n += r.n;
    mx += r.mx;
    my += r.my;
    in += r.i;
  }
  const double cell = grid.pitch * grid.pitch;
  return {n.value() * cell, {mx.value() * cell, my.value() * cell}, in.value() * cell};
}

double grid_q_direct(const PatchRegion& region, const Disk& disk, const GridSpec& grid) {
  check_grid(grid, region, disk);
  const EdgeIndex index(region);
  const double rr = disk.radius * disk.radius;
  const auto rows = per_row<double>(grid, [&](std::size_t j, auto& xs) {
    CompensatedSum s;
    scan_row(grid, index, j, xs, [&](std::size_t, Point c, bool in_a) {
      const double d2 = norm2(c - disk.center);
      if (in_a != (d2 < rr))
        s += std::abs(d2 - rr);
    });
    return s.value();
  });
  CompensatedSum total;
  for (double r : rows)
    total += r;
  return total.value() * grid.pitch * grid.pitch;
}

AdditivityCheck grid_q_additivity(const PatchRegion& region, const Disk& disk,
                                  const GridSpec& grid) {
  check_grid(grid, region, disk);
  const EdgeIndex index(region);
  const double rr = disk.radius * disk.radius;
  struct Row {
    double uni = 0, inter = 0, a = 0;
  };
  const auto rows = per_row<Row>(grid, [&](std::size_t j, auto& xs) {
    CompensatedSum su, si, sa;
    scan_row(grid, index, j, xs, [&](std::size_t, Point c, bool in_a) {
      const double d2 = norm2(c - disk.center);
      const bool in_b = d2 < rr;
      const double w = std::abs(d2 - rr);
      if ((in_a || in_b) != in_b)
        su += w;
      if ((in_a && in_b) != in_b)
        si += w;
      if (in_a != in_b)
        sa += w;
    });
    return Row{su.value(), si.value(), sa.value()};
  });
  CompensatedSum su, si, sa;
  for (const Row& r : rows) {
    su += r.uni;
    si += r.inter;
    sa += r.a;
  }
  const double cell = grid.pitch * grid.pitch;
  return {(su.value() + si.value()) * cell, sa.value() * cell};
}

McEstimate mc_symmetric_difference(const PatchRegion& region, const Disk& disk,
                                   const McConfig& config) {
  if (config.samples == 0)
    throw DomainError("Monte Carlo needs at least one sample");
  const Box b = bounds(region, disk);
  const EdgeIndex index(region);
  const double rr = disk.radius * disk.radius;
  const Vec2 span = b.hi - b.lo;

  constexpr std::uint64_t kChunk = 1 << 16;
  const std::uint64_t chunks = (config.samples + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
#pragma omp parallel for schedule(static)
  for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
    const auto uc = static_cast<std::uint64_t>(c);
    std::mt19937_64 rng(splitmix64(config.seed ^ splitmix64(uc)));
    const std::uint64_t count = std::min(kChunk, config.samples - uc * kChunk);
    std::uint64_t h = 0;
    for (std::uint64_t s = 0; s < count; ++s) {
      const double x = b.lo.x + span.x * unit_double(rng);
      const double y = b.lo.y + span.y * unit_double(rng);
      const Point p{x, y};
      const bool in_a = index.winding(p) != 0;
      const bool in_b = norm2(p - disk.center) < rr;
      h += in_a != in_b ? 1 : 0;
    }
    hits[uc] = h;
  }
  std::uint64_t total = 0;
  for (auto h : hits)
    total += h;
  const double n = static_cast<double>(config.samples);
  const double p = static_cast<double>(total) / n;
  const double box_area = span.x * span.y;
  return {box_area * p, box_area * std::sqrt(p * (1.0 - p) / n)};
}

} // namespace vortexpatch::oracle
