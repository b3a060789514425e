#include "msp/core/spatial_grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "msp/core/error.hpp"
#include "msp/core/rng.hpp"

namespace msp {

std::size_t SpatialGrid::KeyHash::operator()(const Key& k) const noexcept {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(k.x));
  h = mix64(h ^ static_cast<std::uint64_t>(k.y));
  h = mix64(h ^ static_cast<std::uint64_t>(k.z));
  return static_cast<std::size_t>(h);
}

SpatialGrid::SpatialGrid(std::span<const Vec3> points, double cell_size)
    : points_(points), cell_(cell_size) {
  if (!(cell_size > 0.0)) fail(ErrorCode::kInvalidArgument, "grid cell size must be positive");
  bool first = true;
  for (std::uint32_t i = 0; i < points.size(); ++i) {
    const Key k = key_of(points[i]);
    cells_[k].push_back(i);
    if (first) {
      lo_ = hi_ = k;
      first = false;
    } else {
      lo_ = {std::min(lo_.x, k.x), std::min(lo_.y, k.y), std::min(lo_.z, k.z)};
      hi_ = {std::max(hi_.x, k.x), std::max(hi_.y, k.y), std::max(hi_.z, k.z)};
    }
  }
}

SpatialGrid::Key SpatialGrid::key_of(const Vec3& p) const {
  return {static_cast<std::int64_t>(std::floor(p.x / cell_)),
          static_cast<std::int64_t>(std::floor(p.y / cell_)),
          static_cast<std::int64_t>(std::floor(p.z / cell_))};
}

std::vector<std::uint32_t> SpatialGrid::within(const Vec3& q, double radius) const {
  std::vector<std::uint32_t> out;
  const Key a = key_of(q - Vec3{radius, radius, radius});
  const Key b = key_of(q + Vec3{radius, radius, radius});
  const double r2 = radius * radius;
  for (std::int64_t x = std::max(a.x, lo_.x); x <= std::min(b.x, hi_.x); ++x) {
    for (std::int64_t y = std::max(a.y, lo_.y); y <= std::min(b.y, hi_.y); ++y) {
      for (std::int64_t z = std::max(a.z, lo_.z); z <= std::min(b.z, hi_.z); ++z) {
        const auto it = cells_.find({x, y, z});
        if (it == cells_.end()) continue;
        for (auto i : it->second) {
          if (distance_sq(points_[i], q) <= r2) out.push_back(i);
        }
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void SpatialGrid::visit_shell(const Key& c, std::int64_t ring, std::vector<std::uint32_t>& out) const {
  for (std::int64_t x = c.x - ring; x <= c.x + ring; ++x) {
    for (std::int64_t y = c.y - ring; y <= c.y + ring; ++y) {
      for (std::int64_t z = c.z - ring; z <= c.z + ring; ++z) {
        const bool on_shell = std::max({std::abs(x - c.x), std::abs(y - c.y), std::abs(z - c.z)}) == ring;
        if (!on_shell) continue;
        const auto it = cells_.find({x, y, z});
        if (it != cells_.end()) out.insert(out.end(), it->second.begin(), it->second.end());
      }
    }
  }
}

std::uint32_t SpatialGrid::nearest(const Vec3& q) const {
  if (points_.empty()) fail(ErrorCode::kEmptyStructure, "nearest query on empty grid");
  const Key c = key_of(q);
  // Rings needed to cover the whole occupied box from the query cell.
  const std::int64_t max_ring = std::max({std::abs(c.x - lo_.x), std::abs(c.x - hi_.x),
                                          std::abs(c.y - lo_.y), std::abs(c.y - hi_.y),
                                          std::abs(c.z - lo_.z), std::abs(c.z - hi_.z)});
  double best = std::numeric_limits<double>::infinity();
  std::uint32_t best_i = 0;
  std::vector<std::uint32_t> candidates;
  for (std::int64_t ring = 0; ring <= max_ring; ++ring) {
    candidates.clear();
    visit_shell(c, ring, candidates);
    for (auto i : candidates) {
      const double d = distance_sq(points_[i], q);
      if (d < best || (d == best && i < best_i)) {
        best = d;
        best_i = i;
      }
    }
    // Anything in ring+1 or beyond is at least ring*cell away.
    if (std::isfinite(best)) {
      const double reach = static_cast<double>(ring) * cell_;
      if (reach * reach > best) break;
    }
  }
  return best_i;
}

}  // namespace msp
