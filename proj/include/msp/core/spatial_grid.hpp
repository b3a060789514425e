#pragma once

#include <cstdint>
#include <span>
#include <unordered_map>
#include <vector>

#include "msp/core/vec3.hpp"

namespace msp {

// Uniform hash grid over a fixed point set for radius and nearest queries.
class SpatialGrid {
 public:
  SpatialGrid(std::span<const Vec3> points, double cell_size);

  // Indices of points within `radius` of `q` (inclusive), ascending.
  std::vector<std::uint32_t> within(const Vec3& q, double radius) const;

  // Index of the nearest point; ties resolve to the lower index. Requires a
  // non-empty point set.
  std::uint32_t nearest(const Vec3& q) const;

  double cell_size() const { return cell_; }

 private:
  struct Key {
    std::int64_t x, y, z;
    bool operator==(const Key&) const = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const noexcept;
  };

  Key key_of(const Vec3& p) const;
  void visit_shell(const Key& center, std::int64_t ring, std::vector<std::uint32_t>& out) const;

  std::span<const Vec3> points_;
  double cell_;
  std::unordered_map<Key, std::vector<std::uint32_t>, KeyHash> cells_;
  Key lo_{}, hi_{};
};

}  // namespace msp
