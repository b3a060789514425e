#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace msp {

// splitmix64 finalizer; the only source of randomness in the toolkit so that
// results do not depend on the standard library's distribution algorithms.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Counter-based generator: value i of stream (seed) is mix64(seed ^ mix64(i)).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(mix64(seed)) {}

  std::uint64_t next_u64() { return mix64(seed_ ^ mix64(counter_++)); }
  // Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next_u64() % n; }
  double normal();

  std::uint64_t counter() const { return counter_; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

}  // namespace msp
