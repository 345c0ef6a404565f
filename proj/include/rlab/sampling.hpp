#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "rlab/vec.hpp"

namespace rlab {

// Deterministic uniform source.  mt19937_64 has a fully specified output
// sequence; doubles are extracted by hand so results do not depend on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  // [0,1)
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // [-1,1)
  double symmetric() { return 2.0 * uniform() - 1.0; }

  double uniform_in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  bool coin() { return (next_u64() & 1u) != 0; }

  Vec cube(int dim) {
    Vec v(static_cast<std::size_t>(dim));
    for (auto& c : v) c = symmetric();
    return v;
  }

 private:
  std::mt19937_64 engine_;
};

// Stable seed derivation so every audit cell gets its own reproducible stream.
std::uint64_t derive_seed(std::uint64_t base, std::string_view tag);

}  // namespace rlab
