#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace rlab {

using Vec = std::vector<double>;

inline void require_same_dim(const Vec& a, const Vec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

inline Vec add(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Vec scale(double s, const Vec& a) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
  return r;
}

// s*a + (1-s)*b
inline Vec lerp(double s, const Vec& a, const Vec& b) {
  require_same_dim(a, b);
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i] + (1.0 - s) * b[i];
  return r;
}

inline Vec midpoint(const Vec& a, const Vec& b) { return lerp(0.5, a, b); }

inline Vec zero_vec(int dim) { return Vec(static_cast<std::size_t>(dim), 0.0); }

inline Vec unit_coord(int dim, int k) {
  Vec r = zero_vec(dim);
  r[static_cast<std::size_t>(k)] = 1.0;
  return r;
}

inline bool all_finite(const Vec& a) {
  for (double c : a) {
    if (!std::isfinite(c)) return false;
  }
  return true;
}

}  // namespace rlab
