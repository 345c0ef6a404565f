#pragma once

#include <stdexcept>
#include <string>

namespace rlab {

// Nonnegative integer function over which metastability windows quantify.
// Restricted to a labelled family (no expression interpreter).
struct Counterfunction {
  enum class Kind { constant, identity, affine };

  Kind kind = Kind::constant;
  long a = 0;   // slope for affine
  long b0 = 0;  // constant value / affine offset

  static Counterfunction constant(long c) {
    if (c < 0) throw std::invalid_argument("counterfunction must be nonnegative");
    return Counterfunction{Kind::constant, 0, c};
  }
  static Counterfunction identity() { return Counterfunction{Kind::identity, 0, 0}; }
  static Counterfunction affine(long a, long b0) {
    if (a < 0 || b0 < 0) throw std::invalid_argument("counterfunction must be nonnegative");
    return Counterfunction{Kind::affine, a, b0};
  }

  long operator()(long n) const {
    switch (kind) {
      case Kind::constant: return b0;
      case Kind::identity: return n;
      case Kind::affine: return a * n + b0;
    }
    return 0;
  }

  std::string label() const {
    switch (kind) {
      case Kind::constant: return "const:" + std::to_string(b0);
      case Kind::identity: return "identity";
      case Kind::affine: return "affine:" + std::to_string(a) + ":" + std::to_string(b0);
    }
    return "?";
  }
};

}  // namespace rlab
