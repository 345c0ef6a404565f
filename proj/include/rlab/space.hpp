#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "rlab/report.hpp"
#include "rlab/sampling.hpp"
#include "rlab/vec.hpp"

namespace rlab {

// Finite-dimensional l_p space, 1 < p < infinity.  Carries the norm, the dual
// norm (exponent q = p/(p-1)) and the normalized duality mapping j, which is
// single valued here and satisfies <x, j(x)> = ||x||^2 and ||j(x)||_q = ||x||.
struct LpSpace {
  double p;
  int dim;

  LpSpace(double p_, int dim_);

  double norm(const Vec& x) const;
  double dual_norm(const Vec& xstar) const;

  // j(x)_i = ||x||^(2-p) * sign(x_i) * |x_i|^(p-1); j(0) = 0.
  // For p = 2 this is the identity and is returned exactly.
  Vec duality_map(const Vec& x) const;

  // Coordinate pairing <y, x*>.
  double pairing(const Vec& y, const Vec& xstar) const;

  void check_member(const Vec& x) const;
};

struct ConvexityModulus {
  std::function<double(double)> eval;  // (0,2] -> (0,1]
  std::string label;
};

struct SmoothnessModulus {
  std::function<double(double)> eval;  // (0,inf) -> (0,inf)
  std::string label;
};

// Textbook moduli for l_p:
//   eta_p(eps) = 1 - (1 - (eps/2)^p)^(1/p)          for p >= 2
//   eta_p(eps) = (p-1) * eps^2 / 8                  for 1 < p <= 2
//   tau_p(eps) = eps / (p-1)                        for p >= 2
//   tau_p(eps) = (p*eps/2)^(1/(p-1))                for 1 < p <= 2
// These are not taken on faith: the two verifiers below are the oracle.
ConvexityModulus lp_convexity_modulus(const LpSpace& s);
SmoothnessModulus lp_smoothness_modulus(const LpSpace& s);

// Rational-valued moduli eta(eps) = eps^2/8 and tau(eps) = eps, shared by the
// floating and exact evaluation paths.
ConvexityModulus rational_convexity_modulus();
SmoothnessModulus rational_smoothness_modulus();

// Draws pairs from the unit ball with ||x-y|| >= eps (rejection sampling plus
// a deterministic plan of extremal pairs) and asserts
// ||(x+y)/2|| <= 1 - eta(eps) + tol.  Sampler exhaustion is reported in the
// note, not as a failure.
AuditReport verify_convexity_modulus(const LpSpace& s, const ConvexityModulus& eta, double eps,
                                     long samples, std::uint64_t seed, double tol = 1e-9);

// Samples unit x and ||y|| <= tau(eps) (again with designed extremal cases)
// and asserts ||x+y|| + ||x-y|| <= 2 + eps*||y|| + tol.
AuditReport verify_smoothness_modulus(const LpSpace& s, const SmoothnessModulus& tau, double eps,
                                      long samples, std::uint64_t seed, double tol = 1e-9);

// Mostly-boundary sampler for the closed ball of radius r around c: interior
// points half the time, points pushed to the sphere otherwise.
Vec sample_ball(Rng& rng, const LpSpace& s, const Vec& center, double radius);

}  // namespace rlab
