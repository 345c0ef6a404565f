#pragma once

#include <span>

#include "rlab/counterfunction.hpp"
#include "rlab/moduli.hpp"
#include "rlab/operators.hpp"
#include "rlab/resolvent.hpp"

namespace rlab {

// The approximating sequence x_n = J_{lambda_n A} x with residual certificates.
struct Curve {
  std::vector<Vec> points;
  std::vector<double> lambdas;
  Vec base_point;
  std::vector<double> residuals;

  long length() const { return static_cast<long>(points.size()); }
  double max_residual() const;
};

Curve generate_curve(const Operator& a, const LpSpace& s, const Vec& x,
                     std::span<const double> lambdas, const ResolveOptions& opt = {});

struct MetastabilitySearch {
  bool found = false;
  long n = -1;
  double window_max_gap = 0.0;
  // When a window ran past the curve, the length that would have been needed;
  // otherwise the curve length.
  long required_length = 0;
  bool window_exceeded = false;
};

// Least N <= n_max with max_{m,k in [N, N+g(N)]} ||x_m - x_k|| <= eps,
// by exhaustive search.
MetastabilitySearch find_metastable_N(const Curve& curve, const LpSpace& s, double eps,
                                      const Counterfunction& g, long n_max);

// ||x_n - J_A x_n|| <= b/lambda_n for every curve point.
AuditReport audit_asymptotic_regularity(const Curve& curve, const Operator& a, const LpSpace& s,
                                        double b, double tol);

// <x_n - x, j(x_n - p)> <= 0 for a certified zero p.
AuditReport audit_projection_inequality(const Curve& curve, const Operator& a, const LpSpace& s,
                                        const Vec& zero_p, double tol);

// The three displayed inequalities around a nearly-fixed v':
//   <J_lx - x, j(J_lx - J_A v')> <= delta*b*lambda <= eps/4
//   <J_lx - x, j(J_lx - v') - j(J_lx - J_A v')> <= eps/4
//   <J_lx - x, j(J_lx - v')> <= eps/2
// Requires ||v' - J_A v'|| <= delta(eps, lambda); otherwise inapplicable.
AuditReport audit_e1j_e2j(const Operator& a, const LpSpace& s, const Vec& x, double lambda,
                          const Vec& vprime, const ModuliChain& chain, double eps, double tol);

// ||x_h - J_A v||^2 <= ||x_h - (v + J_A v)/2||^2 + nu, gated on the largeness
// conditions lambda_h^2 >= 4 b^2/nu and lambda_h >= 8 b^2/nu.
AuditReport audit_subclaim1(const Operator& a, const LpSpace& s, const Curve& curve, const Vec& v,
                            long h, const ModuliChain& chain, double nu, double tol);

// Far-tail resolvent as the limit-point estimate, with the zero-proximity
// certificate ||Qx - J_A Qx|| <= b/lambda_tail + tol.
struct QEstimate {
  Vec point;
  double regularity_gap = 0.0;
  double bound = 0.0;
  bool certified = false;
};

QEstimate estimate_Q(const Operator& a, const LpSpace& s, const Vec& x, double lambda_tail,
                     double tol);

// <x - Qx, j(p - Qx)> <= 0 for every certified zero p, and Q fixes each zero.
AuditReport audit_sunny(const Operator& a, const LpSpace& s, const Vec& x, const Vec& qx,
                        std::span<const Vec> zeros, double tol, double lambda_tail = 1e4,
                        double zero_tol = 1e-8);

}  // namespace rlab
