#pragma once

#include <span>

#include "rlab/operators.hpp"
#include "rlab/report.hpp"
#include "rlab/space.hpp"

namespace rlab {

enum class ResolveMethod { automatic, linear_solve, closed_form, banach_iteration, root_find };

const char* resolve_method_name(ResolveMethod m);

// J_{lambda A} x with its own certificate: residual = ||point + lambda A(point) - x||,
// recomputed from the definition after the solve.
struct ResolventResult {
  Vec point;
  double residual = 0.0;
  long iterations = 0;
  ResolveMethod method = ResolveMethod::closed_form;
  bool ok = false;
};

struct ResolveOptions {
  double tol = 1e-10;
  long max_iterations = 1'000'000;
  ResolveMethod force = ResolveMethod::automatic;
};

// Method per family: matrices solve (I + lambda M) y = x directly (forced
// root_find runs CG on the normal equations instead); constant targets use
// y = (x + lambda c)/(1 + lambda); Id - T runs the contraction iteration
// u <- t T u + (1-t) x with t = lambda/(1+lambda), stopping at successive
// difference tol*(1-t)/t, with a damped residual line search as fallback when
// the iteration budget runs out; diagonal operators bisect per coordinate.
ResolventResult resolve(const Operator& a, const LpSpace& s, double lambda, const Vec& x,
                        const ResolveOptions& opt = {});

// The unique x_t with x_t = t T(x_t) + (1-t) x, found by its own contraction
// loop (started at T(x), unlike resolve).  ||x_t - (t T x_t + (1-t) x)|| <= tol.
Vec psc_bridge(const Mapping& t_map, const LpSpace& s, double t, const Vec& x, double tol,
               long max_iterations = 1'000'000);

// ||J u - J v|| <= ||u - v|| on sampled pairs, plus fixed-point/zero
// correspondence on the supplied certified zeros.
AuditReport check_resolvent_nonexpansive(const Operator& a, const LpSpace& s, double lambda,
                                         const SamplePlan& plan,
                                         std::span<const Vec> certified_zeros = {},
                                         double tol = 1e-8);

}  // namespace rlab
