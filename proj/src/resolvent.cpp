#include "rlab/resolvent.hpp"

#include <cfloat>
#include <cmath>
#include <sstream>

namespace rlab {

namespace {

double residual_of(const Operator& a, const LpSpace& s, double lambda, const Vec& x,
                   const Vec& y) {
  return s.norm(sub(add(y, scale(lambda, a.eval(y))), x));
}

struct IterOut {
  Vec point;
  long iterations = 0;
  bool converged = false;
};

// u <- t T(u) + (1-t) x, stopping at successive difference <= stop_diff or at
// the rounding floor, whichever comes first.
IterOut contraction_iterate(const std::function<Vec(const Vec&)>& t_eval, const LpSpace& s,
                            double t, const Vec& x, Vec start, double stop_diff, long max_iter) {
  IterOut out;
  Vec u = std::move(start);
  while (out.iterations < max_iter) {
    Vec next = lerp(t, t_eval(u), x);
    ++out.iterations;
    const double diff = s.norm(sub(next, u));
    const double floor = 8.0 * DBL_EPSILON * (1.0 + s.norm(next));
    u = std::move(next);
    if (diff <= stop_diff || diff <= floor) {
      out.converged = true;
      break;
    }
  }
  out.point = std::move(u);
  return out;
}

// Damped descent on ||y + lambda A(y) - x||^2 along -F with a backtracking
// step choice; used only when the contraction budget runs out.
long residual_line_search(const Operator& a, const LpSpace& s, double lambda, const Vec& x,
                          Vec& y) {
  long evals = 0;
  double best = residual_of(a, s, lambda, x, y);
  for (int round = 0; round < 200; ++round) {
    Vec f = sub(add(y, scale(lambda, a.eval(y))), x);
    bool improved = false;
    for (double step : {1.0, 0.5, 0.25, 0.125}) {
      Vec cand = sub(y, scale(step / (1.0 + lambda), f));
      const double r = residual_of(a, s, lambda, x, cand);
      ++evals;
      if (r < best) {
        best = r;
        y = std::move(cand);
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  return evals;
}

// CG on the normal equations of (I + lambda M) y = x; exact after dim steps in
// exact arithmetic, restarted with fresh residuals to polish rounding.
std::pair<Vec, long> cgnr_solve(const Eigen::MatrixXd& m, double lambda, const Vec& x) {
  const long n = static_cast<long>(x.size());
  const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) + lambda * m;
  const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  long iters = 0;
  for (int restart = 0; restart < 4; ++restart) {
    Eigen::VectorXd r = xv - b * y;
    if (r.norm() <= 1e-16 * (1.0 + xv.norm())) break;
    Eigen::VectorXd g = b.transpose() * r;
    Eigen::VectorXd d = g;
    double gg = g.squaredNorm();
    for (long k = 0; k < 2 * n && gg > 0.0; ++k) {
      Eigen::VectorXd bd = b * d;
      const double denom = bd.squaredNorm();
      if (denom == 0.0) break;
      const double alpha = gg / denom;
      y += alpha * d;
      r -= alpha * bd;
      Eigen::VectorXd g_next = b.transpose() * r;
      const double gg_next = g_next.squaredNorm();
      d = g_next + (gg_next / gg) * d;
      g = std::move(g_next);
      gg = gg_next;
      ++iters;
    }
  }
  return {Vec(y.data(), y.data() + y.size()), iters};
}

double bisect_coordinate(double xi, double lambda, const std::function<double(double)>& f,
                         long& iters) {
  if (xi == 0.0) return 0.0;
  auto g = [&](double y) { return y + lambda * f(y) - xi; };
  double lo = std::min(0.0, xi), hi = std::max(0.0, xi);
  for (int k = 0; k < 200; ++k) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ++iters;
    (g(mid) <= 0.0 ? lo : hi) = mid;
  }
  return std::fabs(g(lo)) <= std::fabs(g(hi)) ? lo : hi;
}

}  // namespace

const char* resolve_method_name(ResolveMethod m) {
  switch (m) {
    case ResolveMethod::automatic: return "automatic";
    case ResolveMethod::linear_solve: return "linear_solve";
    case ResolveMethod::closed_form: return "closed_form";
    case ResolveMethod::banach_iteration: return "banach_iteration";
    case ResolveMethod::root_find: return "root_find";
  }
  return "?";
}

ResolventResult resolve(const Operator& a, const LpSpace& s, double lambda, const Vec& x,
                        const ResolveOptions& opt) {
  if (!(lambda > 0.0)) throw std::invalid_argument("resolve: lambda must be positive");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("resolve: tol must be positive");
  s.check_member(x);

  ResolventResult res;
  switch (a.kind()) {
    case Operator::Kind::zero: {
      res.point = x;
      res.method = ResolveMethod::closed_form;
      break;
    }
    case Operator::Kind::constant_target: {
      if (opt.force == ResolveMethod::banach_iteration) {
        const double t = lambda / (1.0 + lambda);
        const Vec& c = a.target();
        auto t_eval = [&c](const Vec&) { return c; };
        IterOut out = contraction_iterate(t_eval, s, t, x, x, 0.5 * opt.tol * (1.0 - t) / t,
                                          opt.max_iterations);
        res.point = std::move(out.point);
        res.iterations = out.iterations;
        res.method = ResolveMethod::banach_iteration;
      } else {
        res.point = lerp(lambda / (1.0 + lambda), a.target(), x);
        res.method = ResolveMethod::closed_form;
      }
      break;
    }
    case Operator::Kind::matrix: {
      if (opt.force == ResolveMethod::root_find) {
        auto [y, iters] = cgnr_solve(a.matrix(), lambda, x);
        res.point = std::move(y);
        res.iterations = iters;
        res.method = ResolveMethod::root_find;
      } else {
        const long n = static_cast<long>(x.size());
        const Eigen::MatrixXd b = Eigen::MatrixXd::Identity(n, n) + lambda * a.matrix();
        const Eigen::Map<const Eigen::VectorXd> xv(x.data(), n);
        Eigen::PartialPivLU<Eigen::MatrixXd> lu(b);
        Eigen::VectorXd y = lu.solve(xv);
        y += lu.solve(xv - b * y);  // one refinement step
        res.point = Vec(y.data(), y.data() + y.size());
        res.iterations = 1;
        res.method = ResolveMethod::linear_solve;
      }
      break;
    }
    case Operator::Kind::diagonal: {
      long iters = 0;
      Vec y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i)
        y[i] = bisect_coordinate(x[i], lambda, a.diagonal_fn(), iters);
      res.point = std::move(y);
      res.iterations = iters;
      res.method = ResolveMethod::root_find;
      break;
    }
    case Operator::Kind::id_minus_T: {
      const double t = lambda / (1.0 + lambda);
      IterOut out = contraction_iterate(a.mapping().eval, s, t, x, x, 0.5 * opt.tol * (1.0 - t) / t,
                                        opt.max_iterations);
      res.point = std::move(out.point);
      res.iterations = out.iterations;
      res.method = ResolveMethod::banach_iteration;
      if (!out.converged) res.iterations += residual_line_search(a, s, lambda, x, res.point);
      break;
    }
  }

  res.residual = residual_of(a, s, lambda, x, res.point);
  res.ok = res.residual <= opt.tol;
  return res;
}

Vec psc_bridge(const Mapping& t_map, const LpSpace& s, double t, const Vec& x, double tol,
               long max_iterations) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("psc_bridge: t must lie in (0,1)");
  if (!(tol > 0.0)) throw std::invalid_argument("psc_bridge: tol must be positive");
  // independent of resolve(): starts from T(x) rather than x
  IterOut out =
      contraction_iterate(t_map.eval, s, t, x, t_map.eval(x), 0.5 * tol * (1.0 - t) / t, max_iterations);
  if (!out.converged) {
    const double gap = s.norm(sub(out.point, lerp(t, t_map.eval(out.point), x)));
    if (gap > tol) {
      throw std::runtime_error("psc_bridge: no convergence after " +
                               std::to_string(out.iterations) + " iterations (gap " +
                               std::to_string(gap) + ")");
    }
  }
  return out.point;
}

AuditReport check_resolvent_nonexpansive(const Operator& a, const LpSpace& s, double lambda,
                                         const SamplePlan& plan,
                                         std::span<const Vec> certified_zeros, double tol) {
  AuditReport r;
  r.name = a.label() + ":resolvent_nonexpansive(lambda=" + std::to_string(lambda) + ")";
  r.tolerance = tol;
  ResolveOptions opt;
  Rng rng(plan.seed);
  for (long k = 0; k < plan.pairs; ++k) {
    Vec u = a.domain().sample(s, rng);
    Vec v = a.domain().sample(s, rng);
    ResolventResult ju = resolve(a, s, lambda, u, opt);
    ResolventResult jv = resolve(a, s, lambda, v, opt);
    if (!ju.ok || !jv.ok) {
      r.record(std::max(ju.residual, jv.residual) + tol, "resolvent residual above tolerance");
      break;
    }
    const double margin = s.norm(sub(ju.point, jv.point)) - s.norm(sub(u, v));
    std::ostringstream os;
    os << "u/v pair " << k;
    r.record(margin, os.str());
    if (!r.passed) break;
  }
  for (const Vec& z : certified_zeros) {
    ResolventResult jz = resolve(a, s, lambda, z, opt);
    const double margin = s.norm(sub(jz.point, z));
    r.record(margin, "fixed-point gap at certified zero");
    if (!r.passed) break;
  }
  return r;
}

}  // namespace rlab
