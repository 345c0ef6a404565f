#include "rlab/metastability.hpp"

#include <cmath>
#include <sstream>

namespace rlab {

double Curve::max_residual() const {
  double worst = 0.0;
  for (double r : residuals) worst = std::max(worst, r);
  return worst;
}

Curve generate_curve(const Operator& a, const LpSpace& s, const Vec& x,
                     std::span<const double> lambdas, const ResolveOptions& opt) {
  Curve c;
  c.base_point = x;
  c.points.reserve(lambdas.size());
  c.lambdas.assign(lambdas.begin(), lambdas.end());
  c.residuals.reserve(lambdas.size());
  for (double lambda : lambdas) {
    ResolventResult r = resolve(a, s, lambda, x, opt);
    c.points.push_back(std::move(r.point));
    c.residuals.push_back(r.residual);
  }
  return c;
}

MetastabilitySearch find_metastable_N(const Curve& curve, const LpSpace& s, double eps,
                                      const Counterfunction& g, long n_max) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  MetastabilitySearch out;
  const long len = curve.length();
  for (long n = 0; n <= n_max; ++n) {
    const long end = n + g(n);
    if (end >= len) {
      out.window_exceeded = true;
      out.required_length = end + 1;
      return out;
    }
    double max_gap = 0.0;
    bool ok = true;
    for (long i = n; i <= end && ok; ++i) {
      for (long k = i + 1; k <= end; ++k) {
        const double gap = s.norm(sub(curve.points[static_cast<std::size_t>(i)],
                                      curve.points[static_cast<std::size_t>(k)]));
        max_gap = std::max(max_gap, gap);
        if (gap > eps) {
          ok = false;
          break;
        }
      }
    }
    if (ok) {
      out.found = true;
      out.n = n;
      out.window_max_gap = max_gap;
      out.required_length = len;
      return out;
    }
  }
  out.required_length = len;
  return out;
}

AuditReport audit_asymptotic_regularity(const Curve& curve, const Operator& a, const LpSpace& s,
                                        double b, double tol) {
  AuditReport r;
  r.name = a.label() + ":asymptotic_regularity";
  r.tolerance = tol;
  ResolveOptions opt;
  for (long n = 0; n < curve.length(); ++n) {
    const Vec& xn = curve.points[static_cast<std::size_t>(n)];
    ResolventResult j1 = resolve(a, s, 1.0, xn, opt);
    if (!j1.ok) {
      r.record(j1.residual + tol, "resolvent residual above tolerance at n=" + std::to_string(n));
      break;
    }
    const double margin =
        s.norm(sub(xn, j1.point)) - b / curve.lambdas[static_cast<std::size_t>(n)];
    r.record(margin, "n=" + std::to_string(n));
    if (!r.passed) break;
  }
  return r;
}

AuditReport audit_projection_inequality(const Curve& curve, const Operator& a, const LpSpace& s,
                                        const Vec& zero_p, double tol) {
  const double zero_residual = s.norm(a.eval(zero_p));
  if (!(zero_residual <= tol)) {
    throw std::invalid_argument("audit_projection_inequality: p is not a zero (residual=" +
                                std::to_string(zero_residual) + ")");
  }
  AuditReport r;
  r.name = a.label() + ":projection_inequality";
  r.tolerance = tol;
  for (long n = 0; n < curve.length(); ++n) {
    const Vec& xn = curve.points[static_cast<std::size_t>(n)];
    const double margin =
        s.pairing(sub(xn, curve.base_point), s.duality_map(sub(xn, zero_p)));
    r.record(margin, "n=" + std::to_string(n));
    if (!r.passed) break;
  }
  return r;
}

AuditReport audit_e1j_e2j(const Operator& a, const LpSpace& s, const Vec& x, double lambda,
                          const Vec& vprime, const ModuliChain& chain, double eps, double tol) {
  AuditReport r;
  std::ostringstream nm;
  nm << a.label() << ":e1j_e2j(eps=" << eps << ",lambda=" << lambda << ")";
  r.name = nm.str();
  r.tolerance = tol;

  bool clamped = false;
  const double d = chain.delta(eps, lambda, &clamped);
  if (clamped) r.add_note("psi argument clamped to 2");

  ResolveOptions opt;
  ResolventResult jl = resolve(a, s, lambda, x, opt);
  ResolventResult jav = resolve(a, s, 1.0, vprime, opt);
  if (!jl.ok || !jav.ok) {
    r.record(std::max(jl.residual, jav.residual) + tol, "resolvent residual above tolerance");
    return r;
  }

  // hypothesis ||v' - J_A v'|| <= delta
  const double hyp = s.norm(sub(vprime, jav.point));
  if (hyp > d + tol) {
    r.mark_inapplicable("||v' - J_A v'|| = " + std::to_string(hyp) + " exceeds delta = " +
                        std::to_string(d));
    return r;
  }

  const double b = static_cast<double>(chain.b);
  const Vec lhs_vec = sub(jl.point, x);
  const Vec j_to_jav = s.duality_map(sub(jl.point, jav.point));
  const Vec j_to_v = s.duality_map(sub(jl.point, vprime));

  r.record(s.pairing(lhs_vec, j_to_jav) - d * b * lambda, "first displayed inequality");
  r.record(d * b * lambda - eps / 4.0, "delta*b*lambda vs eps/4");
  r.record(s.pairing(lhs_vec, sub(j_to_v, j_to_jav)) - eps / 4.0, "second displayed inequality");
  r.record(s.pairing(lhs_vec, j_to_v) - eps / 2.0, "combined inequality");
  return r;
}

AuditReport audit_subclaim1(const Operator& a, const LpSpace& s, const Curve& curve, const Vec& v,
                            long h, const ModuliChain& chain, double nu, double tol) {
  AuditReport r;
  r.name = a.label() + ":subclaim1(h=" + std::to_string(h) + ")";
  r.tolerance = tol;
  if (h < 0 || h >= curve.length()) throw std::invalid_argument("audit_subclaim1: h out of range");
  if (!(nu > 0.0)) throw std::invalid_argument("audit_subclaim1: nu must be positive");

  const double b = static_cast<double>(chain.b);
  const double lambda_h = curve.lambdas[static_cast<std::size_t>(h)];
  if (!(lambda_h * lambda_h >= 4.0 * b * b / nu)) {
    r.mark_inapplicable("needs lambda_h^2 >= 4 b^2 / nu");
    return r;
  }
  if (!(lambda_h >= 8.0 * b * b / nu)) {
    r.mark_inapplicable("needs lambda_h >= 8 b^2 / nu");
    return r;
  }

  ResolveOptions opt;
  ResolventResult jav = resolve(a, s, 1.0, v, opt);
  if (!jav.ok) {
    r.record(jav.residual + tol, "resolvent residual above tolerance");
    return r;
  }
  const Vec& xh = curve.points[static_cast<std::size_t>(h)];
  const double lhs = s.norm(sub(xh, jav.point));
  const double rhs = s.norm(sub(xh, midpoint(v, jav.point)));
  r.record(lhs * lhs - rhs * rhs - nu, "squared-distance inequality");
  return r;
}

QEstimate estimate_Q(const Operator& a, const LpSpace& s, const Vec& x, double lambda_tail,
                     double tol) {
  if (!(lambda_tail > 0.0)) throw std::invalid_argument("lambda_tail must be positive");
  ResolveOptions opt;
  opt.tol = std::max(tol, opt.tol);
  ResolventResult q = resolve(a, s, lambda_tail, x, opt);
  ResolventResult jq = resolve(a, s, 1.0, q.point, opt);
  QEstimate est;
  est.point = q.point;
  est.regularity_gap = s.norm(sub(q.point, jq.point));
  if (a.domain().diameter_bound) {
    est.bound = *a.domain().diameter_bound / lambda_tail + tol;
    est.certified = q.ok && jq.ok && est.regularity_gap <= est.bound;
  }
  return est;
}

AuditReport audit_sunny(const Operator& a, const LpSpace& s, const Vec& x, const Vec& qx,
                        std::span<const Vec> zeros, double tol, double lambda_tail,
                        double zero_tol) {
  AuditReport r;
  r.name = a.label() + ":sunny_retraction";
  r.tolerance = tol;
  const Vec direction = sub(x, qx);
  for (std::size_t i = 0; i < zeros.size(); ++i) {
    const Vec& p = zeros[i];
    const double zero_residual = s.norm(a.eval(p));
    if (!(zero_residual <= zero_tol)) {
      throw std::invalid_argument("audit_sunny: listed zero " + std::to_string(i) +
                                  " is uncertified (residual=" + std::to_string(zero_residual) +
                                  ")");
    }
    const double pairing = s.pairing(direction, s.duality_map(sub(p, qx)));
    r.record(pairing, "pairing at zero " + std::to_string(i));
    QEstimate qp = estimate_Q(a, s, p, lambda_tail, tol);
    r.record(s.norm(sub(qp.point, p)), "retraction gap at zero " + std::to_string(i));
    if (!r.passed) break;
  }
  return r;
}

}  // namespace rlab
