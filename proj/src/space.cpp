#include "rlab/space.hpp"

#include <cmath>
#include <sstream>

namespace rlab {

namespace {

std::string describe_pair(const Vec& x, const Vec& y) {
  std::ostringstream os;
  os << "x=(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ") y=(";
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i];
  os << ")";
  return os.str();
}

}  // namespace

LpSpace::LpSpace(double p_, int dim_) : p(p_), dim(dim_) {
  if (!(std::isfinite(p) && p > 1.0)) throw std::invalid_argument("p must exceed 1");
  if (dim < 1) throw std::invalid_argument("dim must be at least 1");
}

void LpSpace::check_member(const Vec& x) const {
  if (static_cast<int>(x.size()) != dim)
    throw std::invalid_argument("dimension mismatch: vector has " + std::to_string(x.size()) +
                                " coordinates, space has " + std::to_string(dim));
  if (!all_finite(x)) throw std::invalid_argument("vector has non-finite coordinates");
}

double LpSpace::norm(const Vec& x) const {
  check_member(x);
  if (p == 2.0) {
    double s = 0.0;
    for (double c : x) s += c * c;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double c : x) s += std::pow(std::fabs(c), p);
  return std::pow(s, 1.0 / p);
}

double LpSpace::dual_norm(const Vec& xstar) const {
  if (static_cast<int>(xstar.size()) != dim) throw std::invalid_argument("dimension mismatch");
  const double q = p / (p - 1.0);
  if (p == 2.0) {
    double s = 0.0;
    for (double c : xstar) s += c * c;
    return std::sqrt(s);
  }
  double s = 0.0;
  for (double c : xstar) s += std::pow(std::fabs(c), q);
  return std::pow(s, 1.0 / q);
}

Vec LpSpace::duality_map(const Vec& x) const {
  check_member(x);
  if (p == 2.0) return x;  // identity, exactly
  const double nx = norm(x);
  if (nx == 0.0) return zero_vec(dim);
  const double factor = std::pow(nx, 2.0 - p);
  Vec j(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double a = std::fabs(x[i]);
    j[i] = (x[i] == 0.0) ? 0.0 : factor * std::copysign(std::pow(a, p - 1.0), x[i]);
  }
  return j;
}

double LpSpace::pairing(const Vec& y, const Vec& xstar) const {
  require_same_dim(y, xstar);
  double s = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * xstar[i];
  return s;
}

ConvexityModulus lp_convexity_modulus(const LpSpace& s) {
  const double p = s.p;
  ConvexityModulus m;
  m.label = "lp_convexity(p=" + std::to_string(p) + ")";
  if (p >= 2.0) {
    m.eval = [p](double eps) {
      if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("eps must lie in (0,2]");
      const double u = std::pow(eps / 2.0, p);
      // 1 - (1-u)^(1/p), computed without cancellation for small u
      return -std::expm1(std::log1p(-u) / p);
    };
  } else {
    m.eval = [p](double eps) {
      if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("eps must lie in (0,2]");
      return (p - 1.0) * eps * eps / 8.0;
    };
  }
  return m;
}

SmoothnessModulus lp_smoothness_modulus(const LpSpace& s) {
  const double p = s.p;
  SmoothnessModulus m;
  m.label = "lp_smoothness(p=" + std::to_string(p) + ")";
  if (p >= 2.0) {
    m.eval = [p](double eps) {
      if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
      return eps / (p - 1.0);
    };
  } else {
    m.eval = [p](double eps) {
      if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
      return std::pow(p * eps / 2.0, 1.0 / (p - 1.0));
    };
  }
  return m;
}

ConvexityModulus rational_convexity_modulus() {
  ConvexityModulus m;
  m.label = "rational(eps^2/8)";
  m.eval = [](double eps) {
    if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("eps must lie in (0,2]");
    return eps * eps / 8.0;
  };
  return m;
}

SmoothnessModulus rational_smoothness_modulus() {
  SmoothnessModulus m;
  m.label = "rational(eps)";
  m.eval = [](double eps) {
    if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
    return eps;
  };
  return m;
}

Vec sample_ball(Rng& rng, const LpSpace& s, const Vec& center, double radius) {
  Vec z = rng.cube(s.dim);
  const double nz = s.norm(z);
  const bool to_sphere = rng.coin();
  Vec x(center);
  if (nz == 0.0) return x;
  const double f = (nz > 1.0 || to_sphere) ? radius / nz : radius;
  for (int i = 0; i < s.dim; ++i) x[static_cast<std::size_t>(i)] += f * z[static_cast<std::size_t>(i)];
  return x;
}

AuditReport verify_convexity_modulus(const LpSpace& s, const ConvexityModulus& eta, double eps,
                                     long samples, std::uint64_t seed, double tol) {
  if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("eps must lie in (0,2]");
  AuditReport r;
  r.name = "convexity_modulus(" + eta.label + ",p=" + std::to_string(s.p) +
           ",eps=" + std::to_string(eps) + ")";
  r.tolerance = tol;
  const double bound = 1.0 - eta.eval(eps);

  auto check_pair = [&](const Vec& x, const Vec& y) {
    const double margin = s.norm(midpoint(x, y)) - bound;
    r.record(margin, describe_pair(x, y));
  };

  // Designed extremal pairs: antipodal unit vectors, and the planar pair of
  // unit vectors at distance exactly eps (the equality configuration for the
  // exact l_p modulus at p >= 2).
  {
    Vec e0 = unit_coord(s.dim, 0);
    check_pair(e0, scale(-1.0, e0));
    if (s.dim >= 2) {
      const double v = eps / 2.0;
      const double u = std::pow(std::max(0.0, 1.0 - std::pow(v, s.p)), 1.0 / s.p);
      Vec x = zero_vec(s.dim), y = zero_vec(s.dim);
      x[0] = u;
      x[1] = v;
      y[0] = u;
      y[1] = -v;
      check_pair(x, y);
    } else {
      check_pair(Vec{1.0}, Vec{1.0 - eps});
    }
  }

  // Random admissible pairs, rejection capped at 100x the request.
  Rng rng(seed);
  const Vec origin = zero_vec(s.dim);
  long accepted = 0;
  const long cap = 100 * samples;
  for (long attempt = 0; attempt < cap && accepted < samples; ++attempt) {
    Vec x = sample_ball(rng, s, origin, 1.0);
    Vec y = sample_ball(rng, s, origin, 1.0);
    if (s.norm(sub(x, y)) < eps) continue;
    ++accepted;
    check_pair(x, y);
    if (!r.passed) break;  // keep the witness, stop the sweep
  }
  if (accepted < samples && r.passed) {
    r.add_note("sampler exhaustion: accepted " + std::to_string(accepted) + "/" +
               std::to_string(samples) + " random pairs");
  }
  return r;
}

AuditReport verify_smoothness_modulus(const LpSpace& s, const SmoothnessModulus& tau, double eps,
                                      long samples, std::uint64_t seed, double tol) {
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  AuditReport r;
  r.name = "smoothness_modulus(" + tau.label + ",p=" + std::to_string(s.p) +
           ",eps=" + std::to_string(eps) + ")";
  r.tolerance = tol;
  const double rad = tau.eval(eps);

  auto check_pair = [&](const Vec& x, const Vec& y) {
    const double lhs = s.norm(add(x, y)) + s.norm(sub(x, y));
    const double margin = lhs - (2.0 + eps * s.norm(y));
    r.record(margin, describe_pair(x, y));
  };

  // Designed cases: degenerate y, collinear y at full radius, and (when the
  // dimension allows) a coordinate-orthogonal y at full radius.
  {
    Vec e0 = unit_coord(s.dim, 0);
    check_pair(e0, zero_vec(s.dim));
    check_pair(e0, scale(rad, e0));
    check_pair(e0, scale(-rad, e0));
    if (s.dim >= 2) check_pair(e0, scale(rad, unit_coord(s.dim, 1)));
  }

  Rng rng(seed);
  for (long k = 0; k < samples; ++k) {
    Vec zx = rng.cube(s.dim);
    double nx = s.norm(zx);
    if (nx == 0.0) continue;
    Vec x = scale(1.0 / nx, zx);  // unit sphere
    Vec zy = rng.cube(s.dim);
    double ny = s.norm(zy);
    if (ny == 0.0) continue;
    const double mag = rad * (rng.coin() ? 1.0 : rng.uniform());
    Vec y = scale(mag / ny, zy);
    check_pair(x, y);
    if (!r.passed) break;
  }
  return r;
}

}  // namespace rlab
