#include <cmath>
#include <numbers>

#include "rlab/operators.hpp"

namespace rlab {

namespace {

double get_scalar(const std::map<std::string, std::vector<double>>& params, const std::string& key,
                  double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (it->second.size() != 1) throw std::invalid_argument("parameter " + key + " expects 1 value");
  return it->second[0];
}

Vec get_vec(const std::map<std::string, std::vector<double>>& params, const std::string& key,
            const Vec& fallback) {
  auto it = params.find(key);
  return it == params.end() ? fallback : Vec(it->second);
}

// Deterministic interior base point: a fixed alternating pattern scaled to
// 60% of the ball radius.
Vec default_base(const LpSpace& s, const Vec& center, double radius) {
  Vec pattern(static_cast<std::size_t>(s.dim));
  double mag = 1.0;
  for (int i = 0; i < s.dim; ++i) {
    pattern[static_cast<std::size_t>(i)] = (i % 2 == 0 ? mag : -mag);
    mag *= 0.5;
  }
  const double n = s.norm(pattern);
  Vec base(center);
  for (int i = 0; i < s.dim; ++i)
    base[static_cast<std::size_t>(i)] += 0.6 * radius / n * pattern[static_cast<std::size_t>(i)];
  return base;
}

// Planar rotation by theta in coordinates (0,1) about `center`, identity on
// the remaining coordinates.  An isometry for p = 2.
Mapping rotation_mapping(const Vec& center, double theta) {
  Mapping m;
  m.label = "rotation(theta=" + std::to_string(theta) + ")";
  const double c = std::cos(theta), sn = std::sin(theta);
  m.eval = [center, c, sn](const Vec& x) {
    Vec y(x);
    const double u = x[0] - center[0];
    const double v = x[1] - center[1];
    y[0] = center[0] + c * u - sn * v;
    y[1] = center[1] + sn * u + c * v;
    return y;
  };
  return m;
}

// Metric projection onto the Euclidean ball composed with a contractive
// rotation about `center`; nonexpansive for p = 2 with unique fixed point at
// `center`.
Mapping proj_contraction_mapping(const Vec& center, double factor, double theta, double ball_radius) {
  Mapping rot = rotation_mapping(center, theta);
  Mapping m;
  m.label = "proj_contraction(k=" + std::to_string(factor) + ")";
  auto rot_eval = rot.eval;
  m.eval = [center, factor, ball_radius, rot_eval](const Vec& x) {
    Vec y = lerp(factor, rot_eval(x), center);
    double n2 = 0.0;
    for (double cc : y) n2 += cc * cc;
    const double n = std::sqrt(n2);
    if (n > ball_radius) y = scale(ball_radius / n, y);
    return y;
  };
  return m;
}

Eigen::MatrixXd padded_block(int dim, double a00, double a01, double a10, double a11,
                             double diag_rest) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim);
  m(0, 0) = a00;
  if (dim >= 2) {
    m(0, 1) = a01;
    m(1, 0) = a10;
    m(1, 1) = a11;
  }
  for (int i = 2; i < dim; ++i) m(i, i) = diag_rest;
  return m;
}

}  // namespace

std::vector<std::string> zoo_names() {
  return {"zero",   "identity",        "diag10",     "psd",         "skew",
          "rotation", "constant_target", "diag_cubic", "proj_contraction"};
}

ZooEntry make_zoo_entry(const std::string& name,
                        const std::map<std::string, std::vector<double>>& params,
                        const LpSpace* space_override) {
  const double pi = std::numbers::pi;

  auto build = [&](double def_p, int def_dim, int min_dim) {
    LpSpace s = space_override ? *space_override : LpSpace(def_p, def_dim);
    if (s.dim < min_dim)
      throw std::invalid_argument("operator " + name + " needs dim >= " + std::to_string(min_dim));
    return s;
  };

  if (name == "zero") {
    LpSpace s = build(2.0, 2, 1);
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), get_scalar(params, "radius", 1.0));
    ZooEntry e{name, s, Operator::zero_op(dom), default_base(s, dom.center, dom.radius),
               {zero_vec(s.dim)}};
    return e;
  }
  if (name == "identity") {
    LpSpace s = build(2.0, 3, 1);
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), get_scalar(params, "radius", 1.0));
    Operator a = Operator::matrix_op(Eigen::MatrixXd::Identity(s.dim, s.dim), dom, name);
    return ZooEntry{name, s, a, default_base(s, dom.center, dom.radius), {zero_vec(s.dim)}};
  }
  if (name == "diag10") {
    LpSpace s = build(2.0, 2, 2);
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), get_scalar(params, "radius", 2.0));
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(s.dim, s.dim);
    m(0, 0) = 1.0;
    Operator a = Operator::matrix_op(m, dom, name);
    Vec z1 = zero_vec(s.dim), z2 = zero_vec(s.dim), z3 = zero_vec(s.dim);
    z2[1] = 0.8;
    z3[1] = -0.5;
    Vec base = zero_vec(s.dim);
    base[0] = 1.0;
    base[1] = 0.8;
    return ZooEntry{name, s, a, base, {z1, z2, z3}};
  }
  if (name == "psd") {
    LpSpace s = build(2.0, 2, 2);
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), get_scalar(params, "radius", 1.0));
    Operator a = Operator::matrix_op(padded_block(s.dim, 2, 1, 1, 1, 1.0), dom, name);
    return ZooEntry{name, s, a, default_base(s, dom.center, dom.radius), {zero_vec(s.dim)}};
  }
  if (name == "skew") {
    LpSpace s = build(2.0, 2, 2);
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), get_scalar(params, "radius", 1.0));
    Operator a = Operator::matrix_op(padded_block(s.dim, 0, -1, 1, 0, 0.0), dom, name);
    std::vector<Vec> zeros{zero_vec(s.dim)};
    if (s.dim >= 3) {
      Vec z = zero_vec(s.dim);
      z[2] = 0.5;
      zeros.push_back(z);
    }
    return ZooEntry{name, s, a, default_base(s, dom.center, dom.radius), zeros};
  }
  if (name == "rotation") {
    LpSpace s = build(2.0, 2, 2);
    Vec center = get_vec(params, "center", [&] {
      Vec c = zero_vec(s.dim);
      c[0] = 0.2;
      c[1] = 0.1;
      return c;
    }());
    const double theta = get_scalar(params, "theta", pi / 4.0);
    const double radius = get_scalar(params, "radius", 1.0);
    ConvexDomain dom = ConvexDomain::ball(center, radius);
    Operator a = Operator::id_minus(rotation_mapping(center, theta), dom);
    std::vector<Vec> zeros{center};
    if (s.dim >= 3) {
      Vec z(center);
      z[2] += 0.5;
      zeros.push_back(z);
    }
    ZooEntry e{name, s, a, default_base(s, center, radius), zeros};
    return e;
  }
  if (name == "constant_target") {
    LpSpace s = build(3.0, 2, 1);
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), get_scalar(params, "radius", 1.0));
    Vec target = get_vec(params, "target", [&] {
      Vec c = zero_vec(s.dim);
      c[0] = 0.3;
      if (s.dim >= 2) c[1] = -0.2;
      return c;
    }());
    Operator a = Operator::constant_target(target, dom);
    return ZooEntry{name, s, a, default_base(s, dom.center, dom.radius), {target}};
  }
  if (name == "diag_cubic") {
    LpSpace s = build(1.5, 2, 1);
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), get_scalar(params, "radius", 1.0));
    const double k = get_scalar(params, "scale", 128.0);
    Operator a = Operator::diagonal_op([k](double t) { return k * t * t * t; }, dom,
                                       "diag_cubic(scale=" + std::to_string(k) + ")");
    Vec base = zero_vec(s.dim);
    base[0] = 0.4;
    if (s.dim >= 2) base[1] = -0.3;
    return ZooEntry{name, s, a, base, {zero_vec(s.dim)}};
  }
  if (name == "proj_contraction") {
    LpSpace s = build(2.0, 2, 2);
    Vec center = get_vec(params, "center", [&] {
      Vec c = zero_vec(s.dim);
      c[0] = 0.2;
      c[1] = 0.1;
      return c;
    }());
    const double factor = get_scalar(params, "factor", 0.9);
    const double theta = get_scalar(params, "theta", pi / 3.0);
    const double radius = get_scalar(params, "radius", 1.0);
    if (!(factor > 0.0 && factor < 1.0))
      throw std::invalid_argument("proj_contraction factor must lie in (0,1)");
    ConvexDomain dom = ConvexDomain::ball(zero_vec(s.dim), radius);
    Operator a =
        Operator::id_minus(proj_contraction_mapping(center, factor, theta, radius), dom);
    Vec base = zero_vec(s.dim);
    base[0] = 0.8;
    base[1] = 0.1;
    return ZooEntry{name, s, a, base, {center}};
  }
  throw std::invalid_argument("unknown operator name: " + name +
                              " (shipped families: zero, identity, diag10, psd, skew, rotation, "
                              "constant_target, diag_cubic, proj_contraction)");
}

std::vector<ZooEntry> default_zoo() {
  std::vector<ZooEntry> zoo;
  for (const auto& n : zoo_names()) zoo.push_back(make_zoo_entry(n));
  return zoo;
}

}  // namespace rlab
