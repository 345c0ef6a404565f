#include "rlab/operators.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace rlab {

namespace {

std::string describe_pair(const Vec& x, const Vec& y) {
  std::ostringstream os;
  os << "x1=(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ") x2=(";
  for (std::size_t i = 0; i < y.size(); ++i) os << (i ? "," : "") << y[i];
  os << ")";
  return os.str();
}

}  // namespace

ConvexDomain ConvexDomain::ball(Vec center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  ConvexDomain d;
  d.kind = Kind::ball;
  d.space_dim = static_cast<int>(center.size());
  d.center = std::move(center);
  d.radius = radius;
  d.diameter_bound = 2.0 * radius;
  return d;
}

ConvexDomain ConvexDomain::box(Vec lo, Vec hi) {
  require_same_dim(lo, hi);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("box must satisfy lo <= hi");
  }
  ConvexDomain d;
  d.kind = Kind::box;
  d.space_dim = static_cast<int>(lo.size());
  d.lo = std::move(lo);
  d.hi = std::move(hi);
  return d;
}

ConvexDomain ConvexDomain::whole_space(int dim) {
  ConvexDomain d;
  d.kind = Kind::whole_space;
  d.space_dim = dim;
  return d;
}

ConvexDomain ConvexDomain::ball_intersect(Vec center, double radius, ConvexDomain inner_dom) {
  if (!(radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  ConvexDomain d;
  d.kind = Kind::ball_intersect;
  d.space_dim = static_cast<int>(center.size());
  d.center = std::move(center);
  d.radius = radius;
  d.inner = std::make_shared<const ConvexDomain>(std::move(inner_dom));
  d.diameter_bound = 2.0 * radius;
  return d;
}

double ConvexDomain::violation(const LpSpace& s, const Vec& x) const {
  switch (kind) {
    case Kind::ball:
      return s.norm(sub(x, center)) - radius;
    case Kind::box: {
      double worst = -std::numeric_limits<double>::infinity();
      for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, lo[i] - x[i]);
        worst = std::max(worst, x[i] - hi[i]);
      }
      return worst;
    }
    case Kind::whole_space:
      return -std::numeric_limits<double>::infinity();
    case Kind::ball_intersect:
      return std::max(s.norm(sub(x, center)) - radius, inner->violation(s, x));
  }
  return 0.0;
}

bool ConvexDomain::contains(const LpSpace& s, const Vec& x, double tol) const {
  return violation(s, x) <= tol;
}

Vec ConvexDomain::sample(const LpSpace& s, Rng& rng) const {
  switch (kind) {
    case Kind::ball:
      return sample_ball(rng, s, center, radius);
    case Kind::box: {
      Vec x(lo.size());
      for (std::size_t i = 0; i < x.size(); ++i) x[i] = rng.uniform_in(lo[i], hi[i]);
      return x;
    }
    case Kind::whole_space:
      // unbounded set; sample a reference cube around the origin
      return rng.cube(space_dim);
    case Kind::ball_intersect: {
      for (int attempt = 0; attempt < 10000; ++attempt) {
        Vec x = sample_ball(rng, s, center, radius);
        if (inner->contains(s, x)) return x;
      }
      throw std::runtime_error("ball_intersect sampler exhausted");
    }
  }
  return zero_vec(space_dim);
}

Operator Operator::zero_op(ConvexDomain domain) {
  Operator a;
  a.kind_ = Kind::zero;
  a.domain_ = std::move(domain);
  a.label_ = "zero";
  return a;
}

Operator Operator::matrix_op(Eigen::MatrixXd m, ConvexDomain domain, std::string label) {
  if (m.rows() != m.cols() || m.rows() != domain.dim())
    throw std::invalid_argument("matrix_op: shape mismatch with domain dimension");
  Operator a;
  a.kind_ = Kind::matrix;
  a.domain_ = std::move(domain);
  a.label_ = std::move(label);
  a.matrix_ = std::move(m);
  return a;
}

Operator Operator::id_minus(Mapping t, ConvexDomain domain) {
  Operator a;
  a.kind_ = Kind::id_minus_T;
  a.domain_ = std::move(domain);
  a.label_ = "id_minus(" + t.label + ")";
  a.mapping_ = std::move(t);
  return a;
}

Operator Operator::constant_target(Vec target, ConvexDomain domain) {
  if (static_cast<int>(target.size()) != domain.dim())
    throw std::invalid_argument("constant_target: dimension mismatch");
  Operator a;
  a.kind_ = Kind::constant_target;
  a.domain_ = std::move(domain);
  a.label_ = "constant_target";
  a.target_ = std::move(target);
  return a;
}

Operator Operator::diagonal_op(std::function<double(double)> f, ConvexDomain domain,
                               std::string label) {
  Operator a;
  a.kind_ = Kind::diagonal;
  a.domain_ = std::move(domain);
  a.label_ = std::move(label);
  a.diag_fn_ = std::move(f);
  return a;
}

Vec Operator::eval(const Vec& x) const {
  switch (kind_) {
    case Kind::zero:
      return zero_vec(static_cast<int>(x.size()));
    case Kind::matrix: {
      Eigen::Map<const Eigen::VectorXd> xv(x.data(), static_cast<long>(x.size()));
      Eigen::VectorXd y = matrix_ * xv;
      return Vec(y.data(), y.data() + y.size());
    }
    case Kind::id_minus_T:
      return sub(x, mapping_.eval(x));
    case Kind::constant_target:
      return sub(x, target_);
    case Kind::diagonal: {
      Vec y(x.size());
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = diag_fn_(x[i]);
      return y;
    }
  }
  return {};
}

const Eigen::MatrixXd& Operator::matrix() const {
  if (kind_ != Kind::matrix) throw std::logic_error("operator has no matrix payload");
  return matrix_;
}

const Mapping& Operator::mapping() const {
  if (kind_ != Kind::id_minus_T) throw std::logic_error("operator has no mapping payload");
  return mapping_;
}

const Vec& Operator::target() const {
  if (kind_ != Kind::constant_target) throw std::logic_error("operator has no target payload");
  return target_;
}

const std::function<double(double)>& Operator::diagonal_fn() const {
  if (kind_ != Kind::diagonal) throw std::logic_error("operator has no diagonal payload");
  return diag_fn_;
}

Operator Operator::with_domain(ConvexDomain d) const {
  Operator a = *this;
  a.domain_ = std::move(d);
  return a;
}

std::vector<GraphPair> sample_graph_pairs(const Operator& a, const LpSpace& s,
                                          const SamplePlan& plan) {
  Rng rng(plan.seed);
  std::vector<GraphPair> pairs;
  pairs.reserve(static_cast<std::size_t>(plan.pairs));
  for (long k = 0; k < plan.pairs; ++k) {
    Vec x = a.domain().sample(s, rng);
    pairs.push_back(GraphPair{x, a.eval(x)});
  }
  return pairs;
}

AuditReport check_accretive_metric_pairs(std::span<const GraphPair> pairs, const LpSpace& s,
                                         double lambda, double tol) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  AuditReport r;
  r.name = "accretive_metric(lambda=" + std::to_string(lambda) + ")";
  r.tolerance = tol;
  for (std::size_t i = 0; i + 1 < pairs.size(); i += 2) {
    const auto& [x1, y1] = pairs[i];
    const auto& [x2, y2] = pairs[i + 1];
    Vec shifted = add(sub(x1, x2), scale(lambda, sub(y1, y2)));
    const double margin = s.norm(sub(x1, x2)) - s.norm(shifted);
    r.record(margin, describe_pair(x1, x2));
    if (!r.passed) break;
  }
  return r;
}

AuditReport check_accretive_metric(const Operator& a, const LpSpace& s, double lambda,
                                   const SamplePlan& plan, double tol) {
  SamplePlan doubled{2 * plan.pairs, plan.seed};
  auto pairs = sample_graph_pairs(a, s, doubled);
  AuditReport r = check_accretive_metric_pairs(pairs, s, lambda, tol);
  r.name = a.label() + ":" + r.name;
  return r;
}

AuditReport check_accretive_dual_pairs(std::span<const GraphPair> pairs, const LpSpace& s,
                                       double tol) {
  AuditReport r;
  r.name = "accretive_dual";
  r.tolerance = tol;
  for (std::size_t i = 0; i + 1 < pairs.size(); i += 2) {
    const auto& [x1, y1] = pairs[i];
    const auto& [x2, y2] = pairs[i + 1];
    const double pairing = s.pairing(sub(y1, y2), s.duality_map(sub(x1, x2)));
    r.record(-pairing, describe_pair(x1, x2));
    if (!r.passed) break;
  }
  return r;
}

AuditReport check_accretive_dual(const Operator& a, const LpSpace& s, const SamplePlan& plan,
                                 double tol) {
  SamplePlan doubled{2 * plan.pairs, plan.seed};
  auto pairs = sample_graph_pairs(a, s, doubled);
  AuditReport r = check_accretive_dual_pairs(pairs, s, tol);
  r.name = a.label() + ":" + r.name;
  return r;
}

AuditReport check_pseudocontraction(const Mapping& t, const LpSpace& s, const ConvexDomain& domain,
                                    const SamplePlan& plan, std::span<const double> t_grid,
                                    double tol) {
  AuditReport r;
  r.name = "pseudocontraction(" + t.label + ")";
  r.tolerance = tol;
  Rng rng(plan.seed);
  bool metric_ok = true, dual_ok = true;
  for (long k = 0; k < plan.pairs; ++k) {
    Vec x = domain.sample(s, rng);
    Vec y = domain.sample(s, rng);
    Vec tx = t.eval(x), ty = t.eval(y);
    Vec d = sub(x, y);
    Vec td = sub(tx, ty);
    const double nd = s.norm(d);

    const double dual_margin = s.pairing(td, s.duality_map(d)) - nd * nd;
    if (dual_margin > tol) dual_ok = false;
    r.record(dual_margin, "dual " + describe_pair(x, y));

    for (double tt : t_grid) {
      Vec stretched = sub(scale(tt + 1.0, d), td);
      const double metric_margin = tt * nd - s.norm(stretched);
      if (metric_margin > tol) metric_ok = false;
      r.record(metric_margin, "metric t=" + std::to_string(tt) + " " + describe_pair(x, y));
    }
    if (!r.passed) break;
  }
  r.add_note(std::string("metric=") + (metric_ok ? "pass" : "fail") +
             " dual=" + (dual_ok ? "pass" : "fail") +
             (metric_ok == dual_ok ? " (verdicts agree)" : " (verdicts disagree)"));
  return r;
}

Mapping strong_pseudocontraction(const Mapping& t, double k, const Vec& u) {
  if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("k must lie in (0,1)");
  Mapping m;
  m.label = "strong(" + t.label + ",k=" + std::to_string(k) + ")";
  auto eval = t.eval;
  m.eval = [eval, k, u](const Vec& x) { return add(scale(k, eval(x)), scale(1.0 - k, u)); };
  return m;
}

AuditReport check_strong_pseudocontraction(const Mapping& u_map, double k, const LpSpace& s,
                                           const ConvexDomain& domain, const SamplePlan& plan,
                                           double tol) {
  AuditReport r;
  r.name = "strong_pseudocontraction(" + u_map.label + ")";
  r.tolerance = tol;
  Rng rng(plan.seed);
  for (long i = 0; i < plan.pairs; ++i) {
    Vec x = domain.sample(s, rng);
    Vec y = domain.sample(s, rng);
    Vec d = sub(x, y);
    const double nd = s.norm(d);
    const double margin =
        s.pairing(sub(u_map.eval(x), u_map.eval(y)), s.duality_map(d)) - k * nd * nd;
    r.record(margin, describe_pair(x, y));
    if (!r.passed) break;
  }
  return r;
}

Operator restrict_domain(const Operator& a, const LpSpace& s, const Vec& p, double radius,
                         double zero_tol) {
  const double residual = s.norm(a.eval(p));
  if (!(residual <= zero_tol)) {
    throw std::invalid_argument("restrict_domain: point is not a zero (residual=" +
                                std::to_string(residual) + ")");
  }
  return a.with_domain(ConvexDomain::ball_intersect(p, radius, a.domain()));
}

std::vector<GraphPair> load_graph_pairs_csv(const std::string& path, int dim) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph-pair CSV: " + path);
  std::vector<GraphPair> pairs;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<double> vals;
    while (std::getline(ls, cell, ',')) {
      std::size_t pos = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &pos);
      } catch (...) {
        throw std::runtime_error("graph-pair CSV line " + std::to_string(lineno) +
                                 ": bad number '" + cell + "'");
      }
      while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\t' || cell[pos] == '\r'))
        ++pos;
      if (pos != cell.size()) {
        throw std::runtime_error("graph-pair CSV line " + std::to_string(lineno) +
                                 ": bad number '" + cell + "'");
      }
      vals.push_back(v);
    }
    if (static_cast<int>(vals.size()) != 2 * dim) {
      throw std::runtime_error("graph-pair CSV line " + std::to_string(lineno) + ": expected " +
                               std::to_string(2 * dim) + " columns");
    }
    GraphPair gp;
    gp.x.assign(vals.begin(), vals.begin() + dim);
    gp.y.assign(vals.begin() + dim, vals.end());
    pairs.push_back(std::move(gp));
  }
  return pairs;
}

}  // namespace rlab
