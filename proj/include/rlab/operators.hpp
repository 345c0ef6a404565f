#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rlab/report.hpp"
#include "rlab/sampling.hpp"
#include "rlab/space.hpp"

namespace rlab {

// Closed convex subset used as operator domain.  `diameter_bound` is the
// integer b bounding the diameter when one is known.
struct ConvexDomain {
  enum class Kind { ball, box, whole_space, ball_intersect };

  Kind kind = Kind::whole_space;
  Vec center;
  double radius = 0.0;
  Vec lo, hi;
  std::shared_ptr<const ConvexDomain> inner;
  std::optional<double> diameter_bound;
  int space_dim = 0;

  static ConvexDomain ball(Vec center, double radius);
  static ConvexDomain box(Vec lo, Vec hi);
  static ConvexDomain whole_space(int dim);
  static ConvexDomain ball_intersect(Vec center, double radius, ConvexDomain inner);

  int dim() const { return space_dim; }
  bool contains(const LpSpace& s, const Vec& x, double tol = 1e-9) const;
  // Signed membership excess: <= 0 inside, > 0 by how much the point escapes.
  double violation(const LpSpace& s, const Vec& x) const;
  Vec sample(const LpSpace& s, Rng& rng) const;
};

struct Mapping {
  std::function<Vec(const Vec&)> eval;
  std::string label;
};

// Single-valued evaluable operator A with a convex domain.  Multivalued data
// enters the checkers as raw graph pairs instead.  `diagonal` applies a
// monotone scalar nonlinearity coordinatewise.
class Operator {
 public:
  enum class Kind { matrix, id_minus_T, constant_target, zero, diagonal };

  static Operator zero_op(ConvexDomain domain);
  static Operator matrix_op(Eigen::MatrixXd m, ConvexDomain domain, std::string label);
  static Operator id_minus(Mapping t, ConvexDomain domain);
  static Operator constant_target(Vec target, ConvexDomain domain);
  static Operator diagonal_op(std::function<double(double)> f, ConvexDomain domain,
                              std::string label);

  Vec eval(const Vec& x) const;

  Kind kind() const { return kind_; }
  const ConvexDomain& domain() const { return domain_; }
  const std::string& label() const { return label_; }
  const Eigen::MatrixXd& matrix() const;
  const Mapping& mapping() const;
  const Vec& target() const;
  const std::function<double(double)>& diagonal_fn() const;

  Operator with_domain(ConvexDomain d) const;

 private:
  Kind kind_ = Kind::zero;
  ConvexDomain domain_;
  std::string label_;
  Eigen::MatrixXd matrix_;
  Mapping mapping_;
  Vec target_;
  std::function<double(double)> diag_fn_;
};

struct GraphPair {
  Vec x, y;
};

struct SamplePlan {
  long pairs = 256;
  std::uint64_t seed = 1;
};

std::vector<GraphPair> sample_graph_pairs(const Operator& a, const LpSpace& s,
                                          const SamplePlan& plan);

// ||x1 - x2|| <= ||x1 - x2 + lambda (y1 - y2)|| on graph pairs.
AuditReport check_accretive_metric(const Operator& a, const LpSpace& s, double lambda,
                                   const SamplePlan& plan, double tol = 1e-9);
AuditReport check_accretive_metric_pairs(std::span<const GraphPair> pairs, const LpSpace& s,
                                         double lambda, double tol = 1e-9);

// <y1 - y2, j(x1 - x2)> >= 0 on graph pairs.
AuditReport check_accretive_dual(const Operator& a, const LpSpace& s, const SamplePlan& plan,
                                 double tol = 1e-9);
AuditReport check_accretive_dual_pairs(std::span<const GraphPair> pairs, const LpSpace& s,
                                       double tol = 1e-9);

// Both pseudocontraction characterizations:
//   t||x-y|| <= ||(t+1)(x-y) - (Tx-Ty)||   over the t grid, and
//   <Tx-Ty, j(x-y)> <= ||x-y||^2.
// The report notes each verdict; it passes iff both hold.
AuditReport check_pseudocontraction(const Mapping& t, const LpSpace& s, const ConvexDomain& domain,
                                    const SamplePlan& plan, std::span<const double> t_grid,
                                    double tol = 1e-9);

// U x = k T x + (1-k) u.
Mapping strong_pseudocontraction(const Mapping& t, double k, const Vec& u);

// <Ux-Uy, j(x-y)> <= k ||x-y||^2 on samples.
AuditReport check_strong_pseudocontraction(const Mapping& u_map, double k, const LpSpace& s,
                                           const ConvexDomain& domain, const SamplePlan& plan,
                                           double tol = 1e-9);

// Intersects the domain with the closed ball around a certified zero p and
// sets the diameter bound to 2*radius.  Rejects p when ||A p|| > zero_tol.
Operator restrict_domain(const Operator& a, const LpSpace& s, const Vec& p, double radius,
                         double zero_tol = 1e-8);

// CSV rows of 2*dim columns: x coordinates then y coordinates.
std::vector<GraphPair> load_graph_pairs_csv(const std::string& path, int dim);

// Named operator families with their recommended space, base point and known
// zeros.  Parameters (theta, target, center, radius, scale, ...) override the
// family defaults.
struct ZooEntry {
  std::string name;
  LpSpace space;
  Operator op;
  Vec base_point;
  std::vector<Vec> known_zeros;
};

std::vector<std::string> zoo_names();
ZooEntry make_zoo_entry(const std::string& name,
                        const std::map<std::string, std::vector<double>>& params = {},
                        const LpSpace* space_override = nullptr);
std::vector<ZooEntry> default_zoo();

}  // namespace rlab
