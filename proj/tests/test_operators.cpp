#include <cmath>
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "rlab/operators.hpp"
#include "rlab/resolvent.hpp"

using namespace rlab;

namespace {

const std::vector<double> kTGrid{0.1, 0.5, 1.0, 2.0, 10.0};
const std::vector<double> kLambdaGrid{0.1, 1.0, 10.0, 100.0};

}  // namespace

TEST_CASE("convex domains: membership, violation, sampling") {
  LpSpace s(2.0, 2);
  ConvexDomain ball = ConvexDomain::ball({0.0, 0.0}, 1.0);
  CHECK(ball.contains(s, {0.5, 0.5}));
  CHECK_FALSE(ball.contains(s, {1.0, 1.0}));
  CHECK(ball.violation(s, {3.0, 4.0}) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(*ball.diameter_bound == 2.0);

  ConvexDomain box = ConvexDomain::box({-1.0, 0.0}, {1.0, 2.0});
  CHECK(box.contains(s, {0.0, 1.0}));
  CHECK_FALSE(box.contains(s, {0.0, -0.5}));
  CHECK_THROWS_AS(ConvexDomain::box({1.0}, {0.0}), std::invalid_argument);

  ConvexDomain both = ConvexDomain::ball_intersect({0.5, 0.0}, 1.0, ball);
  CHECK(both.contains(s, {0.5, 0.2}));
  CHECK_FALSE(both.contains(s, {1.2, 0.0}));  // inside outer ball, outside inner

  Rng rng(derive_seed(3, "domains"));
  for (int k = 0; k < 200; ++k) {
    CHECK(ball.contains(s, ball.sample(s, rng), 1e-9));
    CHECK(box.contains(s, box.sample(s, rng), 1e-9));
    CHECK(both.contains(s, both.sample(s, rng), 1e-9));
  }
}

TEST_CASE("sampled domain diameters never exceed the bound") {
  for (double p : {1.5, 2.0, 3.0}) {
    LpSpace s(p, 3);
    ConvexDomain d = ConvexDomain::ball({0.1, -0.2, 0.0}, 1.25);
    Rng rng(derive_seed(5, "diameter"));
    Vec prev = d.sample(s, rng);
    for (int k = 0; k < 300; ++k) {
      Vec x = d.sample(s, rng);
      CHECK(s.norm(sub(x, prev)) <= *d.diameter_bound + 1e-9);
      prev = x;
    }
  }
}

TEST_CASE("operator evaluation per kind") {
  ConvexDomain dom = ConvexDomain::ball({0.0, 0.0}, 2.0);
  Operator z = Operator::zero_op(dom);
  CHECK(z.eval({1.0, -1.0}) == Vec{0.0, 0.0});

  Eigen::MatrixXd m(2, 2);
  m << 1.0, 2.0, 3.0, 4.0;
  Operator a = Operator::matrix_op(m, dom, "m");
  CHECK(a.eval({1.0, 1.0}) == Vec{3.0, 7.0});

  Operator c = Operator::constant_target({0.5, -0.5}, dom);
  CHECK(c.eval({1.0, 1.0}) == Vec{0.5, 1.5});

  Operator d = Operator::diagonal_op([](double t) { return t * t * t; }, dom, "cubic");
  CHECK(d.eval({2.0, -1.0}) == Vec{8.0, -1.0});

  Mapping t{[](const Vec& x) { return scale(0.5, x); }, "halve"};
  Operator it = Operator::id_minus(t, dom);
  CHECK(it.eval({2.0, 4.0}) == Vec{1.0, 2.0});

  CHECK_THROWS_AS(z.matrix(), std::logic_error);
  CHECK_THROWS_AS(a.mapping(), std::logic_error);
}

TEST_CASE("zoo entries are well formed") {
  for (const auto& name : zoo_names()) {
    ZooEntry e = make_zoo_entry(name);
    CAPTURE(name);
    CHECK(e.op.domain().contains(e.space, e.base_point));
    for (const Vec& z : e.known_zeros) {
      CHECK(e.space.norm(e.op.eval(z)) <= 1e-12);
      CHECK(e.op.domain().contains(e.space, z, 1e-9));
    }
  }
  CHECK_THROWS_AS(make_zoo_entry("nonsense"), std::invalid_argument);
}

TEST_CASE("every zoo family passes both accretivity characterizations") {
  for (const ZooEntry& e : default_zoo()) {
    CAPTURE(e.name);
    for (double lambda : kLambdaGrid) {
      AuditReport m = check_accretive_metric(e.op, e.space, lambda,
                                             SamplePlan{128, derive_seed(7, e.name)}, 1e-9);
      CHECK(m.passed);
    }
    AuditReport d =
        check_accretive_dual(e.op, e.space, SamplePlan{128, derive_seed(7, e.name)}, 1e-9);
    CHECK(d.passed);
  }
}

TEST_CASE("both accretivity checks reject -Id and their verdicts agree") {
  LpSpace s(2.0, 2);
  ConvexDomain dom = ConvexDomain::ball({0.0, 0.0}, 1.0);
  Operator neg = Operator::matrix_op(-Eigen::MatrixXd::Identity(2, 2), dom, "neg_identity");
  bool metric_pass = true;
  for (double lambda : kLambdaGrid) {
    AuditReport m =
        check_accretive_metric(neg, s, lambda, SamplePlan{64, derive_seed(11, "neg")}, 1e-9);
    metric_pass = metric_pass && m.passed;
  }
  AuditReport d = check_accretive_dual(neg, s, SamplePlan{64, derive_seed(11, "neg")}, 1e-9);
  CHECK_FALSE(metric_pass);
  CHECK_FALSE(d.passed);
  CHECK(d.witness.has_value());
}

TEST_CASE("raw graph pairs go through the same checkers") {
  LpSpace s(2.0, 2);
  std::vector<GraphPair> pairs;
  // graph of the identity operator on a few points
  for (double v : {0.1, -0.4, 0.9, 0.3}) {
    pairs.push_back(GraphPair{{v, -v}, {v, -v}});
  }
  CHECK(check_accretive_metric_pairs(pairs, s, 1.0, 1e-9).passed);
  CHECK(check_accretive_dual_pairs(pairs, s, 1e-9).passed);
}

TEST_CASE("pseudocontraction checker accepts identity and rotations, rejects 2*Id") {
  LpSpace s(2.0, 2);
  ConvexDomain dom = ConvexDomain::ball({0.0, 0.0}, 1.0);

  Mapping id{[](const Vec& x) { return x; }, "identity"};
  AuditReport ri =
      check_pseudocontraction(id, s, dom, SamplePlan{64, derive_seed(13, "psc_id")}, kTGrid, 1e-9);
  CHECK(ri.passed);
  CHECK(ri.note.find("verdicts agree") != std::string::npos);

  ZooEntry rot = make_zoo_entry("rotation");
  AuditReport rr = check_pseudocontraction(rot.op.mapping(), rot.space, rot.op.domain(),
                                           SamplePlan{64, derive_seed(13, "psc_rot")}, kTGrid,
                                           1e-9);
  CHECK(rr.passed);

  Mapping twice{[](const Vec& x) { return scale(2.0, x); }, "2*Id"};
  AuditReport rt = check_pseudocontraction(twice, s, dom,
                                           SamplePlan{64, derive_seed(13, "psc_twice")}, kTGrid,
                                           1e-9);
  CHECK_FALSE(rt.passed);
  CHECK(rt.note.find("metric=fail") != std::string::npos);
  CHECK(rt.note.find("dual=fail") != std::string::npos);
}

TEST_CASE("strong pseudocontraction construction and sampled inequality") {
  LpSpace s(2.0, 2);
  ConvexDomain dom = ConvexDomain::ball({0.0, 0.0}, 1.0);
  Vec u{0.2, -0.1};

  // T = Id gives the affine contraction toward u
  Mapping id{[](const Vec& x) { return x; }, "identity"};
  Mapping affine = strong_pseudocontraction(id, 0.5, u);
  Vec x{0.6, 0.4};
  CHECK(affine.eval(x) == add(scale(0.5, x), scale(0.5, u)));

  // constant T collapses to a constant map
  Mapping cst{[](const Vec&) { return Vec{0.3, 0.3}; }, "const"};
  Mapping collapsed = strong_pseudocontraction(cst, 0.7, u);
  CHECK(collapsed.eval({0.9, 0.0}) == collapsed.eval({-0.9, 0.1}));

  ZooEntry rot = make_zoo_entry("rotation");
  Mapping strong = strong_pseudocontraction(rot.op.mapping(), 0.9, rot.base_point);
  AuditReport r = check_strong_pseudocontraction(strong, 0.9, rot.space, rot.op.domain(),
                                                 SamplePlan{64, derive_seed(17, "strong")}, 1e-9);
  CHECK(r.passed);

  CHECK_THROWS_AS(strong_pseudocontraction(id, 0.0, u), std::invalid_argument);
  CHECK_THROWS_AS(strong_pseudocontraction(id, 1.0, u), std::invalid_argument);
}

TEST_CASE("strong pseudocontraction has a unique fixed point found by iteration") {
  ZooEntry rot = make_zoo_entry("rotation");
  Mapping u_map = strong_pseudocontraction(rot.op.mapping(), 0.9, rot.base_point);
  auto iterate = [&](Vec start) {
    for (int k = 0; k < 600; ++k) start = u_map.eval(start);
    return start;
  };
  Vec f1 = iterate(rot.base_point);
  Vec f2 = iterate(rot.known_zeros.front());
  CHECK(rot.space.norm(sub(f1, f2)) <= 1e-8);
  CHECK(rot.space.norm(sub(f1, u_map.eval(f1))) <= 1e-8);
}

TEST_CASE("restrict_domain intersects with a certified ball and bounds the diameter") {
  LpSpace s(2.0, 2);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2, 2);
  m(0, 0) = 1.0;
  Operator a = Operator::matrix_op(m, ConvexDomain::whole_space(2), "diag10_free");

  Vec p{0.0, 0.0};
  Operator restricted = restrict_domain(a, s, p, 1.0);
  CHECK(*restricted.domain().diameter_bound == 2.0);
  CHECK(restricted.domain().contains(s, {0.3, 0.3}));
  CHECK_FALSE(restricted.domain().contains(s, {1.5, 0.0}));

  // resolvents stay inside the restricted domain
  Rng rng(derive_seed(19, "restrict"));
  for (int k = 0; k < 30; ++k) {
    Vec y = restricted.domain().sample(s, rng);
    for (double lambda : {0.1, 1.0, 10.0}) {
      ResolventResult j = resolve(restricted, s, lambda, y);
      CHECK(j.ok);
      CHECK(restricted.domain().contains(s, j.point, 1e-8));
    }
  }

  Vec not_zero{0.5, 0.0};
  CHECK_THROWS_AS(restrict_domain(a, s, not_zero, 1.0), std::invalid_argument);
}

TEST_CASE("zeros of Id - T coincide with fixed points of T") {
  for (const char* name : {"rotation", "proj_contraction"}) {
    ZooEntry e = make_zoo_entry(name);
    const Mapping& t = e.op.mapping();
    for (const Vec& z : e.known_zeros) {
      CHECK(e.space.norm(sub(t.eval(z), z)) <= 1e-9);
      CHECK(e.space.norm(e.op.eval(z)) <= 1e-9);
    }
    Rng rng(derive_seed(23, name));
    for (int k = 0; k < 50; ++k) {
      Vec x = e.op.domain().sample(e.space, rng);
      const double a_gap = e.space.norm(e.op.eval(x));
      const double t_gap = e.space.norm(sub(t.eval(x), x));
      CHECK(std::fabs(a_gap - t_gap) <= 1e-12 * (1.0 + t_gap));
    }
  }
}

TEST_CASE("graph pairs load from CSV") {
  const std::string path = "test_pairs_tmp.csv";
  {
    std::ofstream out(path);
    out << "# x0,x1,y0,y1\n";
    out << "0.5,0.25,0.5,0.25\n";
    out << "-0.  5,0.1,-0.5,0.1\n";
  }
  // malformed tokens must throw, not crash
  CHECK_THROWS(load_graph_pairs_csv(path, 2));
  {
    std::ofstream out(path);
    out << "# x0,x1,y0,y1\n";
    out << "0.5,0.25,0.5,0.25\n";
    out << "-0.5,0.1,-0.5,0.1\n";
  }
  auto pairs = load_graph_pairs_csv(path, 2);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].x == Vec{0.5, 0.25});
  CHECK(pairs[1].y == Vec{-0.5, 0.1});
  LpSpace s(2.0, 2);
  CHECK(check_accretive_dual_pairs(pairs, s, 1e-9).passed);
  CHECK_THROWS(load_graph_pairs_csv(path, 3));
  std::remove(path.c_str());
  CHECK_THROWS(load_graph_pairs_csv(path, 2));
}
