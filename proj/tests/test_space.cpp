#include <cmath>

#include "doctest.h"
#include "rlab/sampling.hpp"
#include "rlab/space.hpp"

using namespace rlab;

TEST_CASE("lp norm on hand values") {
  LpSpace e2(2.0, 2);
  CHECK(e2.norm({3.0, 4.0}) == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(e2.norm({0.0, 0.0}) == 0.0);

  LpSpace e3(3.0, 2);
  CHECK(e3.norm({1.0, 1.0}) == doctest::Approx(std::cbrt(2.0)).epsilon(1e-15));
  CHECK(e3.norm({0.0, 0.0}) == 0.0);

  LpSpace e15(1.5, 3);
  CHECK(e15.norm({0.0, 0.0, 0.0}) == 0.0);
  CHECK(e15.norm({1.0, 0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("norm is zero iff the vector is zero") {
  for (double p : {1.5, 2.0, 3.0}) {
    LpSpace s(p, 3);
    Rng rng(derive_seed(7, "norm_zero"));
    for (int k = 0; k < 100; ++k) {
      Vec x = rng.cube(3);
      if (s.norm(x) == 0.0) {
        for (double c : x) CHECK(c == 0.0);
      } else {
        CHECK(s.norm(x) > 0.0);
      }
    }
  }
}

TEST_CASE("space construction rejects bad parameters") {
  CHECK_THROWS_AS(LpSpace(1.0, 2), std::invalid_argument);
  CHECK_THROWS_AS(LpSpace(0.5, 2), std::invalid_argument);
  CHECK_THROWS_AS(LpSpace(2.0, 0), std::invalid_argument);
  LpSpace s(2.0, 2);
  CHECK_THROWS_AS(s.norm({1.0, 2.0, 3.0}), std::invalid_argument);
  CHECK_THROWS_AS(s.pairing({1.0}, {1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("duality map hand values") {
  LpSpace e2(2.0, 2);
  Vec x{3.0, 4.0};
  Vec j = e2.duality_map(x);
  CHECK(j[0] == 3.0);  // identity, exactly
  CHECK(j[1] == 4.0);
  CHECK(e2.pairing(x, j) == doctest::Approx(25.0).epsilon(1e-15));

  LpSpace e3(3.0, 2);
  Vec y{1.0, 1.0};
  Vec jy = e3.duality_map(y);
  const double expect = std::pow(2.0, -1.0 / 3.0);
  CHECK(jy[0] == doctest::Approx(expect).epsilon(1e-14));
  CHECK(jy[1] == doctest::Approx(expect).epsilon(1e-14));
  CHECK(e3.pairing(y, jy) == doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));

  for (double p : {1.5, 2.0, 3.0}) {
    LpSpace s(p, 3);
    Vec e1 = unit_coord(3, 0);
    Vec je = s.duality_map(e1);
    CHECK(je[0] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(je[1] == 0.0);
    CHECK(je[2] == 0.0);
  }

  CHECK(e3.duality_map({0.0, 0.0}) == Vec{0.0, 0.0});
}

TEST_CASE("pairing hand values") {
  LpSpace s(2.0, 2);
  CHECK(s.pairing({1.0, 0.0}, {0.0, 1.0}) == 0.0);
  CHECK(s.pairing({1.0, 2.0}, {3.0, -1.0}) == 1.0);
}

TEST_CASE("duality map identities on seeded samples") {
  for (double p : {1.5, 2.0, 3.0}) {
    for (int dim = 2; dim <= 8; ++dim) {
      LpSpace s(p, dim);
      Rng rng(derive_seed(11, "duality_ids"));
      for (int k = 0; k < 60; ++k) {
        Vec x = scale(2.0, rng.cube(dim));
        const double n = s.norm(x);
        Vec j = s.duality_map(x);
        CHECK(std::fabs(s.pairing(x, j) - n * n) <= 1e-9 * (1.0 + n * n));
        CHECK(std::fabs(s.dual_norm(j) - n) <= 1e-9 * (1.0 + n));
      }
    }
  }
}

TEST_CASE("duality map is positively homogeneous") {
  for (double p : {1.5, 3.0}) {
    LpSpace s(p, 4);
    Rng rng(derive_seed(13, "homogeneous"));
    for (int k = 0; k < 50; ++k) {
      Vec x = rng.cube(4);
      Vec j = s.duality_map(x);
      for (double lam : {0.5, 2.0, 10.0}) {
        Vec jl = s.duality_map(scale(lam, x));
        for (int i = 0; i < 4; ++i) {
          CHECK(std::fabs(jl[static_cast<std::size_t>(i)] -
                          lam * j[static_cast<std::size_t>(i)]) <= 1e-9 * (1.0 + std::fabs(lam)));
        }
      }
    }
  }
}

TEST_CASE("p=2 duality map is the identity exactly") {
  LpSpace s(2.0, 5);
  Rng rng(derive_seed(17, "identity_exact"));
  for (int k = 0; k < 20; ++k) {
    Vec x = rng.cube(5);
    CHECK(s.duality_map(x) == x);
  }
}

TEST_CASE("lp convexity modulus values and domain") {
  LpSpace e2(2.0, 2);
  auto eta2 = lp_convexity_modulus(e2);
  CHECK(eta2.eval(2.0) == doctest::Approx(1.0).epsilon(1e-12));

  LpSpace e15(1.5, 2);
  auto eta15 = lp_convexity_modulus(e15);
  CHECK(eta15.eval(2.0) == doctest::Approx(0.25).epsilon(1e-15));

  for (double p : {2.0, 3.0}) {
    auto eta = lp_convexity_modulus(LpSpace(p, 2));
    double prev = 0.0;
    for (double eps : {1e-6, 1e-3, 0.1, 1.0, 2.0}) {
      const double v = eta.eval(eps);
      CHECK(v > 0.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
  CHECK_THROWS_AS(eta2.eval(0.0), std::invalid_argument);
  CHECK_THROWS_AS(eta2.eval(2.5), std::invalid_argument);
  CHECK_THROWS_AS(eta2.eval(-1.0), std::invalid_argument);
}

TEST_CASE("lp smoothness modulus values and domain") {
  auto tau2 = lp_smoothness_modulus(LpSpace(2.0, 2));
  CHECK(tau2.eval(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  auto tau3 = lp_smoothness_modulus(LpSpace(3.0, 2));
  CHECK(tau3.eval(2.0) == doctest::Approx(1.0).epsilon(1e-15));
  auto tau15 = lp_smoothness_modulus(LpSpace(1.5, 2));
  CHECK(tau15.eval(2.0) == doctest::Approx(2.25).epsilon(1e-15));
  CHECK_THROWS_AS(tau2.eval(0.0), std::invalid_argument);
  CHECK_THROWS_AS(tau2.eval(-2.0), std::invalid_argument);
}

TEST_CASE("convexity verifier passes for shipped moduli") {
  for (double p : {1.5, 2.0, 3.0}) {
    LpSpace s(p, 3);
    auto eta = lp_convexity_modulus(s);
    for (double eps : {0.1, 0.5, 1.0, 2.0}) {
      AuditReport r =
          verify_convexity_modulus(s, eta, eps, 2000, derive_seed(23, "conv_pass"), 1e-9);
      INFO(r.name, " margin=", r.worst_margin);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("smoothness verifier passes for shipped moduli") {
  for (double p : {1.5, 2.0, 3.0}) {
    LpSpace s(p, 3);
    auto tau = lp_smoothness_modulus(s);
    for (double eps : {0.1, 1.0, 3.0}) {
      AuditReport r =
          verify_smoothness_modulus(s, tau, eps, 2000, derive_seed(29, "smooth_pass"), 1e-9);
      INFO(r.name, " margin=", r.worst_margin);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("inflated convexity modulus is rejected with a witness") {
  LpSpace s(2.0, 2);
  auto eta = lp_convexity_modulus(s);
  ConvexityModulus inflated{[eta](double eps) { return 1.5 * eta.eval(eps); }, "inflated"};
  for (double eps : {1.0, 2.0}) {
    AuditReport r =
        verify_convexity_modulus(s, inflated, eps, 2000, derive_seed(31, "conv_fail"), 1e-9);
    CHECK_FALSE(r.passed);
    CHECK(r.witness.has_value());
  }
}

TEST_CASE("inflated smoothness modulus is rejected") {
  LpSpace s(2.0, 2);
  auto tau = lp_smoothness_modulus(s);
  SmoothnessModulus inflated{[tau](double eps) { return 3.0 * tau.eval(eps); }, "inflated"};
  AuditReport r =
      verify_smoothness_modulus(s, inflated, 1.0, 2000, derive_seed(37, "smooth_fail"), 1e-9);
  CHECK_FALSE(r.passed);
  CHECK(r.witness.has_value());
}

TEST_CASE("antipodal pair at eps=2 is handled and exhaustion is reported") {
  LpSpace s(2.0, 4);
  auto eta = lp_convexity_modulus(s);
  AuditReport r = verify_convexity_modulus(s, eta, 2.0, 500, derive_seed(41, "antipodal"), 1e-9);
  CHECK(r.passed);
  // pairs at distance exactly 2 have measure zero under the sampler
  CHECK(r.note.find("exhaustion") != std::string::npos);
}

TEST_CASE("ball sampler stays in the ball and respects the diameter bound") {
  for (double p : {1.5, 2.0, 3.0}) {
    LpSpace s(p, 3);
    Rng rng(derive_seed(43, "ball"));
    Vec c{0.3, -0.2, 0.1};
    const double radius = 1.5;
    Vec prev = c;
    for (int k = 0; k < 300; ++k) {
      Vec x = sample_ball(rng, s, c, radius);
      CHECK(s.norm(sub(x, c)) <= radius + 1e-9);
      CHECK(s.norm(sub(x, prev)) <= 2.0 * radius + 1e-9);
      prev = x;
    }
  }
}
