#include <cmath>
#include <limits>

#include "doctest.h"
#include "rlab/moduli.hpp"

using namespace rlab;

namespace {

ModuliChain rational_chain(long b) {
  ModuliChain ch;
  ch.b = b;
  ch.eta = rational_convexity_modulus();
  ch.tau = rational_smoothness_modulus();
  ch.p_fn = make_p_fn("identity");
  ch.p_fn_label = "identity";
  ch.s_fn = make_s_fn("identity");
  ch.s_fn_label = "identity";
  ch.g = Counterfunction::constant(1);
  return ch;
}

const std::function<long(long)> gamma_default = [](long c) { return c + 1; };

}  // namespace

TEST_CASE("psi matches the frozen exact value at b=1, eps=2") {
  ModuliChain ch = rational_chain(1);
  // inner min is eps^2/(72 b) * eta(eps/2b)^2 = (4/72)*(1/64) = 1/1152,
  // squared over 4: 1/5308416
  CHECK(ch.psi(2.0) == doctest::Approx(1.0 / 5308416.0).epsilon(1e-14));
  CHECK(ch.eta1(2.0) == doctest::Approx(1.0 / 10616832.0).epsilon(1e-14));
}

TEST_CASE("psi computes both branches for the lp modulus") {
  LpSpace s(2.0, 2);
  ModuliChain ch = rational_chain(1);
  ch.eta = lp_convexity_modulus(s);
  const double eta1v = ch.eta.eval(1.0);  // eta(eps/2b) with eps=2, b=1
  CHECK(eta1v == doctest::Approx(1.0 - std::sqrt(0.75)).epsilon(1e-13));
  const double inner = std::min(1.0, (4.0 / 72.0) * eta1v * eta1v);
  const double first = inner * inner / 4.0;
  const double second = (4.0 / 48.0) * eta1v * eta1v;
  CHECK(ch.psi(2.0) == doctest::Approx(std::min(first, second)).epsilon(1e-13));
}

TEST_CASE("psi is strictly positive on its domain") {
  for (long b : {1L, 2L, 5L}) {
    ModuliChain ch = rational_chain(b);
    for (double eps : {1e-4, 0.01, 0.5, 1.0, 2.0}) {
      CHECK(ch.psi(eps) > 0.0);
    }
  }
  ModuliChain ch = rational_chain(1);
  CHECK_THROWS_AS(ch.psi(0.0), std::invalid_argument);
  CHECK_THROWS_AS(ch.psi(2.5), std::invalid_argument);
}

TEST_CASE("omega_tau exact evaluations and the r1 plateau") {
  ModuliChain ch = rational_chain(1);
  CHECK(ch.omega(1.0) == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  ModuliChain ch2 = rational_chain(2);
  CHECK(ch2.omega(3.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-15));
  // r1 = min(eps,2) saturates
  CHECK(ch2.omega(2.5) == ch2.omega(7.0));
  CHECK_THROWS_AS(ch.omega(0.0), std::invalid_argument);
}

TEST_CASE("eta1 and eta2 are dominated by eps and positive") {
  ModuliChain ch = rational_chain(1);
  for (double eps : {0.01, 0.5, 1.0, 2.0}) {
    const double e1 = ch.eta1(eps);
    CHECK(e1 > 0.0);
    CHECK(e1 <= eps);
    const double e2 = ch.eta2(eps);
    CHECK(e2 > 0.0);
    CHECK(e2 <= eps);
  }
}

TEST_CASE("eta2 composes omega into psi") {
  ModuliChain ch = rational_chain(1);
  // omega(b, eps/2b) at eps=2 is omega(1,1) = 1/24
  const double w = ch.omega(1.0);
  CHECK(w == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
  CHECK(ch.eta2(2.0) == doctest::Approx(std::min(2.0, ch.psi(w) / 2.0)).epsilon(1e-13));
}

TEST_CASE("eta2 clamps psi's argument for absurd tau and flags it") {
  ModuliChain ch = rational_chain(1);
  ch.tau = SmoothnessModulus{[](double) { return 1e7; }, "huge"};
  bool clamped = false;
  const double v = ch.eta2(1.0, &clamped);
  CHECK(clamped);
  CHECK(v == doctest::Approx(std::min(1.0, ch.psi(2.0) / 2.0)).epsilon(1e-13));
}

TEST_CASE("delta is the three-way minimum and satisfies delta*b*lambda <= eps/4") {
  for (long b : {1L, 2L}) {
    ModuliChain ch = rational_chain(b);
    for (double eps : {0.5, 1.0, 4.0}) {
      for (double lambda : {0.1, 1.0, 10.0, 1000.0}) {
        const double d = ch.delta(eps, lambda);
        const double arm2 = eps / (4.0 * static_cast<double>(b) * lambda);
        const double arm3 = ch.omega(eps / (4.0 * static_cast<double>(b)));
        CHECK(d == doctest::Approx(std::min({ch.eta2(eps), arm2, arm3})).epsilon(1e-15));
        CHECK(d * static_cast<double>(b) * lambda <= eps / 4.0 + 1e-15);
        CHECK(d > 0.0);
      }
    }
  }
  // middle arm dominates as lambda grows
  ModuliChain ch = rational_chain(1);
  CHECK(ch.delta(1.0, 1e12) == doctest::Approx(1.0 / (4.0 * 1e12)).epsilon(1e-12));
}

TEST_CASE("beta exact value and monotonicity") {
  ModuliChain ch = rational_chain(1);  // p_fn = identity
  CHECK(ch.beta(gamma_default, 1, 1.0) == doctest::Approx(1.0 / 8.0).epsilon(1e-15));
  double prev = 1e9;
  for (long c = 0; c < 6; ++c) {
    const double v = ch.beta(gamma_default, c, 1.0);
    CHECK(v < prev);
    prev = v;
    // b * gamma(c) * beta = p(eps)/4 exactly
    CHECK(static_cast<double>(ch.b) * static_cast<double>(gamma_default(c)) * v ==
          doctest::Approx(1.0 / 4.0).epsilon(1e-15));
  }
}

TEST_CASE("q_mod is dominated by its omega arm and collapses duplicate arms") {
  ModuliChain ch = rational_chain(1);
  for (double eps : {0.5, 1.0}) {
    for (long c : {1L, 4L}) {
      const double q = ch.q_mod(gamma_default, c, c, eps);
      const double cap = ch.omega(ch.p_fn(eps) / 4.0);
      CHECK(q <= cap + 1e-18);
      // s_fn identity: the two beta arms coincide
      CHECK(q == doctest::Approx(std::min(ch.beta(gamma_default, c, eps), cap)).epsilon(1e-15));
    }
  }
}

TEST_CASE("q_mod three-arm example") {
  ModuliChain ch = rational_chain(1);
  ch.s_fn = make_s_fn("double");
  // c=1, d=1, eps=1: min(1/8, beta(2)=1/12, omega(1, 1/4) = (1/16)/12 * (1/8) = 1/1536)
  CHECK(ch.q_mod(gamma_default, 1, 1, 1.0) == doctest::Approx(1.0 / 1536.0).epsilon(1e-15));
}

TEST_CASE("nu1 is half of psi at q") {
  ModuliChain ch = rational_chain(1);
  ch.s_fn = make_s_fn("double");
  const double q = ch.q_mod(gamma_default, 1, 1, 1.0);
  CHECK(ch.nu1(gamma_default, 1, 1, 1.0) == doctest::Approx(ch.psi(q) / 2.0).epsilon(1e-14));
  CHECK(ch.nu1(gamma_default, 1, 1, 1.0) > 0.0);
}

TEST_CASE("nu1_star agrees with direct enumeration and is attained at the top index") {
  ModuliChain ch = rational_chain(2);
  ch.g = Counterfunction::affine(2, 3);
  for (double eps : {0.5, 1.0}) {
    for (long m : {0L, 3L}) {
      for (long n : {0L, 2L}) {
        const double v = ch.nu1_star(gamma_default, m, n, eps);
        // independent enumeration
        const long gM = g_majorant(ch.g, n);
        const long cmax = std::max(m, n + gM);
        const double cap = ch.omega(ch.p_fn(eps) / (4.0 * static_cast<double>(ch.b)));
        double best = std::numeric_limits<double>::infinity();
        for (long c = 0; c <= cmax; ++c) {
          best = std::min(best, ch.psi(std::min(ch.beta(gamma_default, c, eps), cap)));
        }
        CHECK(v == doctest::Approx(best / 2.0).epsilon(1e-14));
        // gamma nondecreasing: the minimum sits at c = cmax
        const double at_top = ch.psi(std::min(ch.beta(gamma_default, cmax, eps), cap)) / 2.0;
        CHECK(v == doctest::Approx(at_top).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("nu1_star singleton range for g == 0") {
  ModuliChain ch = rational_chain(1);
  ch.g = Counterfunction::constant(0);
  const double cap = ch.omega(ch.p_fn(1.0) / 4.0);
  const double expect = ch.psi(std::min(ch.beta(gamma_default, 0, 1.0), cap)) / 2.0;
  CHECK(ch.nu1_star(gamma_default, 0, 0, 1.0) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("g_majorant is the running maximum") {
  CHECK(g_majorant(Counterfunction::affine(2, 3), 7) == 17);
  CHECK(g_majorant(Counterfunction::constant(5), 0) == 5);
  CHECK(g_majorant(Counterfunction::constant(5), 100) == 5);
  const std::function<long(long)> spiky = [](long n) { return n == 0 ? 4 : (n == 1 ? 1 : 0); };
  CHECK(g_majorant(spiky, 0) == 4);
  CHECK(g_majorant(spiky, 1) == 4);
  CHECK(g_majorant(spiky, 9) == 4);
  // nondecreasing and >= g(n)
  const Counterfunction g = Counterfunction::identity();
  long prev = 0;
  for (long n = 0; n < 50; ++n) {
    const long v = g_majorant(g, n);
    CHECK(v >= g(n));
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("xi_prime shifts the argument") {
  const std::function<long(long)> id = [](long n) { return n; };
  auto shifted = xi_prime(id);
  for (long n = 0; n < 20; ++n) CHECK(shifted(n) == n + 1);
}

TEST_CASE("lambda/t bridge") {
  CHECK(lambda_of_t(0.5) == doctest::Approx(1.0).epsilon(1e-15));
  for (long n = 0; n < 100; ++n) {
    const double t = 1.0 - 1.0 / static_cast<double>(n + 2);
    CHECK(lambda_of_t(t) == doctest::Approx(static_cast<double>(n + 1)).epsilon(1e-9));
  }
  for (double t : {0.01, 0.25, 0.5, 0.9, 0.999}) {
    CHECK(std::fabs(t_of_lambda(lambda_of_t(t)) - t) <= 1e-12);
  }
  for (double lam : {0.1, 1.0, 42.0, 1e6}) {
    CHECK(std::fabs(lambda_of_t(t_of_lambda(lam)) - lam) <= 1e-12 * lam);
  }
  CHECK_THROWS_AS(lambda_of_t(0.0), std::invalid_argument);
  CHECK_THROWS_AS(lambda_of_t(1.0), std::invalid_argument);
  CHECK_THROWS_AS(t_of_lambda(0.0), std::invalid_argument);
}

TEST_CASE("default sequence moduli satisfy their contracts by enumeration") {
  const auto lambdas = default_lambda_sequence(10000);
  const SequenceModuli lm = default_lambda_moduli();
  CHECK(check_index_contract_lambda(lambdas, lm.index_mod));
  CHECK(check_gamma_bound_lambda(lambdas, lm.gamma));

  const auto ts = default_t_sequence(10000);
  const SequenceModuli tm = default_t_moduli();
  CHECK(check_index_contract_t(ts, tm.index_mod));
  CHECK(check_gamma_bound_t(ts, tm.gamma));
}

TEST_CASE("xi_prime transfers the t-moduli to lambda-moduli") {
  const SequenceModuli tm = default_t_moduli();
  const auto xi_p = xi_prime(tm.index_mod);
  const auto ts = default_t_sequence(2000);
  for (long n = 0; n <= 1000; ++n) {
    for (long m = xi_p(n); m <= 1200; m += (m < xi_p(n) + 20 ? 1 : 97)) {
      const double lambda_m = lambda_of_t(ts[static_cast<std::size_t>(m)]);
      CHECK(lambda_m >= static_cast<double>(n + 1) - 1e-9);
    }
  }
  // gamma transfer: lambda_n <= gamma(n) - 1 <= gamma(n)
  for (long n = 0; n <= 1000; ++n) {
    const double lambda_n = lambda_of_t(ts[static_cast<std::size_t>(n)]);
    CHECK(lambda_n <= static_cast<double>(tm.gamma(n) - 1) + 1e-9);
    CHECK(lambda_n <= static_cast<double>(tm.gamma(n)) + 1e-9);
  }
}

TEST_CASE("chain outputs are strictly positive across the grid") {
  for (long b : {1L, 3L}) {
    ModuliChain lp_chain = make_default_chain(b, LpSpace(2.0, 2));
    ModuliChain rat_chain = rational_chain(b);
    for (const ModuliChain* ch : {&lp_chain, &rat_chain}) {
      for (double eps : {0.1, 1.0, 2.0}) {
        CHECK(ch->psi(eps) > 0.0);
        CHECK(ch->omega(eps) > 0.0);
        CHECK(ch->eta1(eps) > 0.0);
        CHECK(ch->eta2(eps) > 0.0);
        CHECK(ch->delta(eps, 10.0) > 0.0);
        CHECK(ch->beta(gamma_default, 2, eps) > 0.0);
        CHECK(ch->q_mod(gamma_default, 2, 3, eps) > 0.0);
        CHECK(ch->nu1(gamma_default, 2, 3, eps) > 0.0);
        CHECK(ch->nu1_star(gamma_default, 2, 3, eps) > 0.0);
      }
    }
  }
}
