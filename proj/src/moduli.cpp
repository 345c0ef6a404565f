#include "rlab/moduli.hpp"

#include <cmath>
#include <stdexcept>

#include "rlab/chain_math.hpp"

namespace rlab {

namespace {

void require_b(long b) {
  if (b < 1) throw std::invalid_argument("b must be a positive integer");
}

}  // namespace

double ModuliChain::psi(double eps) const {
  require_b(b);
  if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("psi: eps must lie in (0,2]");
  return chain::psi<double>(static_cast<double>(b), eta.eval, eps);
}

double ModuliChain::omega(double eps) const {
  require_b(b);
  if (!(eps > 0.0)) throw std::invalid_argument("omega: eps must be positive");
  return chain::omega<double>(tau.eval, static_cast<double>(b), eps);
}

double ModuliChain::eta1(double eps) const {
  if (!(eps > 0.0 && eps <= 2.0)) throw std::invalid_argument("eta1: eps must lie in (0,2]");
  return chain::eta1<double>(static_cast<double>(b), eta.eval, eps);
}

double ModuliChain::eta2(double eps, bool* clamped) const {
  if (!(eps > 0.0)) throw std::invalid_argument("eta2: eps must be positive");
  return chain::eta2<double>(static_cast<double>(b), eta.eval, tau.eval, eps, clamped);
}

double ModuliChain::delta(double eps, double lambda, bool* clamped) const {
  if (!(eps > 0.0)) throw std::invalid_argument("delta: eps must be positive");
  if (!(lambda > 0.0)) throw std::invalid_argument("delta: lambda must be positive");
  return chain::delta<double>(static_cast<double>(b), eta.eval, tau.eval, eps, lambda, clamped);
}

double ModuliChain::beta(const std::function<long(long)>& gamma, long c, double eps) const {
  const long g = gamma(c);
  if (g < 1) throw std::invalid_argument("beta: gamma(c) must be >= 1");
  return chain::beta<double>(static_cast<double>(b), p_fn, gamma, c, eps);
}

double ModuliChain::q_mod(const std::function<long(long)>& gamma, long c, long d,
                          double eps) const {
  return chain::q_mod<double>(static_cast<double>(b), tau.eval, p_fn, gamma, s_fn, c, d, eps);
}

double ModuliChain::nu1(const std::function<long(long)>& gamma, long c, long d, double eps,
                        bool* clamped) const {
  return chain::nu1<double>(static_cast<double>(b), eta.eval, tau.eval, p_fn, gamma, s_fn, c, d,
                            eps, clamped);
}

double ModuliChain::nu1_star(const std::function<long(long)>& gamma, long m, long n, double eps,
                             bool* clamped) const {
  if (m < 0 || n < 0) throw std::invalid_argument("nu1_star: m,n must be nonnegative");
  const long gM = g_majorant(g, n);
  return chain::nu1_star<double>(static_cast<double>(b), eta.eval, tau.eval, p_fn, gamma, m, n, gM,
                                 eps, clamped);
}

std::function<double(double)> make_p_fn(const std::string& label) {
  if (label == "default") return [](double eps) { return eps * eps / 96.0; };
  if (label == "identity") return [](double eps) { return eps; };
  throw std::invalid_argument("unknown p_fn label: " + label);
}

std::function<long(long)> make_s_fn(const std::string& label) {
  if (label == "identity") return [](long d) { return d < 1 ? 1 : d; };
  if (label == "double") return [](long d) { return d < 1 ? 2 : 2 * d; };
  throw std::invalid_argument("unknown s_fn label: " + label);
}

ModuliChain make_default_chain(long b, const LpSpace& s) {
  require_b(b);
  ModuliChain chain;
  chain.b = b;
  chain.eta = lp_convexity_modulus(s);
  chain.tau = lp_smoothness_modulus(s);
  chain.p_fn = make_p_fn("default");
  chain.p_fn_label = "default";
  chain.s_fn = make_s_fn("identity");
  chain.s_fn_label = "identity";
  chain.g = Counterfunction::constant(1);
  return chain;
}

long g_majorant(const std::function<long(long)>& g, long n) {
  if (n < 0) throw std::invalid_argument("g_majorant: n must be nonnegative");
  long best = 0;
  for (long i = 0; i <= n; ++i) best = std::max(best, g(i));
  return best;
}

long g_majorant(const Counterfunction& g, long n) {
  return g_majorant(std::function<long(long)>([&g](long i) { return g(i); }), n);
}

std::function<long(long)> xi_prime(const std::function<long(long)>& xi) {
  return [xi](long n) { return xi(n + 1); };
}

double lambda_of_t(double t) {
  if (!(t > 0.0 && t < 1.0)) throw std::invalid_argument("t must lie in (0,1)");
  return t / (1.0 - t);
}

double t_of_lambda(double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
  return lambda / (1.0 + lambda);
}

SequenceModuli default_lambda_moduli() {
  return SequenceModuli{[](long n) { return n; }, [](long n) { return n + 1; }};
}

SequenceModuli default_t_moduli() {
  return SequenceModuli{[](long n) { return n; }, [](long n) { return n + 2; }};
}

std::vector<double> default_lambda_sequence(long n_max) {
  std::vector<double> v(static_cast<std::size_t>(n_max + 1));
  for (long n = 0; n <= n_max; ++n) v[static_cast<std::size_t>(n)] = static_cast<double>(n + 1);
  return v;
}

std::vector<double> default_t_sequence(long n_max) {
  std::vector<double> v(static_cast<std::size_t>(n_max + 1));
  for (long n = 0; n <= n_max; ++n)
    v[static_cast<std::size_t>(n)] = 1.0 - 1.0 / static_cast<double>(n + 2);
  return v;
}

bool check_index_contract_lambda(const std::vector<double>& lambdas,
                                 const std::function<long(long)>& alpha) {
  const long len = static_cast<long>(lambdas.size());
  for (long n = 0; n < len; ++n) {
    for (long m = std::max<long>(alpha(n), 0); m < len; ++m) {
      if (!(lambdas[static_cast<std::size_t>(m)] >= static_cast<double>(n + 1))) return false;
    }
  }
  return true;
}

bool check_gamma_bound_lambda(const std::vector<double>& lambdas,
                              const std::function<long(long)>& gamma) {
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    if (!(lambdas[n] <= static_cast<double>(gamma(static_cast<long>(n))))) return false;
  }
  return true;
}

bool check_index_contract_t(const std::vector<double>& ts, const std::function<long(long)>& xi) {
  const long len = static_cast<long>(ts.size());
  for (long n = 0; n < len; ++n) {
    const double need = 1.0 - 1.0 / static_cast<double>(n + 1);
    for (long m = std::max<long>(xi(n), 0); m < len; ++m) {
      if (!(ts[static_cast<std::size_t>(m)] >= need)) return false;
    }
  }
  return true;
}

bool check_gamma_bound_t(const std::vector<double>& ts, const std::function<long(long)>& gamma) {
  for (std::size_t n = 0; n < ts.size(); ++n) {
    const double cap = 1.0 - 1.0 / static_cast<double>(gamma(static_cast<long>(n)));
    if (!(ts[n] <= cap)) return false;
  }
  return true;
}

}  // namespace rlab
