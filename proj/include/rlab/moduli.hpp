#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rlab/counterfunction.hpp"
#include "rlab/space.hpp"

namespace rlab {

// The configured quantitative functions and the quantities derived from them.
// b bounds the diameter of the ambient set; eta/tau are the space moduli.
// p_fn and s_fn are injection points whose true definitions live outside this
// codebase; the shipped defaults are placeholders and configurable.
struct ModuliChain {
  long b = 1;
  ConvexityModulus eta;
  SmoothnessModulus tau;
  std::function<double(double)> p_fn;
  std::string p_fn_label;
  std::function<long(long)> s_fn;
  std::string s_fn_label;
  Counterfunction g;

  double psi(double eps) const;
  double omega(double eps) const;
  double eta1(double eps) const;
  double eta2(double eps, bool* clamped = nullptr) const;
  double delta(double eps, double lambda, bool* clamped = nullptr) const;
  double beta(const std::function<long(long)>& gamma, long c, double eps) const;
  double q_mod(const std::function<long(long)>& gamma, long c, long d, double eps) const;
  double nu1(const std::function<long(long)>& gamma, long c, long d, double eps,
             bool* clamped = nullptr) const;
  double nu1_star(const std::function<long(long)>& gamma, long m, long n, double eps,
                  bool* clamped = nullptr) const;
};

ModuliChain make_default_chain(long b, const LpSpace& s);

// Shipped injection defaults.
std::function<double(double)> make_p_fn(const std::string& label);  // "default" = eps^2/96, "identity"
std::function<long(long)> make_s_fn(const std::string& label);      // "identity", "double"

// Running maximum of g on [0, n]; nondecreasing and >= g(n).
long g_majorant(const std::function<long(long)>& g, long n);
long g_majorant(const Counterfunction& g, long n);

// Index shift n -> xi(n+1).
std::function<long(long)> xi_prime(const std::function<long(long)>& xi);

// Mutually inverse bijections (0,1) <-> (0,inf).
double lambda_of_t(double t);
double t_of_lambda(double lambda);

// Moduli governing a parameter sequence: for lambda-sequences, index_mod is
// alpha with lambda_m >= n+1 whenever m >= alpha(n), and lambda_n <= gamma(n);
// t-sequences use xi with t_m >= 1 - 1/(n+1) and t_n <= 1 - 1/gamma(n).
struct SequenceModuli {
  std::function<long(long)> index_mod;
  std::function<long(long)> gamma;
};

// Defaults for lambda_n = n+1: alpha(n) = n, gamma(n) = n+1.
SequenceModuli default_lambda_moduli();
// Defaults for t_n = 1 - 1/(n+2): xi(n) = n, gamma(n) = n+2.
SequenceModuli default_t_moduli();

std::vector<double> default_lambda_sequence(long n_max);  // lambda_n = n+1
std::vector<double> default_t_sequence(long n_max);       // t_n = 1 - 1/(n+2)

// Enumeration checks of the sequence-moduli contracts on a finite range.
bool check_index_contract_lambda(const std::vector<double>& lambdas,
                                 const std::function<long(long)>& alpha);
bool check_gamma_bound_lambda(const std::vector<double>& lambdas,
                              const std::function<long(long)>& gamma);
bool check_index_contract_t(const std::vector<double>& ts, const std::function<long(long)>& xi);
bool check_gamma_bound_t(const std::vector<double>& ts, const std::function<long(long)>& gamma);

}  // namespace rlab
