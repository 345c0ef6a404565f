#include "rlab/exact.hpp"

#include <stdexcept>

#include "rlab/chain_math.hpp"

namespace rlab {

RatFn rational_eta() {
  return [](const Rat& eps) { return Rat(eps * eps / 8); };
}

RatFn rational_tau() {
  return [](const Rat& eps) { return eps; };
}

RatFn make_p_fn_exact(const std::string& label) {
  if (label == "default") return [](const Rat& eps) { return Rat(eps * eps / 96); };
  if (label == "identity") return [](const Rat& eps) { return eps; };
  throw std::invalid_argument("unknown p_fn label: " + label);
}

Rat psi_exact(const Rat& b, const RatFn& eta, const Rat& eps) {
  return chain::psi<Rat>(b, eta, eps);
}

Rat omega_exact(const RatFn& tau, const Rat& b, const Rat& eps) {
  return chain::omega<Rat>(tau, b, eps);
}

Rat eta1_exact(const Rat& b, const RatFn& eta, const Rat& eps) {
  return chain::eta1<Rat>(b, eta, eps);
}

Rat eta2_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const Rat& eps, bool* clamped) {
  return chain::eta2<Rat>(b, eta, tau, eps, clamped);
}

Rat delta_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const Rat& eps,
                const Rat& lambda, bool* clamped) {
  return chain::delta<Rat>(b, eta, tau, eps, lambda, clamped);
}

Rat beta_exact(const Rat& b, const RatFn& p_fn, const std::function<long(long)>& gamma, long c,
               const Rat& eps) {
  return chain::beta<Rat>(b, p_fn, gamma, c, eps);
}

Rat q_mod_exact(const Rat& b, const RatFn& tau, const RatFn& p_fn,
                const std::function<long(long)>& gamma, const std::function<long(long)>& s_fn,
                long c, long d, const Rat& eps) {
  return chain::q_mod<Rat>(b, tau, p_fn, gamma, s_fn, c, d, eps);
}

Rat nu1_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const RatFn& p_fn,
              const std::function<long(long)>& gamma, const std::function<long(long)>& s_fn,
              long c, long d, const Rat& eps, bool* clamped) {
  return chain::nu1<Rat>(b, eta, tau, p_fn, gamma, s_fn, c, d, eps, clamped);
}

Rat nu1_star_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const RatFn& p_fn,
                   const std::function<long(long)>& gamma, long m, long n, long gM, const Rat& eps,
                   bool* clamped) {
  return chain::nu1_star<Rat>(b, eta, tau, p_fn, gamma, m, n, gM, eps, clamped);
}

std::string rat_to_string(const Rat& r) {
  return r.get_str();
}

}  // namespace rlab
