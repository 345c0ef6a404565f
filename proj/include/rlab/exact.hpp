#pragma once

#include <gmpxx.h>

#include <functional>
#include <string>

namespace rlab {

// Exact rational scalar for the oracle evaluation path.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

using RatFn = std::function<Rat(const Rat&)>;

// eta(eps) = eps^2/8 and tau(eps) = eps, the rational-valued moduli.
RatFn rational_eta();
RatFn rational_tau();

// Rational versions of the shipped p_fn labels.
RatFn make_p_fn_exact(const std::string& label);

Rat psi_exact(const Rat& b, const RatFn& eta, const Rat& eps);
Rat omega_exact(const RatFn& tau, const Rat& b, const Rat& eps);
Rat eta1_exact(const Rat& b, const RatFn& eta, const Rat& eps);
Rat eta2_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const Rat& eps,
               bool* clamped = nullptr);
Rat delta_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const Rat& eps,
                const Rat& lambda, bool* clamped = nullptr);
Rat beta_exact(const Rat& b, const RatFn& p_fn, const std::function<long(long)>& gamma, long c,
               const Rat& eps);
Rat q_mod_exact(const Rat& b, const RatFn& tau, const RatFn& p_fn,
                const std::function<long(long)>& gamma, const std::function<long(long)>& s_fn,
                long c, long d, const Rat& eps);
Rat nu1_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const RatFn& p_fn,
              const std::function<long(long)>& gamma, const std::function<long(long)>& s_fn,
              long c, long d, const Rat& eps, bool* clamped = nullptr);
Rat nu1_star_exact(const Rat& b, const RatFn& eta, const RatFn& tau, const RatFn& p_fn,
                   const std::function<long(long)>& gamma, long m, long n, long gM, const Rat& eps,
                   bool* clamped = nullptr);

std::string rat_to_string(const Rat& r);

}  // namespace rlab
