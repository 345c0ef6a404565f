#pragma once

#include <algorithm>
#include <utility>

// Scalar-generic evaluation of the quantitative chain
//   psi, omega, eta1, eta2, delta, beta, q, nu1, nu1_star.
// Only +,-,*,/ and < are used, so the same formulas run on double (fast path)
// and on an exact rational type (oracle path).  Compound expressions are bound
// to named values before comparisons to keep expression-template scalars
// (GMP) well behaved.

namespace rlab::chain {

template <class S>
const S& min2(const S& a, const S& b) {
  return (b < a) ? b : a;
}

template <class S>
const S& min3(const S& a, const S& b, const S& c) {
  return min2(min2(a, b), c);
}

// psi_{b,eta}(eps) = min( (min(eps/2, eps^2/(72 b) eta(eps/2b)^2))^2 / 4,
//                         eps^2/48 * eta(eps/2b)^2 )
template <class S, class Eta>
S psi(const S& b, Eta&& eta, const S& eps) {
  const S two(2), four(4), c72(72), c48(48);
  const S eta_val(eta(S(eps / (two * b))));
  const S half_eps(eps / two);
  const S quad(eps * eps * eta_val * eta_val / (c72 * b));
  const S inner(min2(half_eps, quad));
  const S first(inner * inner / four);
  const S second(eps * eps * eta_val * eta_val / c48);
  return min2(first, second);
}

// omega_tau(b, eps) = r1^2/(12 r2) * tau(r1/(2 r2)),
// r1 = min(eps, 2), r2 = max(b, 1).
template <class S, class Tau>
S omega(Tau&& tau, const S& b, const S& eps) {
  const S one(1), two(2), twelve(12);
  const S r1(min2(eps, two));
  const S r2((b < one) ? one : b);
  const S tau_val(tau(S(r1 / (two * r2))));
  return S(r1 * r1 * tau_val / (twelve * r2));
}

// eta1 = min(eps, psi/2)
template <class S, class Eta>
S eta1(const S& b, Eta&& eta, const S& eps) {
  const S half_psi(psi(b, eta, eps) / S(2));
  return min2(eps, half_psi);
}

// eta2 = min(eps, psi(omega(b, eps/2b))/2); psi's argument is clamped into
// (0,2] and the clamp is surfaced through *clamped.
template <class S, class Eta, class Tau>
S eta2(const S& b, Eta&& eta, Tau&& tau, const S& eps, bool* clamped = nullptr) {
  const S two(2);
  S w(omega(tau, b, S(eps / (two * b))));
  if (two < w) {
    w = two;
    if (clamped) *clamped = true;
  }
  const S half_psi(psi(b, eta, w) / two);
  return min2(eps, half_psi);
}

// delta = min(eta2, eps/(4 b lambda), omega(b, eps/4b))
template <class S, class Eta, class Tau>
S delta(const S& b, Eta&& eta, Tau&& tau, const S& eps, const S& lambda, bool* clamped = nullptr) {
  const S four(4);
  const S a1(eta2(b, eta, tau, eps, clamped));
  const S a2(eps / (four * b * lambda));
  const S a3(omega(tau, b, S(eps / (four * b))));
  return min3(a1, a2, a3);
}

// beta(c, eps) = p(eps) / (4 b gamma(c))
template <class S, class PFn, class GammaFn>
S beta(const S& b, PFn&& p_fn, GammaFn&& gamma, long c, const S& eps) {
  const S four(4);
  const S g(gamma(c));
  return S(S(p_fn(eps)) / (four * b * g));
}

// q(c, d, eps) = min{beta(c,eps), beta(s(d),eps), omega(b, p(eps)/4b)}
template <class S, class Tau, class PFn, class GammaFn, class SFn>
S q_mod(const S& b, Tau&& tau, PFn&& p_fn, GammaFn&& gamma, SFn&& s_fn, long c, long d,
        const S& eps) {
  const S four(4);
  const S b1(beta(b, p_fn, gamma, c, eps));
  const S b2(beta(b, p_fn, gamma, s_fn(d), eps));
  const S w(omega(tau, b, S(S(p_fn(eps)) / (four * b))));
  return min3(b1, b2, w);
}

// nu1 = psi(q)/2, q clamped into (0,2] (cannot fire for the shipped p but
// guarded anyway).
template <class S, class Eta, class Tau, class PFn, class GammaFn, class SFn>
S nu1(const S& b, Eta&& eta, Tau&& tau, PFn&& p_fn, GammaFn&& gamma, SFn&& s_fn, long c, long d,
      const S& eps, bool* clamped = nullptr) {
  const S two(2);
  S q(q_mod(b, tau, p_fn, gamma, s_fn, c, d, eps));
  if (two < q) {
    q = two;
    if (clamped) *clamped = true;
  }
  return S(psi(b, eta, q) / two);
}

// nu1_star(m, n) = 1/2 * min_{c <= max(m, n+gM)} psi(min{beta(c,eps), omega(b, p(eps)/4b)})
// where gM is the running-maximum majorant of the counterfunction at n.
// The minimum is taken by full enumeration of the index range.
template <class S, class Eta, class Tau, class PFn, class GammaFn>
S nu1_star(const S& b, Eta&& eta, Tau&& tau, PFn&& p_fn, GammaFn&& gamma, long m, long n, long gM,
           const S& eps, bool* clamped = nullptr) {
  const S two(2), four(4);
  const long cmax = std::max(m, n + gM);
  const S w(omega(tau, b, S(S(p_fn(eps)) / (four * b))));
  S best(0);
  bool have = false;
  for (long c = 0; c <= cmax; ++c) {
    const S bc(beta(b, p_fn, gamma, c, eps));
    S arg(min2(bc, w));
    if (two < arg) {
      arg = two;
      if (clamped) *clamped = true;
    }
    const S val(psi(b, eta, arg));
    if (!have || val < best) {
      best = val;
      have = true;
    }
  }
  return S(best / two);
}

}  // namespace rlab::chain
