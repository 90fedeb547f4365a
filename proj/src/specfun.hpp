#pragma once

#include <cstdint>

namespace rarecert::specfun {

// Standard normal CDF Phi(x). Absolute error below 1e-15 over the real line.
double normal_cdf(double x);

// Standard normal tail Phi_bar(x) = 1 - Phi(x) = Phi(-x), accurate in
// relative terms deep into the tail (down to the underflow threshold).
double normal_tail(double x);

// log Phi_bar(x) for x >= 0. Valid far beyond the underflow point of
// normal_tail; for large x it switches to the asymptotic expansion of the
// Mills ratio so arguments up to |z| ~ 1e4 stay finite.
double log_normal_tail(double x);

// Standard normal density.
double normal_pdf(double x);

// Quantile Phi^{-1}(q) for q in (0,1). Rational initial guess refined by
// Newton steps; accepts q down to 1e-300 and below without overflow via a
// dedicated log-space tail branch. Roundtrip |Phi(z) - q| <= 1e-12 (relative
// for tail arguments).
double normal_quantile(double q);

// log Gamma(x) for x > 0, relative error <= 1e-12 (Lanczos; reentrant,
// unlike std::lgamma which touches the global signgam).
double log_gamma(double x);

// log C(n, k).
double log_choose(std::uint64_t n, std::uint64_t k);

// log Beta(a, b).
double log_beta(double a, double b);

// Regularized incomplete beta I_x(a,b) for x in [0,1], a,b > 0.
double reg_inc_beta(double x, double a, double b);

// Inverse: x with |I_x(a,b) - q| <= 1e-12, for q in (0,1).
double reg_inc_beta_inv(double q, double a, double b);

}  // namespace rarecert::specfun
