#include "ci_standard.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "ci_common.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"

namespace rarecert {

namespace {

using specfun::normal_cdf;
using specfun::normal_quantile;
using specfun::reg_inc_beta_inv;

// Below this argument Phi is under 1e-324; skip the erfc call entirely.
constexpr double kPhiZeroCutoff = -38.6;

double phi_term(double arg) {
  if (arg < kPhiZeroCutoff) return 0.0;
  return normal_cdf(arg);
}

}  // namespace

Interval clt_interval(const TrialSummary& s, const Level& a) {
  auto raw = detail::clt_raw(static_cast<double>(s.n), static_cast<double>(s.k),
                             a.z_two_sided());
  return make_interval(raw.lower, raw.upper, Method::CLT, a.alpha);
}

Interval wilson_interval(const TrialSummary& s, const Level& a) {
  double z = a.z_two_sided();
  auto raw = detail::wilson_raw(static_cast<double>(s.n), static_cast<double>(s.k),
                                z * z);
  return make_interval(raw.lower, raw.upper, Method::Wilson, a.alpha);
}

Interval exact_interval(const TrialSummary& s, const Level& a) {
  double nd = static_cast<double>(s.n);
  double kd = static_cast<double>(s.k);
  // Upper solves P(X <= k) = alpha/2, i.e. I_p(k+1, n-k) = 1 - alpha/2;
  // lower solves P(X >= k) = alpha/2, i.e. I_p(k, n-k+1) = alpha/2.
  double upper = (s.k == s.n)
                     ? 1.0
                     : reg_inc_beta_inv(1.0 - a.alpha / 2.0, kd + 1.0, nd - kd);
  double lower = (s.k == 0) ? 0.0 : reg_inc_beta_inv(a.alpha / 2.0, kd, nd - kd + 1.0);
  return make_interval(lower, upper, Method::Exact, a.alpha);
}

ChernoffRaw chernoff_raw_bounds(double p_hat, double n, double alpha) {
  double L = std::log(2.0 / alpha);
  double upper = p_hat + L / n + std::sqrt(L * L / (n * n) + 2.0 * p_hat * L / n);
  double lower =
      p_hat + L / (2.0 * n) - std::sqrt(L * L / (4.0 * n * n) + 2.0 * p_hat * L / n);
  return {lower, upper};
}

Interval chernoff_interval(const TrialSummary& s, const Level& a) {
  auto raw = chernoff_raw_bounds(s.p_hat(), static_cast<double>(s.n), a.alpha);
  return make_interval(raw.lower, raw.upper, Method::Chernoff, a.alpha);
}

Interval be_region_interval(const TrialSummary& s, const Level& a, const BEConfig& cfg) {
  double ph = s.p_hat();
  if (!(ph < 0.5))
    throw precondition_error(
        "be_region_interval: requires successes/n < 1/2 (got p_hat=" +
        std::to_string(ph) + ")");
  double nd = static_cast<double>(s.n);
  double thr = a.alpha / 2.0;
  double c = cfg.c;
  auto g = [&](double p) {
    if (p <= 0.0) return 1.0;  // the error term diverges as p -> 0
    double v = p * (1.0 - p);
    double err = c / std::sqrt(nd * v);
    double arg = (ph - p) / std::sqrt(v / nd);
    return phi_term(arg) + err;
  };
  double upper = rootfind::level_set_sup(g, ph, 0.5, thr);
  // The left branch of the region always reaches down to 0, so the hull's
  // lower endpoint is trivial.
  return make_interval(0.0, upper, Method::BE, a.alpha);
}

BERelaxedParts be_relaxed_parts(const TrialSummary& s, const Level& a,
                                const BEConfig& cfg) {
  double n_min = cfg.min_n();
  double nd = static_cast<double>(s.n);
  if (!(nd > n_min))
    throw precondition_error("be_relaxed_upper: requires n > N0 = " +
                             std::to_string(n_min) + " (got n=" +
                             std::to_string(s.n) + ")");
  double alpha = a.alpha;
  double ph = s.p_hat();
  double sqrt_n = std::sqrt(nd);
  double cap = cfg.u() * sqrt_n * alpha / 2.0;
  double c_data = (s.k == 0 || s.k == s.n)
                      ? std::numeric_limits<double>::infinity()
                      : cfg.c / std::sqrt(ph * (1.0 - ph));

  BERelaxedParts parts{};
  double lambda = 0.0;
  bool star = !(c_data < cap);
  if (!star) {
    parts.c_tilde = c_data;
    lambda = 1.0 - 2.0 * c_data / (sqrt_n * alpha);
    if (!(lambda > 0.0)) star = true;  // rounding collapsed 1-lambda; use z*
  }
  if (star) {
    parts.c_tilde = cap;
    lambda = cfg.u_complement;  // lambda = 1 - u
    parts.z2 = cfg.z_star * cfg.z_star;
  } else {
    double z = normal_quantile(lambda * alpha / 2.0);
    parts.z2 = z * z;
  }
  parts.z_star_branch = star;
  parts.lambda = lambda;

  double one_minus_lambda = star ? cfg.u() : (1.0 - lambda);
  double ratio = 16.0 * cfg.c * cfg.c /
                 (nd * one_minus_lambda * one_minus_lambda * alpha * alpha);
  parts.u1 = 0.5 * (1.0 - std::sqrt(1.0 - ratio));
  parts.u2 = detail::wilson_raw(nd, static_cast<double>(s.k), parts.z2).upper;
  return parts;
}

Interval be_relaxed_upper(const TrialSummary& s, const Level& a, const BEConfig& cfg) {
  auto parts = be_relaxed_parts(s, a, cfg);
  return make_interval(0.0, parts.u2, Method::BERelaxed, a.alpha);
}

double be_error_bound(std::uint64_t n, double p, double c) {
  if (n == 0) throw domain_error("be_error_bound: n must be >= 1");
  if (!(p > 0.0 && p < 1.0))
    throw domain_error("be_error_bound: p must lie in (0,1)");
  return c / std::sqrt(static_cast<double>(n) * p * (1.0 - p));
}

Interval compute_interval(Method m, const TrialSummary& s, const Level& a,
                          const BEConfig& cfg) {
  switch (m) {
    case Method::CLT: return clt_interval(s, a);
    case Method::Wilson: return wilson_interval(s, a);
    case Method::Exact: return exact_interval(s, a);
    case Method::Chernoff: return chernoff_interval(s, a);
    case Method::BE: return be_region_interval(s, a, cfg);
    case Method::BERelaxed: return be_relaxed_upper(s, a, cfg);
  }
  throw domain_error("compute_interval: unknown method");
}

}  // namespace rarecert
