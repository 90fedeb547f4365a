#include "ci_targeted.hpp"

#include <cmath>
#include <string>

#include "ci_common.hpp"
#include "rootfind.hpp"
#include "specfun.hpp"

namespace rarecert {

namespace {

using specfun::normal_cdf;
using specfun::normal_quantile;
using specfun::reg_inc_beta_inv;

constexpr double kPhiZeroCutoff = -38.6;

double phi_term(double arg) {
  if (arg < kPhiZeroCutoff) return 0.0;
  return normal_cdf(arg);
}

}  // namespace

Interval clt_interval(const StoppedSummary& s, const Level& a) {
  auto raw = detail::clt_raw(static_cast<double>(s.trials), static_cast<double>(s.n0),
                             a.z_two_sided());
  return make_interval(raw.lower, raw.upper, Method::CLT, a.alpha);
}

Interval wilson_interval(const StoppedSummary& s, const Level& a) {
  double z = a.z_two_sided();
  auto raw = detail::wilson_raw(static_cast<double>(s.trials),
                                static_cast<double>(s.n0), z * z);
  return make_interval(raw.lower, raw.upper, Method::Wilson, a.alpha);
}

Interval exact_interval(const StoppedSummary& s, const Level& a) {
  double n0 = static_cast<double>(s.n0);
  double failures = static_cast<double>(s.trials - s.n0);
  // With M = N - n0 ~ NB(n0, p): P(M <= m) = I_p(n0, m+1). Upper solves
  // P(M <= N-n0-1) = 1 - alpha/2, lower solves P(M <= N-n0) = alpha/2.
  double upper = (s.trials == s.n0)
                     ? 1.0
                     : reg_inc_beta_inv(1.0 - a.alpha / 2.0, n0, failures);
  double lower = reg_inc_beta_inv(a.alpha / 2.0, n0, failures + 1.0);
  return make_interval(lower, upper, Method::Exact, a.alpha);
}

double chernoff_criterion(const StoppedSummary& s, const Level& a, double p) {
  double n0 = static_cast<double>(s.n0);
  double ph = s.p_hat();
  double h = n0 * (std::log(p) - std::log(ph)) - std::log(a.alpha / 2.0);
  if (s.trials > s.n0) {
    double tail = static_cast<double>(s.trials - s.n0);
    h += tail * (std::log1p(-p) - std::log1p(-ph));
  }
  return h;
}

Interval chernoff_interval(const StoppedSummary& s, const Level& a) {
  double ph = s.p_hat();
  auto h = [&](double p) { return chernoff_criterion(s, a, p); };

  // h is increasing on (0, p_hat], decreasing on [p_hat, 1), with
  // h(p_hat) = log(2/alpha) > 0; expand geometrically until both ends go
  // negative, then bisect.
  double h_ph = h(ph);
  double lo = ph, f_lo;
  do {
    lo *= 0.25;
    f_lo = h(lo);
  } while (f_lo >= 0.0 && lo > 1e-300);
  if (f_lo >= 0.0)
    throw convergence_error("chernoff_interval: lower bracket not found (unimodality violated?)");
  double lower = rootfind::bisect(h, rootfind::Bracket{lo, ph, f_lo, h_ph});

  double upper = 1.0;
  if (s.trials > s.n0) {
    double hi = ph, f_hi;
    do {
      hi = 1.0 - (1.0 - hi) * 0.25;
      f_hi = h(hi);
    } while (f_hi >= 0.0 && (1.0 - hi) > 1e-300);
    if (f_hi >= 0.0)
      throw convergence_error("chernoff_interval: upper bracket not found (unimodality violated?)");
    upper = rootfind::bisect(h, rootfind::Bracket{ph, hi, h_ph, f_hi});
  }
  return make_interval(lower, upper, Method::Chernoff, a.alpha);
}

Interval be_region_interval(const StoppedSummary& s, const Level& a,
                            const BEConfigTargeted& cfg) {
  double ph = s.p_hat();
  if (!(ph < 0.5))
    throw precondition_error(
        "be_region_interval: requires n0/N < 1/2 (got p_hat=" + std::to_string(ph) +
        ")");
  double n0 = static_cast<double>(s.n0);
  double N = static_cast<double>(s.trials);
  double thr = a.alpha / 2.0;
  double cp = cfg.c_prime;

  auto err = [&](double p) {
    double om = 1.0 - p;
    return cp / (om * std::sqrt(n0 * om));
  };
  auto g_left = [&](double p) {
    double arg = (N * p - n0) / std::sqrt(n0 * (1.0 - p));
    if (arg >= 0.0) return 0.5 + err(p);  // Phi >= 1/2 already clears any threshold
    return phi_term(arg) + err(p);
  };
  auto g_right = [&](double p) {
    double arg = (n0 - N * p) / std::sqrt(n0 * (1.0 - p));
    if (arg >= 0.0) return 0.5 + err(p);
    return phi_term(arg) + err(p);
  };

  double lower = rootfind::level_set_inf(g_left, 0.0, ph, thr);
  double upper = rootfind::level_set_sup(g_right, ph, 0.5, thr);
  return make_interval(lower, upper, Method::BE, a.alpha);
}

double be_relaxed_lambda(double n0, double alpha, double c_prime) {
  return 1.0 - 4.0 * std::sqrt(2.0) * c_prime / (std::sqrt(n0) * alpha);
}

Interval be_relaxed_interval(const StoppedSummary& s, const Level& a,
                             const BEConfigTargeted& cfg) {
  double min_n0 = cfg.min_n0(a.alpha);
  double n0 = static_cast<double>(s.n0);
  if (!(n0 > min_n0))
    throw precondition_error("be_relaxed_interval: requires n0 > 32 C'^2/alpha^2 = " +
                             std::to_string(min_n0) + " (got n0=" +
                             std::to_string(s.n0) + ")");
  double N = static_cast<double>(s.trials);
  double lambda = be_relaxed_lambda(n0, a.alpha, cfg.c_prime);
  double z = normal_quantile(lambda * a.alpha / 2.0);
  double z2 = z * z;
  double disc = std::sqrt(4.0 * z2 * N * n0 * (N - n0) + z2 * z2 * n0 * n0);
  double base = 2.0 * N * n0 - z2 * n0;
  double denom = 2.0 * N * N;
  return make_interval((base - disc) / denom, (base + disc) / denom,
                       Method::BERelaxed, a.alpha);
}

Interval compute_interval(Method m, const StoppedSummary& s, const Level& a,
                          const BEConfigTargeted& cfg) {
  switch (m) {
    case Method::CLT: return clt_interval(s, a);
    case Method::Wilson: return wilson_interval(s, a);
    case Method::Exact: return exact_interval(s, a);
    case Method::Chernoff: return chernoff_interval(s, a);
    case Method::BE: return be_region_interval(s, a, cfg);
    case Method::BERelaxed: return be_relaxed_interval(s, a, cfg);
  }
  throw domain_error("compute_interval: unknown method");
}

}  // namespace rarecert
