#pragma once

#include <cstdint>

#include "intervals.hpp"

namespace rarecert {

// The five confidence intervals for a fixed number of Bernoulli trials,
// plus the normal-approximation error diagnostic.

Interval clt_interval(const TrialSummary& s, const Level& a);

Interval wilson_interval(const TrialSummary& s, const Level& a);

// Clopper-Pearson style inversion of the exact binomial distribution.
Interval exact_interval(const TrialSummary& s, const Level& a);

// Closed-form interval from multiplicative Chernoff bounds; valid for any n.
Interval chernoff_interval(const TrialSummary& s, const Level& a);

// Convex hull [0, sup] of the Berry-Esseen confidence region over (0, 1/2).
// Requires k/n < 1/2; the upper endpoint is 1/2 whenever the error term
// alone dominates the test level.
Interval be_region_interval(const TrialSummary& s, const Level& a, const BEConfig& cfg);

// Closed-form relaxation of the B-E region: a Wilson-form upper bound with
// z_{lambda*alpha/2}^2 in place of z_{1-alpha/2}^2, lower bound 0. Requires
// n > cfg.min_n().
Interval be_relaxed_upper(const TrialSummary& s, const Level& a, const BEConfig& cfg);

// C / sqrt(n p (1-p)): the Berry-Esseen budget for the normal approximation.
double be_error_bound(std::uint64_t n, double p, double c = kBerryEsseenC);

// Unclamped Chernoff endpoints as the defining formulas produce them.
struct ChernoffRaw {
  double lower;
  double upper;
};
ChernoffRaw chernoff_raw_bounds(double p_hat, double n, double alpha);

// Intermediate quantities of the relaxed B-E bound, exposed so the branch
// inequality U1 <= U2 can be audited directly.
struct BERelaxedParts {
  double c_tilde;
  double lambda;
  double z2;  // z_{lambda*alpha/2}^2
  bool z_star_branch;
  double u1;  // error-term branch bound
  double u2;  // Wilson-form branch bound (the reported upper endpoint)
};
BERelaxedParts be_relaxed_parts(const TrialSummary& s, const Level& a, const BEConfig& cfg);

// Dispatch by method tag.
Interval compute_interval(Method m, const TrialSummary& s, const Level& a,
                          const BEConfig& cfg);

}  // namespace rarecert
