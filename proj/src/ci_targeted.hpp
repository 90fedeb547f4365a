#pragma once

#include "intervals.hpp"

namespace rarecert {

// The five confidence intervals when sampling stops at n0 successes. CLT and
// Wilson reuse the fixed-n formulas at (n=N, k=n0) and agree with them
// exactly; the rest invert the negative-binomial distribution of N.

Interval clt_interval(const StoppedSummary& s, const Level& a);

Interval wilson_interval(const StoppedSummary& s, const Level& a);

Interval exact_interval(const StoppedSummary& s, const Level& a);

// Region {p : p^n0 (1-p)^(N-n0) >= (alpha/2) p_hat^n0 (1-p_hat)^(N-n0)},
// an interval around p_hat solved by bisection on its log form h(p).
// h uses the 0*log(0) = 0 convention so N = n0 degenerates cleanly.
Interval chernoff_interval(const StoppedSummary& s, const Level& a);

// log criterion behind the targeted Chernoff region; h(p_hat) = log(2/alpha).
double chernoff_criterion(const StoppedSummary& s, const Level& a, double p);

// Convex hull of the targeted Berry-Esseen region over (0, 1/2). Requires
// n0/N < 1/2. Both endpoints go trivial (0 and 1/2) for small n0, where the
// error term C'/sqrt(n0 (1-p)^3) dominates the test level on its own.
Interval be_region_interval(const StoppedSummary& s, const Level& a,
                            const BEConfigTargeted& cfg);

// Closed-form relaxation, valid for n0 > 32 C'^2 / alpha^2: both endpoints
// from the quadratic with z_{lambda*alpha/2}, lambda = 1 - 4 sqrt(2) C'/(sqrt(n0) alpha).
Interval be_relaxed_interval(const StoppedSummary& s, const Level& a,
                             const BEConfigTargeted& cfg);

double be_relaxed_lambda(double n0, double alpha, double c_prime);

// Dispatch by method tag.
Interval compute_interval(Method m, const StoppedSummary& s, const Level& a,
                          const BEConfigTargeted& cfg);

}  // namespace rarecert
