#pragma once

#include <functional>

#include "errors.hpp"

namespace rarecert::rootfind {

// A sign-changing interval for bisection.
struct Bracket {
  double lo;
  double hi;
  double f_lo;
  double f_hi;

  static Bracket make(const std::function<double(double)>& f, double lo, double hi);
};

struct Tolerance {
  double abs_x = 1e-15;
  double rel_x = 1e-12;
  int max_iter = 200;
};

// Bisection on a validated bracket. Stops once the interval width drops below
// max(abs_x, rel_x*|x|); throws bracket_error when lo/hi do not straddle a
// sign change and convergence_error when max_iter is exhausted first.
double bisect(const std::function<double(double)>& f, Bracket bracket,
              const Tolerance& tol = Tolerance{});

// sup{ p in [lo,hi] : g(p) >= threshold }, computed by a coarse grid scan
// (>= 4096 points, ties at the threshold count as inside) followed by
// bisection refinement of the last sign change. Returns hi when the final
// grid point satisfies the criterion and lo when no grid point does.
double level_set_sup(const std::function<double(double)>& g, double lo, double hi,
                     double threshold, const Tolerance& tol = Tolerance{});

// inf{ p in [lo,hi] : g(p) >= threshold } with the mirrored conventions:
// lo when the first grid point satisfies the criterion, hi when none does.
double level_set_inf(const std::function<double(double)>& g, double lo, double hi,
                     double threshold, const Tolerance& tol = Tolerance{});

}  // namespace rarecert::rootfind
