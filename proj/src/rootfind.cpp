#include "rootfind.hpp"

#include <cmath>

namespace rarecert::rootfind {

namespace {

constexpr int kGridIntervals = 4096;

bool converged(double lo, double hi, const Tolerance& tol) {
  double width = hi - lo;
  double scale = std::max(std::abs(lo), std::abs(hi));
  return width <= std::max(tol.abs_x, tol.rel_x * scale);
}

}  // namespace

Bracket Bracket::make(const std::function<double(double)>& f, double lo, double hi) {
  return Bracket{lo, hi, f(lo), f(hi)};
}

double bisect(const std::function<double(double)>& f, Bracket bracket,
              const Tolerance& tol) {
  if (!(bracket.lo < bracket.hi))
    throw bracket_error("bisect: bracket requires lo < hi");
  if (std::isnan(bracket.f_lo) || std::isnan(bracket.f_hi))
    throw bracket_error("bisect: NaN at a bracket endpoint");
  if (bracket.f_lo == 0.0) return bracket.lo;
  if (bracket.f_hi == 0.0) return bracket.hi;
  if ((bracket.f_lo > 0.0) == (bracket.f_hi > 0.0))
    throw bracket_error("bisect: no sign change across the bracket");

  double lo = bracket.lo, hi = bracket.hi;
  double f_lo = bracket.f_lo;
  for (int used = 0; used < tol.max_iter; ++used) {
    if (converged(lo, hi, tol)) return 0.5 * (lo + hi);
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) return mid;  // interval exhausted in doubles
    double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid > 0.0) == (f_lo > 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  if (converged(lo, hi, tol)) return 0.5 * (lo + hi);
  throw convergence_error("bisect: max_iter exhausted before reaching tolerance");
}

namespace {

// Refine the boundary between an inside point (g >= threshold) and an
// adjacent outside point; returns the inside end of the final bracket.
double refine_boundary(const std::function<double(double)>& g, double inside,
                       double outside, double threshold, const Tolerance& tol) {
  for (int i = 0; i < tol.max_iter; ++i) {
    double lo = std::min(inside, outside), hi = std::max(inside, outside);
    if (converged(lo, hi, tol)) break;
    double mid = 0.5 * (inside + outside);
    if (mid == inside || mid == outside) break;
    if (g(mid) >= threshold) {
      inside = mid;
    } else {
      outside = mid;
    }
  }
  return inside;
}

}  // namespace

double level_set_sup(const std::function<double(double)>& g, double lo, double hi,
                     double threshold, const Tolerance& tol) {
  if (!(lo < hi)) throw bracket_error("level_set_sup: requires lo < hi");
  double step = (hi - lo) / kGridIntervals;
  // Scan downward; the first satisfied point from the top marks the last
  // sign change of the full grid.
  for (int i = kGridIntervals; i >= 0; --i) {
    double p = (i == 0) ? lo : (i == kGridIntervals ? hi : lo + i * step);
    if (g(p) >= threshold) {
      if (i == kGridIntervals) return hi;
      double next = (i + 1 == kGridIntervals) ? hi : lo + (i + 1) * step;
      return refine_boundary(g, p, next, threshold, tol);
    }
  }
  return lo;
}

double level_set_inf(const std::function<double(double)>& g, double lo, double hi,
                     double threshold, const Tolerance& tol) {
  if (!(lo < hi)) throw bracket_error("level_set_inf: requires lo < hi");
  double step = (hi - lo) / kGridIntervals;
  for (int i = 0; i <= kGridIntervals; ++i) {
    double p = (i == 0) ? lo : (i == kGridIntervals ? hi : lo + i * step);
    if (g(p) >= threshold) {
      if (i == 0) return lo;
      double prev = (i - 1 == 0) ? lo : lo + (i - 1) * step;
      return refine_boundary(g, p, prev, threshold, tol);
    }
  }
  return hi;
}

}  // namespace rarecert::rootfind
