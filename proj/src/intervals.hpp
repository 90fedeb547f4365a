#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "errors.hpp"

namespace rarecert {

// Berry-Esseen universal constant. Fixed at this value; sharper published
// constants exist but are deliberately not substituted.
inline constexpr double kBerryEsseenC = 0.4748;

enum class Method { CLT, Wilson, Exact, Chernoff, BE, BERelaxed };

const char* method_name(Method m);
std::optional<Method> method_from_name(std::string_view name);

// Outcome of a fixed-sample-size Bernoulli experiment: n trials, k successes.
struct TrialSummary {
  std::uint64_t n = 0;
  std::uint64_t k = 0;

  TrialSummary(std::uint64_t n_, std::uint64_t k_) : n(n_), k(k_) {
    if (n == 0) throw domain_error("TrialSummary: n must be >= 1");
    if (k > n) throw domain_error("TrialSummary: k must satisfy 0 <= k <= n");
  }
  double p_hat() const { return static_cast<double>(k) / static_cast<double>(n); }
};

// Outcome of a targeted-stopping experiment: sampling ran until n0 successes,
// consuming N trials in total.
struct StoppedSummary {
  std::uint64_t n0 = 0;
  std::uint64_t trials = 0;  // N

  StoppedSummary(std::uint64_t n0_, std::uint64_t trials_) : n0(n0_), trials(trials_) {
    if (n0 == 0) throw domain_error("StoppedSummary: n0 must be >= 1");
    if (trials < n0) throw domain_error("StoppedSummary: N must satisfy N >= n0");
  }
  double p_hat() const { return static_cast<double>(n0) / static_cast<double>(trials); }
};

// Confidence level 1 - alpha.
struct Level {
  double alpha;

  explicit Level(double a) : alpha(a) {
    if (!(a > 0.0 && a < 1.0)) throw domain_error("Level: alpha must lie in (0,1)");
  }
  // z_{1-alpha/2}, the two-sided normal critical value.
  double z_two_sided() const;
};

struct Interval {
  double lower = 0.0;      // reported endpoints, clamped to [0,1]
  double upper = 1.0;
  double raw_lower = 0.0;  // endpoints as the defining formulas produce them
  double raw_upper = 1.0;
  Method method = Method::CLT;
  double alpha = 0.0;
  bool clamped = false;

  bool covers(double p) const { return lower <= p && p <= upper; }
};

Interval make_interval(double raw_lower, double raw_upper, Method m, double alpha);

// Parameters of the Berry-Esseen bounds in the standard (fixed-n) setting.
// u is pinned by choosing z_star = 2*sqrt(2)*C/alpha and defining
// u = 1 - 2*Phi(-z_star)/alpha. Since Phi(-z_star) can be ~1e-159, u is
// indistinguishable from 1 in binary64 and is stored via its complement.
struct BEConfig {
  double alpha;
  double c;             // Berry-Esseen constant
  double z_star;        // z_{(1-u)*alpha/2}, by construction
  double u_complement;  // 1 - u = 2*Phi(-z_star)/alpha

  static BEConfig make(const Level& level, double c = kBerryEsseenC);

  double u() const { return 1.0 - u_complement; }
  // Smallest n beyond which the relaxed bound is valid:
  // max((4C/(u*alpha))^2, 12*z*^2*C^2/(z*^2*u^2*alpha^2 - 4C^2)).
  double min_n() const;
};

// Parameters of the targeted-stopping Berry-Esseen bounds.
struct BEConfigTargeted {
  double c_prime = 16.0 * kBerryEsseenC;

  static BEConfigTargeted make(double c = kBerryEsseenC);

  // Relaxed CI requires n0 > 32*C'^2/alpha^2.
  double min_n0(double alpha) const {
    return 32.0 * c_prime * c_prime / (alpha * alpha);
  }
};

}  // namespace rarecert
