#include "intervals.hpp"

#include <algorithm>
#include <cmath>

#include "specfun.hpp"

namespace rarecert {

const char* method_name(Method m) {
  switch (m) {
    case Method::CLT: return "CLT";
    case Method::Wilson: return "Wilson";
    case Method::Exact: return "Exact";
    case Method::Chernoff: return "Chernoff";
    case Method::BE: return "BE";
    case Method::BERelaxed: return "BE-relaxed";
  }
  return "?";
}

std::optional<Method> method_from_name(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "clt") return Method::CLT;
  if (s == "wilson") return Method::Wilson;
  if (s == "exact") return Method::Exact;
  if (s == "chernoff") return Method::Chernoff;
  if (s == "be" || s == "be-region" || s == "be_region") return Method::BE;
  if (s == "be-relaxed" || s == "be_relaxed" || s == "berelaxed" || s == "relaxed")
    return Method::BERelaxed;
  return std::nullopt;
}

double Level::z_two_sided() const {
  return specfun::normal_quantile(1.0 - alpha / 2.0);
}

Interval make_interval(double raw_lower, double raw_upper, Method m, double alpha) {
  Interval iv;
  iv.raw_lower = raw_lower;
  iv.raw_upper = raw_upper;
  iv.lower = std::clamp(raw_lower, 0.0, 1.0);
  iv.upper = std::clamp(raw_upper, 0.0, 1.0);
  iv.clamped = (iv.lower != raw_lower) || (iv.upper != raw_upper);
  iv.method = m;
  iv.alpha = alpha;
  return iv;
}

BEConfig BEConfig::make(const Level& level, double c) {
  if (!(c > 0.0)) throw domain_error("BEConfig: Berry-Esseen constant must be positive");
  BEConfig cfg;
  cfg.alpha = level.alpha;
  cfg.c = c;
  // z_star^2 = 8C^2/alpha^2, double the side-condition minimum 4C^2/(u^2 alpha^2)
  // at u -> 1, so 4C^2/(u^2 alpha^2) < z_star^2 holds by construction.
  cfg.z_star = 2.0 * std::sqrt(2.0) * c / level.alpha;
  // 1 - u = 2*Phi(-z_star)/alpha, kept in its exp/log-safe complement form.
  cfg.u_complement =
      2.0 * std::exp(specfun::log_normal_tail(cfg.z_star)) / level.alpha;
  return cfg;
}

double BEConfig::min_n() const {
  double u_val = 1.0 - u_complement;
  double first = 4.0 * c / (u_val * alpha);
  first *= first;
  double z2 = z_star * z_star;
  double denom = z2 * u_val * u_val * alpha * alpha - 4.0 * c * c;
  double second = 12.0 * z2 * c * c / denom;
  return std::max(first, second);
}

BEConfigTargeted BEConfigTargeted::make(double c) {
  if (!(c > 0.0))
    throw domain_error("BEConfigTargeted: Berry-Esseen constant must be positive");
  BEConfigTargeted cfg;
  cfg.c_prime = 16.0 * c;
  return cfg;
}

}  // namespace rarecert
