#pragma once

#include <cmath>

namespace rarecert::detail {

struct RawBounds {
  double lower;
  double upper;
};

// CLT bounds: p_hat -/+ z * sqrt(p_hat(1-p_hat)/n), written in counts so the
// fixed-n and targeted-stopping callers produce bit-identical values.
inline RawBounds clt_raw(double n, double k, double z) {
  double ph = k / n;
  double half = z * std::sqrt(k * (n - k) / (n * n * n));
  return {ph - half, ph + half};
}

// Wilson bounds: (1 + 2k/z^2 -/+ sqrt(1 + 4k(n-k)/(z^2 n))) / (2(1 + n/z^2)).
inline RawBounds wilson_raw(double n, double k, double z2) {
  double base = 1.0 + 2.0 * k / z2;
  double disc = std::sqrt(1.0 + 4.0 * k * (n - k) / (z2 * n));
  double denom = 2.0 * (1.0 + n / z2);
  return {(base - disc) / denom, (base + disc) / denom};
}

}  // namespace rarecert::detail
