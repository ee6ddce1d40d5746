#pragma once

#include <cmath>

namespace afftrace::detail {

// |x|^p with fast paths for the exponents the suite actually sweeps.
inline double pow_abs(double x, double p) {
  const double a = std::abs(x);
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 1.5) return a * std::sqrt(a);
  if (p == 2.5) return a * a * std::sqrt(a);
  return std::pow(a, p);
}

}  // namespace afftrace::detail
