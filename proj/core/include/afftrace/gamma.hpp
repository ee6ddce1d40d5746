#pragma once

namespace afftrace {

// Natural log of the Gamma function for x > 0, Lanczos approximation
// (g = 607/128, 15 terms). Relative accuracy is better than 1e-13 across
// the argument range used by the constants in this library (0, 50).
double log_gamma(double x);

// Gamma(x) for x > 0.
double gamma_fn(double x);

}  // namespace afftrace
