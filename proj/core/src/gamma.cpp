#include "afftrace/gamma.hpp"

#include <cmath>
#include <stdexcept>

namespace afftrace {

namespace {

constexpr double kG = 607.0 / 128.0;

constexpr double kCoef[15] = {
    0.99999999999999709182,     57.156235665862923517,
    -59.597960355475491248,     14.136097974741747174,
    -0.49191381609762019978,    0.33994649984811888699e-4,
    0.46523628927048575665e-4,  -0.98374475304879564677e-4,
    0.15808870322491248884e-3,  -0.21026444172410488319e-3,
    0.21743961811521264320e-3,  -0.16431810653676389022e-3,
    0.84418223983852743293e-4,  -0.26190838401581408670e-4,
    0.36899182659531622704e-5};

constexpr double kHalfLogTwoPi = 0.91893853320467274178;  // log(2*pi)/2

double lanczos_log_gamma(double x) {
  // Valid for x >= 0.5.
  const double z = x - 1.0;
  double sum = kCoef[0];
  for (int i = 1; i < 15; ++i) sum += kCoef[i] / (z + i);
  const double base = z + kG + 0.5;
  return kHalfLogTwoPi + (z + 0.5) * std::log(base) - base + std::log(sum);
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("log_gamma: argument must be positive");
  if (x < 0.5) {
    // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
    return std::log(M_PI / std::sin(M_PI * x)) - lanczos_log_gamma(1.0 - x);
  }
  return lanczos_log_gamma(x);
}

double gamma_fn(double x) { return std::exp(log_gamma(x)); }

}  // namespace afftrace
