#include "afftrace/constants.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "afftrace/gamma.hpp"

namespace afftrace {

namespace {
constexpr double kLogPi = 1.1447298858494001741;
}

Dimensions::Dimensions(int n_, double p_) : n(n_), p(p_), q(0.0) {
  if (n < 3) throw std::domain_error("Dimensions: n must be >= 3");
  if (!(p > 1.0) || !(p < static_cast<double>(n)))
    throw std::domain_error("Dimensions: p must lie in (1, n), got p=" + std::to_string(p_));
  q = p / (p - 1.0);
}

double omega(double s) {
  if (!(s > 0.0)) throw std::domain_error("omega: s must be positive");
  return std::exp(0.5 * s * kLogPi - log_gamma(0.5 * s + 1.0));
}

double sharp_K(int n) {
  if (n < 3) throw std::domain_error("sharp_K: n must be >= 3");
  const double nn = n;
  const double log_val = -0.5 * kLogPi - std::log(nn - 2.0) +
                         (log_gamma(nn) - std::log(nn - 1.0) - log_gamma(0.5 * (nn - 1.0))) /
                             (nn - 1.0);
  return std::exp(log_val);
}

double sharp_A(const Dimensions& dims) {
  const double n = dims.n;
  const double p = dims.p;
  const double log_val =
      -0.5 * (p - 1.0) * kLogPi +
      (p - 1.0) * ((p - 1.0) / p * std::log(p - 1.0) - std::log(n - p)) +
      (p - 1.0) / (n - 1.0) *
          (log_gamma(n) + log_gamma(0.5 * (n + 1.0)) - std::log(n - 1.0) -
           log_gamma((n - 1.0) / p) - log_gamma((n * (p - 1.0) + 1.0) / p));
  return std::exp(log_val);
}

double norm_c(int m, double p) {
  if (m < 2) throw std::domain_error("norm_c: m must be >= 2");
  if (!(p > 1.0)) throw std::domain_error("norm_c: p must be > 1");
  const double mm = m;
  const double log_momega = std::log(mm) + 0.5 * mm * kLogPi - log_gamma(0.5 * mm + 1.0);
  const double log_val = log_momega / mm +
                         (log_momega + std::log(omega(p - 1.0)) - std::log(2.0) -
                          std::log(omega(mm + p - 2.0))) /
                             p;
  return std::exp(log_val);
}

double norm_a(int m, double p) {
  if (m < 2) throw std::domain_error("norm_a: m must be >= 2");
  if (!(p > 1.0)) throw std::domain_error("norm_a: p must be > 1");
  const double mm = m;
  return std::exp(std::log(omega(mm + p)) - std::log(omega(2.0)) - std::log(omega(mm)) -
                  std::log(omega(p - 1.0)));
}

double ell(double q) {
  if (!(q > 1.0)) throw std::domain_error("ell: q must be > 1");
  const double p = q / (q - 1.0);
  return std::pow(q, -p / q) / p;
}

double beta_moment(const Dimensions& dims) {
  const double n = dims.n;
  const double p = dims.p;
  const double q = dims.q;
  return std::exp(-std::log(q) + log_gamma((n - 1.0) / p) + log_gamma((n - 1.0) / q + 1.0) -
                  log_gamma(n));
}

ConstantSet constant_set(const Dimensions& dims) {
  ConstantSet cs;
  cs.K_n = sharp_K(dims.n);
  cs.A_np = sharp_A(dims);
  cs.c_np = norm_c(dims.n, dims.p);
  cs.a_np = norm_a(dims.n, dims.p);
  cs.d1 = dims.p * cs.A_np;
  cs.d2 = cs.d1 / (std::pow(dims.p, 1.0 / dims.p) * std::pow(dims.q, 1.0 / dims.q));
  cs.ell_q = ell(dims.q);
  return cs;
}

}  // namespace afftrace
