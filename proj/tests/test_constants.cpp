#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "afftrace/constants.hpp"
#include "afftrace/gamma.hpp"
#include "afftrace/trace.hpp"

using namespace afftrace;

TEST_CASE("omega closed form") {
  CHECK(omega(2.0) == doctest::Approx(M_PI).epsilon(1e-14));
  CHECK(omega(3.0) == doctest::Approx(4.0 * M_PI / 3.0).epsilon(1e-14));
  CHECK(omega(1.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(omega(0.0), std::domain_error);
  CHECK_THROWS_AS(omega(-2.0), std::domain_error);
}

TEST_CASE("sharp classical constant") {
  CHECK(sharp_K(3) == doctest::Approx(1.0 / std::sqrt(M_PI)).epsilon(1e-14));
  // Hand evaluation with Gamma(4) = 6, Gamma(3/2) = sqrt(pi)/2.
  const double k4 = std::pow(4.0 / std::sqrt(M_PI), 1.0 / 3.0) / (2.0 * std::sqrt(M_PI));
  CHECK(sharp_K(4) == doctest::Approx(k4).epsilon(1e-14));
  CHECK(sharp_K(4) == doctest::Approx(0.3700184841536781).epsilon(1e-12));
  // Independent long-double evaluation of the printed closed form at n = 10.
  const long double n = 10.0L;
  const long double oracle =
      1.0L / (sqrtl(M_PIl) * (n - 2.0L)) *
      powl(expl(lgammal(n) - lgammal((n - 1.0L) / 2.0L)) / (n - 1.0L), 1.0L / (n - 1.0L));
  CHECK(sharp_K(10) == doctest::Approx(static_cast<double>(oracle)).epsilon(1e-13));
  CHECK_THROWS_AS(sharp_K(2), std::domain_error);
}

TEST_CASE("dimensions validation") {
  CHECK_THROWS_AS(Dimensions(2, 1.5), std::domain_error);
  CHECK_THROWS_AS(Dimensions(3, 1.0), std::domain_error);
  CHECK_THROWS_AS(Dimensions(3, 3.0), std::domain_error);
  const Dimensions d(5, 2.5);
  CHECK(std::abs(1.0 / d.p + 1.0 / d.q - 1.0) < 1e-14);
}

TEST_CASE("affine constant reduces to the classical one at p = 2") {
  for (int n = 3; n <= 12; ++n) {
    const double k = sharp_K(n);
    CHECK(std::abs(sharp_A(Dimensions(n, 2.0)) - k) / k < 1e-12);
  }
}

TEST_CASE("affine constant against a long-double evaluation") {
  const long double n = 4.0L, p = 1.5L;
  const long double oracle =
      powl(M_PIl, -(p - 1.0L) / 2.0L) * powl(powl(p - 1.0L, (p - 1.0L) / p) / (n - p), p - 1.0L) *
      powl(expl(lgammal(n) + lgammal((n + 1.0L) / 2.0L) - lgammal((n - 1.0L) / p) -
                lgammal((n * (p - 1.0L) + 1.0L) / p)) /
               (n - 1.0L),
           (p - 1.0L) / (n - 1.0L));
  CHECK(sharp_A(Dimensions(4, 1.5)) ==
        doctest::Approx(static_cast<double>(oracle)).epsilon(1e-13));
}

TEST_CASE("energy normalization constant") {
  CHECK(norm_c(2, 2.0) == doctest::Approx(2.0 * std::sqrt(M_PI)).epsilon(1e-13));
  const double c3 = std::pow(3.0, 5.0 / 6.0) * std::pow(4.0 * M_PI / 3.0, 1.0 / 3.0);
  CHECK(norm_c(3, 2.0) == doctest::Approx(c3).epsilon(1e-13));
  for (int m = 2; m <= 10; ++m) {
    const double rhs = std::pow(m, (m + 2.0) / (2.0 * m)) * std::pow(omega(m), 1.0 / m);
    CHECK(norm_c(m, 2.0) == doctest::Approx(rhs).epsilon(1e-13));
  }
  CHECK_THROWS_AS(norm_c(1, 2.0), std::domain_error);
}

TEST_CASE("centroid normalization constant") {
  CHECK(norm_a(2, 2.0) == doctest::Approx(0.25).epsilon(1e-13));
  CHECK(norm_a(3, 2.0) ==
        doctest::Approx(omega(5.0) / (omega(2.0) * omega(3.0) * omega(1.0))).epsilon(1e-13));
  CHECK(norm_a(2, 4.0) ==
        doctest::Approx(omega(6.0) / (omega(2.0) * omega(2.0) * omega(3.0))).epsilon(1e-13));
}

TEST_CASE("ell equals the grid-maximized value") {
  // Oracle first: maximize t^{1/q} - t on a fine grid.
  for (const double q : {2.0, 3.0, 1.5}) {
    double best = 0.0;
    for (int i = 0; i <= 2000000; ++i) {
      const double t = 1.4 * i / 2000000.0;
      best = std::max(best, std::pow(t, 1.0 / q) - t);
    }
    CHECK(ell(q) == doctest::Approx(best).epsilon(1e-9));
  }
  CHECK(ell(2.0) == doctest::Approx(0.25).epsilon(1e-14));
  // Closed form at q = 3 (p = 3/2): 3^{-1/2} * 2/3.
  CHECK(ell(3.0) == doctest::Approx(2.0 / (3.0 * std::sqrt(3.0))).epsilon(1e-13));
  CHECK_THROWS_AS(ell(1.0), std::domain_error);
}

TEST_CASE("beta moment closed form") {
  CHECK(beta_moment(Dimensions(3, 2.0)) == doctest::Approx(0.25).epsilon(1e-13));
  const double expect42 = 0.5 * gamma_fn(1.5) * gamma_fn(2.5) / gamma_fn(4.0);
  CHECK(beta_moment(Dimensions(4, 2.0)) == doctest::Approx(expect42).epsilon(1e-13));
  // Quadrature oracle at a non-integer exponent pair.
  const Dimensions d(3, 1.5);
  const double q = d.q;
  double numeric = 0.0;
  {
    // composite Simpson on a fine grid, singular factor vanishes at t = 1
    const int steps = 200000;
    auto f = [&](double t) {
      return std::pow(t, q * 3 - q - 3) *
             std::pow(std::max(0.0, 1.0 - std::pow(t, q)), (3 - 1.0) / q);
    };
    for (int i = 0; i < steps; ++i) {
      const double a = static_cast<double>(i) / steps;
      const double b = static_cast<double>(i + 1) / steps;
      numeric += (b - a) / 6.0 * (f(a) + 4.0 * f(0.5 * (a + b)) + f(b));
    }
  }
  CHECK(beta_moment(d) == doctest::Approx(numeric).epsilon(1e-10));
}

TEST_CASE("constant set identities") {
  const Dimensions d(4, 2.5);
  const ConstantSet cs = constant_set(d);
  CHECK(cs.d1 == doctest::Approx(d.p * cs.A_np).epsilon(1e-14));
  CHECK(cs.d2 ==
        doctest::Approx(cs.d1 / (std::pow(d.p, 1.0 / d.p) * std::pow(d.q, 1.0 / d.q)))
            .epsilon(1e-14));
  CHECK(cs.K_n > 0);
  CHECK(cs.A_np > 0);
  CHECK(cs.c_np > 0);
  CHECK(cs.a_np > 0);
  CHECK(cs.ell_q > 0);
}

TEST_CASE("appendix chain reproduces d1 = p A_np") {
  for (int n : {3, 4, 5, 8}) {
    for (double p : {1.5, 2.0, 2.5, 3.0}) {
      if (!(p < n)) continue;
      CHECK(appendix_chain(Dimensions(n, p)) < 1e-11);
    }
  }
}
