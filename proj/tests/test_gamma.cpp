#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "afftrace/gamma.hpp"

using afftrace::gamma_fn;
using afftrace::log_gamma;

TEST_CASE("known gamma values") {
  CHECK(gamma_fn(1.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(2.0) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_fn(3.0) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(gamma_fn(4.0) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(gamma_fn(0.5) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-14));
  CHECK(gamma_fn(1.5) == doctest::Approx(0.5 * std::sqrt(M_PI)).epsilon(1e-14));
}

TEST_CASE("matches the long-double libm oracle on (0, 50)") {
  // lgammal is an independent implementation path with extra precision.
  double worst = 0.0;
  for (int i = 1; i <= 5000; ++i) {
    const double x = 0.01 * i;
    const double mine = log_gamma(x);
    const double oracle = static_cast<double>(lgammal(static_cast<long double>(x)));
    const double scale = std::max(1.0, std::abs(oracle));
    worst = std::max(worst, std::abs(mine - oracle) / scale);
  }
  CHECK(worst < 1e-13);
}

TEST_CASE("reflection region stays accurate") {
  for (const double x : {0.01, 0.1, 0.25, 0.49}) {
    const double oracle = static_cast<double>(lgammal(static_cast<long double>(x)));
    CHECK(log_gamma(x) == doctest::Approx(oracle).epsilon(1e-13));
  }
}

TEST_CASE("rejects non-positive arguments") {
  CHECK_THROWS_AS(log_gamma(0.0), std::domain_error);
  CHECK_THROWS_AS(log_gamma(-1.3), std::domain_error);
}
