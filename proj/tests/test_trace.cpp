#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "afftrace/constants.hpp"
#include "afftrace/corpus.hpp"
#include "afftrace/errors.hpp"
#include "afftrace/trace.hpp"

using namespace afftrace;

namespace {

// The n = 3, p = 2 member with lambda = delta = 1, B = I, x0 = 0:
// f = ((t+1)^2 + |x|^2)^{-1/2}. Closed forms (all hand-derived):
//   ||df/dt||_2^2 = ||grad_x f||_2^2 = pi/2
//   ||grad_xi f||_2 = sqrt(pi)/2 for every direction
//   Z_2 = 1/(2 sqrt(2)),  E = sqrt(pi/2),  alpha_f = 32/pi
//   int C_f^*(grad f) = 16,  K_{3,C_f} = sqrt(pi)/16
//   trace_norm = sqrt(pi),  vol(L_f) = 4,  K_{f,0} = ball of radius 8/sqrt(pi)
TestFunction classical_extremal() {
  ExtremalParams params;
  params.n = 3;
  params.p = 2.0;
  params.lambda = 1.0;
  params.delta = 1.0;
  params.B = Eigen::MatrixXd::Identity(2, 2);
  params.x0 = Eigen::VectorXd::Zero(2);
  return extremal(params);
}

TestFunction scaled_gaussian() {
  Eigen::VectorXd ax(2), c(2);
  ax << 0.8, 1.3;
  c << 0.2, -0.4;
  return gaussian_profile(3, 1.4, 0.9, 0.1, ax, c);
}

}  // namespace

TEST_CASE("extremal analytic derivatives match finite differences") {
  CHECK(max_derivative_mismatch(classical_extremal(), 50, 7) < 1e-8);
  Eigen::MatrixXd B(2, 2);
  B << 1.4, 0.3, -0.2, 0.8;
  ExtremalParams params;
  params.n = 3;
  params.p = 2.0;
  params.lambda = 2.0;
  params.delta = 0.7;
  params.B = B;
  params.x0 = (Eigen::VectorXd(2) << 0.3, -0.1).finished();
  params.gamma = 1.7;
  params.sign = -1;
  CHECK(max_derivative_mismatch(extremal(params), 50, 11) < 1e-8);
  CHECK(max_derivative_mismatch(scaled_gaussian(), 50, 13) < 1e-8);
  // fractional exponent pair
  ExtremalParams p15 = params;
  p15.p = 1.5;
  CHECK(max_derivative_mismatch(extremal(p15), 50, 17) < 1e-8);
}

TEST_CASE("extremal parameter validation") {
  ExtremalParams params;
  params.n = 3;
  params.p = 2.0;
  params.B = Eigen::MatrixXd::Zero(2, 2);  // singular
  params.x0 = Eigen::VectorXd::Zero(2);
  CHECK_THROWS_AS(extremal(params), std::domain_error);
  params.B = Eigen::MatrixXd::Identity(2, 2);
  params.delta = -1.0;
  CHECK_THROWS_AS(extremal(params), std::domain_error);
}

TEST_CASE("half-space norms of the equality profile") {
  const TestFunction f = classical_extremal();
  CHECK(dt_norm(f, 2.0) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-7));
  CHECK(tilde_grad_norm(f, 2.0) == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-7));
  CHECK(trace_norm(f, 2.0) == doctest::Approx(std::sqrt(M_PI)).epsilon(1e-8));
}

TEST_CASE("directional norms: isotropy for radial profiles") {
  const TestFunction f = classical_extremal();
  const double expected = 0.5 * std::sqrt(M_PI);
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k < 16; ++k) {
    const double a = 2.0 * M_PI * k / 16.0;
    Eigen::VectorXd xi(2);
    xi << std::cos(a), std::sin(a);
    const double v = directional_norm(f, xi, 2.0);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
    CHECK(v == doctest::Approx(expected).epsilon(1e-7));
  }
  CHECK(hi - lo < 1e-6);
}

TEST_CASE("directional norm vanishes orthogonally to a one-dimensional profile") {
  // x-dependence only through <x, e1>
  TestFunction f;
  f.n = 3;
  f.analytic = true;
  f.value = [](double t, const Eigen::VectorXd& x) {
    return std::exp(-t * t - x[0] * x[0]);
  };
  f.dt = [](double t, const Eigen::VectorXd& x) {
    return -2.0 * t * std::exp(-t * t - x[0] * x[0]);
  };
  f.grad_x = [](double t, const Eigen::VectorXd& x) {
    Eigen::VectorXd g(2);
    g << -2.0 * x[0] * std::exp(-t * t - x[0] * x[0]), 0.0;
    return g;
  };
  f.decay.power = 1e3;
  f.decay.scale = 1.0;
  Eigen::VectorXd e2(2);
  e2 << 0.0, 1.0;
  CHECK(directional_norm(f, e2, 2.0) == doctest::Approx(0.0).epsilon(1e-12));
  // the affine energy is undefined for such degenerate profiles
  CHECK_THROWS_AS(affine_energy(f, 2.0), DegeneracyError);
}

TEST_CASE("profile sweep agrees with the standalone directional integrals") {
  const TestFunction f = scaled_gaussian();
  const GradientProfile prof = gradient_profile(f, 2.0);
  CHECK(std::pow(prof.dt_p, 0.5) == doctest::Approx(dt_norm(f, 2.0)).epsilon(1e-7));
  CHECK(std::pow(prof.tilde_p, 0.5) ==
        doctest::Approx(tilde_grad_norm(f, 2.0)).epsilon(1e-7));
  for (std::size_t j = 0; j < prof.xi.size(); j += 41) {
    const double direct = directional_norm(f, prof.xi[j], 2.0);
    CHECK(std::pow(prof.dir_p[j], 0.5) == doctest::Approx(direct).epsilon(1e-6));
  }
}

TEST_CASE("affine energy of the equality profile") {
  const TestFunction f = classical_extremal();
  const EnergyData e = affine_energy(f, 2.0);
  CHECK(e.Zp == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-7));
  CHECK(e.value == doctest::Approx(std::sqrt(M_PI / 2.0)).epsilon(1e-7));
  CHECK(e.vol_Lf == doctest::Approx(4.0).epsilon(1e-6));
  // Holder equality for radial profiles: E = ||grad_x f||
  CHECK(e.value == doctest::Approx(tilde_grad_norm(f, 2.0)).epsilon(1e-6));
}

TEST_CASE("energy never exceeds the full gradient norm") {
  for (const auto& f : {classical_extremal(), scaled_gaussian()}) {
    const EnergyData e = affine_energy(f, 2.0);
    CHECK(e.value <= tilde_grad_norm(f, 2.0) + 1e-6);
  }
}

TEST_CASE("the attached convex data of the equality profile") {
  const TestFunction f = classical_extremal();
  const CfData cf = build_cf(f, 2.0);
  CHECK(cf.alpha == doctest::Approx(32.0 / M_PI).epsilon(1e-6));
  CHECK(cf.Zp == doctest::Approx(1.0 / (2.0 * std::sqrt(2.0))).epsilon(1e-7));

  // D_f^* is isotropic: a multiple of |x|^2 with coefficient 16/pi.
  Eigen::VectorXd x(2);
  double lo = 1e300, hi = 0.0;
  for (int k = 0; k < 12; ++k) {
    const double a = 2.0 * M_PI * k / 12.0;
    x << std::cos(a), std::sin(a);
    const double v = cf.Dstar.value(x);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK((hi - lo) / lo < 1e-6);
  CHECK(lo == doctest::Approx(16.0 / M_PI).epsilon(1e-6));

  // C_f^* = (16/pi) |y|^2 on R^3; its Legendre transform is (pi/64) |y|^2.
  Eigen::VectorXd y(3);
  y << 0.5, -0.3, 0.8;
  CHECK(cf.Cstar.value(y) ==
        doctest::Approx(16.0 / M_PI * y.squaredNorm()).epsilon(1e-6));
  CHECK(cf.C.value(y) == doctest::Approx(M_PI / 64.0 * y.squaredNorm()).epsilon(1e-5));

  // K_{f,0} is the ball of radius 8/sqrt(pi); L_f the ball of radius 2/sqrt(pi).
  for (std::size_t i = 0; i < cf.K0.grid.size(); i += 37) {
    CHECK(cf.K0.grid_radial[i] == doctest::Approx(8.0 / std::sqrt(M_PI)).epsilon(1e-5));
  }
  for (std::size_t i = 0; i < cf.Lf.grid.size(); i += 37) {
    CHECK(cf.Lf.grid_radial[i] == doctest::Approx(2.0 / std::sqrt(M_PI)).epsilon(1e-6));
  }
}

TEST_CASE("slice scaling law of the attached body") {
  // K_{f,t} = (1 - alpha^{1-q}/q |t|^q)^{1/q} K_{f,0}: radial of K_f at height t
  // against the scaled t = 0 slice.
  const TestFunction f = classical_extremal();
  const CfData cf = build_cf(f, 2.0);
  const double q = 2.0;
  const double tmax = std::pow(q, 1.0 / q) * std::pow(cf.alpha, 0.5);
  Eigen::VectorXd x(2);
  x << 0.6, -0.8;  // unit direction in the slice
  const double r0 = std::pow(cf.Df.value(x), -1.0 / q);
  for (int k = 1; k <= 10; ++k) {
    const double t = 0.09 * k * tmax;
    const double shrink = std::pow(1.0 - std::pow(cf.alpha, 1.0 - q) / q * std::pow(t, q),
                                   1.0 / q);
    // the gauge of K_f at (t, x direction): C_f(t, r x)^{1/q} = 1 at the boundary
    // radius r(t); solve with the product decomposition and compare.
    const double expected = shrink * r0;
    // direct root of C_f(t, r x) = 1 in r by bisection on the full Legendre route
    double lo = 0.0, hi = 2.0 * r0;
    for (int it = 0; it < 60; ++it) {
      const double mid = 0.5 * (lo + hi);
      Eigen::VectorXd y(3);
      y << t, mid * x[0], mid * x[1];
      (cf.C.value(y) <= 1.0 ? lo : hi) = mid;
    }
    CHECK(lo == doctest::Approx(expected).epsilon(1e-4));
  }
}

TEST_CASE("product decomposition of the Legendre transform") {
  // C_f(t, x) = alpha^{1-q}/q |t|^q + D_f(x) pointwise.
  const TestFunction f = classical_extremal();
  const CfData cf = build_cf(f, 2.0);
  const double q = 2.0;
  Rng rng(3);
  for (int k = 0; k < 25; ++k) {
    Eigen::VectorXd y(3);
    for (int i = 0; i < 3; ++i) y[i] = rng.uniform(-1.2, 1.2);
    const double lhs = cf.C.value(y);
    const double rhs =
        std::pow(cf.alpha, 1.0 - q) / q * std::pow(std::abs(y[0]), q) +
        cf.Df.value(y.tail(2));
    CHECK(lhs == doctest::Approx(rhs).epsilon(2e-5));
  }
}

TEST_CASE("two-route optimal constant") {
  // C = |y|^2 at n = 3, p = 2: K = 4/sqrt(pi), and K/4 recovers the classical
  // constant through C* = |x|^2/4.
  const ConstantRoutes routes = sharp_constant_routes(make_power_convex(3, 2.0), 2.0);
  CHECK(routes.body_moment == doctest::Approx(4.0 / std::sqrt(M_PI)).epsilon(1e-8));
  CHECK(routes.spherical == doctest::Approx(4.0 / std::sqrt(M_PI)).epsilon(1e-8));
  CHECK(routes.body_moment / 4.0 == doctest::Approx(sharp_K(3)).epsilon(1e-8));

  Rng rng(5);
  for (int k = 0; k < 3; ++k) {
    const HomogeneousConvex c = make_quadratic_convex(rng.random_spd(3, 0.5, 2.0));
    const ConstantRoutes r = sharp_constant_routes(c, 2.0);
    CHECK(r.body_moment == doctest::Approx(r.spherical).epsilon(1e-6));
  }
  const ConstantRoutes r3 = sharp_constant_routes(make_power_convex(3, 3.0), 1.5);
  CHECK(r3.body_moment == doctest::Approx(r3.spherical).epsilon(1e-6));
}

TEST_CASE("equality in the affine inequality on the equality family") {
  TraceOptions opt;
  const VerificationReport rep = verify_affine(classical_extremal(), 2.0, opt);
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(5e-4));
  CHECK(rep.pass);
  CHECK(rep.equality);

  // anisotropic member: lambda = 2, delta = 1, B = diag(1, 3)
  ExtremalParams params;
  params.n = 3;
  params.p = 2.0;
  params.lambda = 2.0;
  params.delta = 1.0;
  params.B = Eigen::Vector2d(1.0, 3.0).asDiagonal();
  params.x0 = Eigen::VectorXd::Zero(2);
  const VerificationReport rep2 = verify_affine(extremal(params), 2.0, opt);
  CHECK(rep2.ratio == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(rep2.equality);
}

TEST_CASE("strict inequality on generic bumps") {
  const VerificationReport rep = verify_affine(scaled_gaussian(), 2.0);
  CHECK(rep.ratio < 1.0 - 1e-3);
  CHECK(rep.pass);
  CHECK_FALSE(rep.equality);
}

TEST_CASE("amplitude invariance of the affine ratio") {
  const TestFunction f = scaled_gaussian();
  TestFunction scaled = f;
  auto v = f.value;
  auto dtf = f.dt;
  auto gx = f.grad_x;
  const double gamma = 3.7;
  scaled.value = [v, gamma](double t, const Eigen::VectorXd& x) { return gamma * v(t, x); };
  scaled.dt = [dtf, gamma](double t, const Eigen::VectorXd& x) { return gamma * dtf(t, x); };
  scaled.grad_x = [gx, gamma](double t, const Eigen::VectorXd& x) {
    return Eigen::VectorXd(gamma * gx(t, x));
  };
  const double r0 = verify_affine(f, 2.0).ratio;
  const double r1 = verify_affine(scaled, 2.0).ratio;
  CHECK(std::abs(r1 - r0) / r0 < 1e-12);
}

TEST_CASE("pullback by half-space affine frames") {
  const TestFunction f = classical_extremal();
  AffineFrame id{1.0, Eigen::MatrixXd::Identity(2, 2)};
  const TestFunction same = gl_pullback(f, id);
  Eigen::VectorXd x(2);
  x << 0.4, -0.9;
  CHECK(same.value(0.7, x) == doctest::Approx(f.value(0.7, x)).epsilon(1e-14));

  // rotation: every norm is unchanged
  const double c = std::cos(0.7), s = std::sin(0.7);
  Eigen::MatrixXd R(2, 2);
  R << c, -s, s, c;
  AffineFrame rot{1.0, R};
  const TestFunction g = gl_pullback(scaled_gaussian(), rot);
  CHECK(dt_norm(g, 2.0) == doctest::Approx(dt_norm(scaled_gaussian(), 2.0)).epsilon(1e-6));
  CHECK(trace_norm(g, 2.0) ==
        doctest::Approx(trace_norm(scaled_gaussian(), 2.0)).epsilon(1e-6));
  const double e0 = affine_energy(scaled_gaussian(), 2.0).value;
  CHECK(affine_energy(g, 2.0).value == doctest::Approx(e0).epsilon(1e-4));

  // ratio invariance under a shearing frame
  AffineFrame frame{1.7, (Eigen::MatrixXd(2, 2) << 1.2, 0.5, 0.0, 0.8).finished()};
  const double r0 = verify_affine(f, 2.0).ratio;
  const double r1 = verify_affine(gl_pullback(f, frame), 2.0).ratio;
  CHECK(std::abs(r1 - r0) < 1e-4);

  CHECK_THROWS_AS(gl_pullback(f, AffineFrame{-1.0, R}), std::domain_error);
}

TEST_CASE("pullback of an extremal is the composed extremal") {
  ExtremalParams params;
  params.n = 3;
  params.p = 2.0;
  params.lambda = 1.3;
  params.delta = 0.9;
  params.B = (Eigen::MatrixXd(2, 2) << 1.1, 0.2, -0.1, 0.9).finished();
  params.x0 = Eigen::VectorXd::Zero(2);
  const TestFunction f = extremal(params);
  AffineFrame frame{2.0, (Eigen::MatrixXd(2, 2) << 0.9, 0.3, 0.2, 1.2).finished()};
  const TestFunction pulled = gl_pullback(f, frame);

  ExtremalParams composed = params;
  composed.lambda = params.lambda * frame.lambda;
  composed.B = params.B * frame.B;
  const TestFunction direct = extremal(composed);
  Rng rng(9);
  Eigen::VectorXd x(2);
  for (int k = 0; k < 20; ++k) {
    const double t = rng.uniform(0.0, 2.0);
    x << rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5);
    CHECK(pulled.value(t, x) == doctest::Approx(direct.value(t, x)).epsilon(1e-12));
  }
}

TEST_CASE("gauge trace ratio at the Euclidean gauge") {
  const HomogeneousConvex c = make_power_convex(3, 2.0);
  const TestFunction f = gauge_extremal(c, 3, 2.0, 1.0, 1.0, Eigen::VectorXd::Zero(2));
  CHECK(gauge_trace_ratio(f, c, 2.0) == doctest::Approx(1.0).epsilon(5e-3));
  CHECK(gauge_trace_ratio(scaled_gaussian(), c, 2.0) < 1.0);
  // amplitude invariance
  const TestFunction f3 = gauge_extremal(c, 3, 2.0, 3.0, 1.0, Eigen::VectorXd::Zero(2));
  CHECK(gauge_trace_ratio(f3, c, 2.0) ==
        doctest::Approx(gauge_trace_ratio(f, c, 2.0)).epsilon(1e-9));
}

TEST_CASE("centroid-slice relation and volume identity") {
  const CentroidSliceResult radial = centroid_slice_check(classical_extremal(), 2.0);
  CHECK(radial.max_radial_discrepancy < 1e-4);
  CHECK(radial.volume_rel_error < 1e-3);

  ExtremalParams params;
  params.n = 3;
  params.p = 2.0;
  params.lambda = 1.2;
  params.delta = 1.0;
  params.B = Eigen::Vector2d(1.0, 2.0).asDiagonal();
  params.x0 = Eigen::VectorXd::Zero(2);
  const CentroidSliceResult aniso = centroid_slice_check(extremal(params), 2.0);
  CHECK(aniso.max_radial_discrepancy < 1e-3);
  CHECK(aniso.volume_rel_error < 1e-3);
}

TEST_CASE("proof chain: equality throughout on a radial member") {
  const VerificationReport rep = proof_chain(classical_extremal(), 2.0);
  REQUIRE(rep.links.size() == 5);
  for (const auto& link : rep.links) {
    CAPTURE(link.name);
    CHECK(link.ratio == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(link.pass);
  }
  CHECK(rep.pass);
  CHECK(rep.equality);
}

TEST_CASE("proof chain: strict centroid step off ellipsoidal gradient bodies") {
  // At p = 2 the gradient body is always an ellipsoid; p = 1.5 with an
  // anisotropic profile makes the centroid step strictly lossy.
  Eigen::VectorXd ax(2), c(2);
  ax << 0.4, 2.1;
  c << 0.0, 0.0;
  const TestFunction f = gaussian_profile(3, 1.0, 0.9, 0.0, ax, c);
  const VerificationReport rep = proof_chain(f, 1.5);
  double centroid_ratio = 1.0;
  for (const auto& link : rep.links) {
    if (link.name == "centroid-step") centroid_ratio = link.ratio;
    if (link.name == "cf-identity" || link.name == "constant-slice-form") {
      CHECK(link.ratio == doctest::Approx(1.0).epsilon(5e-3));
    }
  }
  CHECK(centroid_ratio < 1.0 - 1e-5);
  CHECK(rep.pass);
}

TEST_CASE("young form: equality on the radial family, strict on bumps") {
  TraceOptions opt;
  for (const double p : {2.0, 2.5}) {
    ExtremalParams params;
    params.n = 3;
    params.p = p;
    params.lambda = 1.0;
    params.delta = 1.0;
    params.B = Eigen::MatrixXd::Identity(2, 2);
    params.x0 = Eigen::VectorXd::Zero(2);
    const VerificationReport rep = young_form(extremal(params), p, opt);
    REQUIRE(rep.links.size() == 2);
    CHECK(rep.links[0].ratio == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(rep.links[1].ratio == doctest::Approx(1.0).epsilon(5e-3));
    CHECK(rep.equality);
  }
  const VerificationReport bump = young_form(scaled_gaussian(), 2.0, opt);
  CHECK(bump.links[0].ratio < 1.0);
  CHECK(bump.pass);
  CHECK_FALSE(bump.equality);
}

TEST_CASE("young form at p = 2 is consistent with the arithmetic-geometric bound") {
  const TestFunction f = scaled_gaussian();
  const GradientProfile prof = gradient_profile(f, 2.0);
  const double energy = norm_c(2, 2.0) * prof.Zp();
  const double dtn = std::sqrt(prof.dt_p);
  const Dimensions dims(3, 2.0);
  const ConstantSet cs = constant_set(dims);
  CHECK(2.0 * cs.K_n * energy * dtn <= cs.d2 * (energy * energy + dtn * dtn) + 1e-12);
}

TEST_CASE("appendix chain at rational and fractional exponents") {
  CHECK(appendix_chain(Dimensions(3, 2.0)) < 1e-12);
  CHECK(appendix_chain(Dimensions(5, 2.0)) < 1e-12);
  CHECK(appendix_chain(Dimensions(4, 2.5)) < 1e-11);
}

TEST_CASE("decay validation") {
  TestFunction f = classical_extremal();
  f.decay.power = 0.4;  // claims almost no decay
  CHECK_THROWS_AS(dt_norm(f, 2.0), std::domain_error);
}

TEST_CASE("n = 4 smoke: product rules and the equality case") {
  TraceOptions opt;
  opt.orders = HalfspaceOrders{64, 128};

  // Gaussian with a closed-form dt moment: int |df/dt|^2 over R^4_+.
  // f = exp(-t^2 - |x|^2): int_0^inf 4 t^2 e^{-2t^2} dt = sqrt(2 pi)/4,
  // int_{R^3} e^{-2|x|^2} dx = (pi/2)^{3/2}.
  const TestFunction g = gaussian_profile(4, 1.0, 1.0, 0.0,
                                          Eigen::VectorXd::Constant(3, 1.0),
                                          Eigen::VectorXd::Zero(3));
  const double expect =
      std::sqrt(std::sqrt(2.0 * M_PI) / 4.0 * std::pow(M_PI / 2.0, 1.5));
  CHECK(dt_norm(g, 2.0, opt) == doctest::Approx(expect).epsilon(1e-6));

  ExtremalParams params;
  params.n = 4;
  params.p = 2.0;
  params.lambda = 1.3;
  params.delta = 1.0;
  params.B = (Eigen::MatrixXd(3, 3) << 1.2, 0.1, 0.0, 0.1, 0.9, 0.0, 0.0, 0.0, 1.1)
                 .finished();
  params.x0 = Eigen::VectorXd::Zero(3);
  const VerificationReport rep = verify_affine(extremal(params), 2.0, opt);
  CHECK(rep.ratio == doctest::Approx(1.0).epsilon(5e-3));
}
