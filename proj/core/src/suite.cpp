#include "afftrace/suite.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "afftrace/body_io.hpp"
#include "afftrace/constants.hpp"
#include "afftrace/convex.hpp"
#include "afftrace/corpus.hpp"
#include "afftrace/errors.hpp"
#include "afftrace/gamma.hpp"
#include "afftrace/trace.hpp"

namespace afftrace {

namespace {

struct Task {
  std::string name;
  std::function<VerificationReport()> run;
};

double wall_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

VerificationReport bound_report(const std::string& check, const std::string& anchor,
                                const std::string& inputs, double observed, double bound) {
  VerificationReport r;
  r.check = check;
  r.anchor = anchor;
  r.inputs_digest = digest(inputs);
  r.lhs = observed;
  r.rhs = bound;
  r.ratio = bound != 0.0 ? observed / bound : observed;
  r.tolerance = bound;
  r.pass = observed <= bound;
  return r;
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int depth = 40) {
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  std::function<double(double, double, double, double, double, double, int)> rec =
      [&](double a_, double b_, double fa_, double fb_, double fm_, double whole,
          int d) -> double {
    const double m_ = 0.5 * (a_ + b_);
    const double lm = 0.5 * (a_ + m_), rm = 0.5 * (m_ + b_);
    const double flm = f(lm), frm = f(rm);
    const double left = (m_ - a_) / 6.0 * (fa_ + 4.0 * flm + fm_);
    const double right = (b_ - m_) / 6.0 * (fm_ + 4.0 * frm + fb_);
    if (d <= 0 || std::abs(left + right - whole) < 15.0 * tol)
      return left + right + (left + right - whole) / 15.0;
    return rec(a_, m_, fa_, fm_, flm, left, d - 1) +
           rec(m_, b_, fm_, fb_, frm, right, d - 1);
  };
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return rec(a, b, fa, fb, fm, whole, depth);
}

// ---- constants ----

void constants_tasks(const SuiteConfig&, std::vector<Task>& tasks) {
  tasks.push_back({"constants/affine-reduces-to-classical", [] {
    double worst = 0.0;
    for (int n = 3; n <= 12; ++n) {
      const double k = sharp_K(n);
      worst = std::max(worst, std::abs(sharp_A(Dimensions(n, 2.0)) - k) / k);
    }
    return bound_report("constants/affine-reduces-to-classical", "constants/p2-reduction",
                        "n=3..12", worst, 1e-12);
  }});
  tasks.push_back({"constants/appendix-d1", [] {
    double worst = 0.0;
    for (int n : {3, 4, 5, 8})
      for (double p : {1.5, 2.0, 2.5, 3.0})
        if (p < n) worst = std::max(worst, appendix_chain(Dimensions(n, p)));
    return bound_report("constants/appendix-d1", "constants/d1-chain", "grid", worst, 1e-11);
  }});
  tasks.push_back({"constants/beta-closed-form", [] {
    double worst = 0.0;
    for (int n : {3, 4, 5, 8})
      for (double p : {1.5, 2.0, 2.5, 3.0}) {
        if (!(p < n)) continue;
        const Dimensions dims(n, p);
        const double q = dims.q;
        const double numeric = adaptive_simpson(
            [&](double t) {
              return std::pow(t, q * n - q - n) *
                     std::pow(std::max(0.0, 1.0 - std::pow(t, q)), (n - 1.0) / q);
            },
            0.0, 1.0, 1e-14);
        worst = std::max(worst, std::abs(numeric - beta_moment(dims)) / numeric);
      }
    return bound_report("constants/beta-closed-form", "constants/beta-integral", "grid",
                        worst, 1e-10);
  }});
  tasks.push_back({"constants/energy-norm-p2", [] {
    double worst = 0.0;
    for (int m = 2; m <= 10; ++m) {
      const double lhs = norm_c(m, 2.0);
      const double rhs = std::pow(m, (m + 2.0) / (2.0 * m)) * std::pow(omega(m), 1.0 / m);
      worst = std::max(worst, std::abs(lhs - rhs) / rhs);
    }
    return bound_report("constants/energy-norm-p2", "constants/c-p2-identity", "m=2..10",
                        worst, 1e-13);
  }});
  tasks.push_back({"constants/ell-grid-max", [] {
    double worst = 0.0;
    for (double q : {1.5, 2.0, 3.0}) {
      double best = 0.0;
      const int steps = 400000;
      for (int i = 0; i <= steps; ++i) {
        const double t = 1.4 * i / steps;
        best = std::max(best, std::pow(t, 1.0 / q) - t);
      }
      worst = std::max(worst, std::abs(best - ell(q)));
    }
    return bound_report("constants/ell-grid-max", "constants/ell-max", "q grid", worst, 1e-9);
  }});
}

// ---- quadrature ----

void quadrature_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  tasks.push_back({"quadrature/sphere-exactness", [] {
    double worst = 0.0;
    const QuadratureRule s2 = sphere_rule(2, 32);
    worst = std::max(worst, std::abs(s2.integrate([](const Eigen::VectorXd&) { return 1.0; }) -
                                     2.0 * M_PI));
    const QuadratureRule s3 = sphere_rule(3, 16);
    worst = std::max(worst, std::abs(s3.integrate([](const Eigen::VectorXd&) { return 1.0; }) -
                                     4.0 * M_PI));
    worst = std::max(
        worst, std::abs(s3.integrate([](const Eigen::VectorXd& th) { return th[0] * th[0]; }) -
                        4.0 * M_PI / 3.0));
    for (const auto& rule : {s2, s3}) {
      worst = std::max(worst,
                       std::abs(rule.integrate([](const Eigen::VectorXd& th) { return th[0]; })));
      worst = std::max(worst, std::abs(rule.integrate([](const Eigen::VectorXd& th) {
        return th[0] * th[0] * th[0];
      })));
    }
    return bound_report("quadrature/sphere-exactness", "quadrature/sphere-rules", "s2,s3",
                        worst, 1e-10);
  }});
  tasks.push_back({"quadrature/hemisphere-moments", [] {
    double worst = 0.0;
    const QuadratureRule h3 = hemisphere_rule(3, 32);
    worst = std::max(worst, std::abs(h3.integrate([](const Eigen::VectorXd&) { return 1.0; }) -
                                     2.0 * M_PI));
    worst = std::max(
        worst,
        std::abs(h3.integrate([](const Eigen::VectorXd& th) { return th[0]; }) - M_PI));
    const QuadratureRule h2 = hemisphere_rule(2, 48);
    worst = std::max(
        worst, std::abs(h2.integrate([](const Eigen::VectorXd& th) { return th[0]; }) - 2.0));
    return bound_report("quadrature/hemisphere-moments", "quadrature/hemisphere-rules",
                        "h2,h3", worst, 1e-10);
  }});
  tasks.push_back({"quadrature/halfline-laguerre", [] {
    const QuadratureRule rule = halfline_rule(24);
    double worst = 0.0;
    double factorial = 1.0;
    for (int k = 0; k <= 8; ++k) {
      if (k > 0) factorial *= k;
      const double got = rule.integrate([k](const Eigen::VectorXd& t) {
        return std::exp(-t[0]) * std::pow(t[0], k);
      });
      worst = std::max(worst, std::abs(got - factorial) / factorial);
    }
    return bound_report("quadrature/halfline-laguerre", "quadrature/halfline-rule", "k=0..8",
                        worst, 1e-12);
  }});
  tasks.push_back({"quadrature/halfspace-known-integrals", [config] {
    double worst = 0.0;
    {
      // Unit-mass Gaussian bump.
      const double mass_t = 0.5 * std::sqrt(M_PI) * (1.0 + std::erf(0.2));
      const double amp = 1.0 / (mass_t * M_PI);
      const HalfspaceIntegral r = integrate_halfspace(
          [amp](double t, const Eigen::VectorXd& x) {
            return amp * std::exp(-(t - 0.2) * (t - 0.2) - x.squaredNorm());
          },
          3, DecayProfile{100.0, 1.0}, config.orders);
      worst = std::max(worst, std::abs(r.value - 1.0));
    }
    {
      const HalfspaceIntegral r = integrate_halfspace(
          [](double t, const Eigen::VectorXd& x) {
            const double g = (t + 1.0) * (t + 1.0) + x.squaredNorm();
            return 1.0 / (g * g);
          },
          3, DecayProfile{4.0, 1.0}, config.orders);
      worst = std::max(worst, std::abs(r.value - M_PI));
    }
    {
      const HalfspaceIntegral r = integrate_halfspace(
          [](double, const Eigen::VectorXd&) { return 0.0; }, 3, DecayProfile{10.0, 1.0},
          config.orders);
      worst = std::max(worst, std::abs(r.value));
    }
    return bound_report("quadrature/halfspace-known-integrals", "quadrature/halfspace",
                        "bump,poisson,zero", worst, 1e-6);
  }});
  tasks.push_back({"quadrature/body-moments", [] {
    double worst = 0.0;
    worst = std::max(worst,
                     std::abs(moment_over_body_plus(ball_body(3, 1.0), 1.0) - M_PI / 4.0));
    worst = std::max(worst,
                     std::abs(moment_over_body_plus(ball_body(3, 2.0), 1.0) - 4.0 * M_PI));
    worst = std::max(worst, std::abs(moment_over_body_plus(ball_body(3, 1.0), 0.0) -
                                     0.5 * omega(3.0)));
    return bound_report("quadrature/body-moments", "quadrature/body-moment", "balls", worst,
                        1e-8);
  }});
  tasks.push_back({"quadrature/self-convergence", [config] {
    // Doubling the orders moves nothing by more than the declared tolerance.
    Corpus corpus = make_corpus(3, 2.0, config.seed, CorpusCounts{1, 1, 1, 1});
    double worst = 0.0;
    HalfspaceOrders doubled{config.orders.radial * 2, config.orders.angular * 2};
    TraceOptions base_opt;
    base_opt.orders = config.orders;
    TraceOptions fine_opt;
    fine_opt.orders = doubled;
    fine_opt.time_order = 128;
    for (const auto& cf : corpus.functions) {
      if (cf.kind == FunctionKind::RadialBump) continue;
      const GradientProfile a = gradient_profile(cf.f, 2.0, base_opt);
      const GradientProfile b = gradient_profile(cf.f, 2.0, fine_opt);
      worst = std::max(worst, std::abs(a.dt_p - b.dt_p) / b.dt_p);
      worst = std::max(worst, std::abs(a.Zp() - b.Zp()) / b.Zp());
      const double ta = trace_norm(cf.f, 2.0, base_opt);
      const double tb = trace_norm(cf.f, 2.0, fine_opt);
      worst = std::max(worst, std::abs(ta - tb) / tb);
    }
    return bound_report("quadrature/self-convergence", "quadrature/order-doubling",
                        "corpus sample", worst, 1e-6);
  }});
  tasks.push_back({"quadrature/decay-flag", [] {
    const HalfspaceIntegral r = integrate_halfspace(
        [](double t, const Eigen::VectorXd& x) {
          return std::pow(1.0 + t * t + x.squaredNorm(), -1.2);
        },
        3, DecayProfile{2.4, 1.0}, HalfspaceOrders{32, 32});
    VerificationReport rep = bound_report("quadrature/decay-flag", "quadrature/tail-check",
                                          "slow integrand", r.decay_ok ? 1.0 : 0.0, 0.5);
    return rep;
  }});
}

// ---- convex bodies ----

void convex_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  tasks.push_back({"convex/volumes", [] {
    double worst = 0.0;
    worst = std::max(worst, std::abs(volume(ball_body(2, 1.0)) - M_PI));
    worst = std::max(worst, std::abs(volume(ball_body(3, 1.0)) - 4.0 * M_PI / 3.0));
    worst = std::max(worst,
                     std::abs(volume(box_body(Eigen::VectorXd::Constant(2, 1.0))) - 4.0));
    return bound_report("convex/volumes", "convex/volume-formula", "ball2,ball3,square",
                        worst, 1e-6);
  }});
  tasks.push_back({"convex/polar-scaling", [config] {
    Rng rng(config.seed ^ 0x11);
    const Eigen::MatrixXd M = rng.random_spd(2, 0.5, 2.0);
    double worst = 0.0;
    for (double lam : {0.5, 2.0, 7.0}) {
      const StarBody scaled = make_star_body(
          2,
          [M, lam](const Eigen::VectorXd& u) { return lam / std::sqrt(u.dot(M * u)); },
          true);
      const StarBody lhs = polar(scaled);
      const StarBody rhs = polar(ellipsoid_body(Ellipsoid{M}));
      for (std::size_t i = 0; i < lhs.grid.size(); ++i) {
        const double a = lhs.grid_radial[i];
        const double b = rhs.grid_radial[i] / lam;
        worst = std::max(worst, std::abs(a - b) / b);
      }
    }
    return bound_report("convex/polar-scaling", "convex/polar-homogeneity", "ellipsoid",
                        worst, 1e-10);
  }});
  tasks.push_back({"convex/polar-ellipsoid", [config] {
    Rng rng(config.seed ^ 0x12);
    const Eigen::MatrixXd M = rng.random_spd(2, 0.4, 2.2);
    const Eigen::MatrixXd Minv = M.inverse();
    const StarBody pol = polar(ellipsoid_body(Ellipsoid{M}));
    double worst = 0.0;
    for (std::size_t i = 0; i < pol.grid.size(); ++i) {
      const double expect = 1.0 / std::sqrt(pol.grid[i].dot(Minv * pol.grid[i]));
      worst = std::max(worst, std::abs(pol.grid_radial[i] - expect) / expect);
    }
    return bound_report("convex/polar-ellipsoid", "convex/polar-closed-form", "spd", worst,
                        1e-8);
  }});
  tasks.push_back({"convex/centroid-ball-fixed", [] {
    double worst = 0.0;
    for (double p : {1.5, 2.0, 3.0}) {
      const StarBody gamma = centroid_body(ball_body(2, 1.0), p);
      for (double r : gamma.grid_radial) worst = std::max(worst, std::abs(r - 1.0));
    }
    const StarBody gamma3 = centroid_body(ball_body(3, 1.0), 2.0);
    for (double r : gamma3.grid_radial) worst = std::max(worst, std::abs(r - 1.0));
    return bound_report("convex/centroid-ball-fixed", "convex/centroid-normalization",
                        "balls", worst, 1e-8);
  }});
  tasks.push_back({"convex/centroid-square", [] {
    const StarBody square = box_body(Eigen::VectorXd::Constant(2, 1.0));
    const StarBody gamma = centroid_body(square, 2.0);
    const double radius = 2.0 / std::sqrt(3.0);
    double worst = 0.0;
    for (double r : gamma.grid_radial) worst = std::max(worst, std::abs(r - radius));
    VerificationReport rep = bound_report("convex/centroid-square",
                                          "convex/centroid-square", "square", worst, 1e-6);
    const double vol = volume(gamma);
    rep.links.push_back({"volume", vol, 4.0 * M_PI / 3.0, vol / (4.0 * M_PI / 3.0), 1e-5,
                         std::abs(vol - 4.0 * M_PI / 3.0) <= 1e-5});
    rep.pass = rep.pass && rep.links.back().pass;
    return rep;
  }});
  {
    const Corpus corpus = make_corpus(3, 2.0, config.seed);
    for (const auto& nb : corpus.bodies) {
      const bool ellipsoidal =
          nb.name.rfind("ball", 0) == 0 || nb.name.rfind("ellipsoid", 0) == 0;
      tasks.push_back({"convex/centroid-volume-bound/" + nb.name, [nb, ellipsoidal] {
        double min_gap = 1e9;
        double worst_abs = 0.0;
        for (double p : {1.5, 2.0, 3.0}) {
          const double gap = bp_gap(nb.body, p);
          min_gap = std::min(min_gap, gap);
          worst_abs = std::max(worst_abs, std::abs(gap));
        }
        VerificationReport rep =
            bound_report("convex/centroid-volume-bound/" + nb.name,
                         "convex/centroid-inequality", nb.name, -min_gap, 1e-6);
        if (ellipsoidal) {
          rep.links.push_back({"ellipsoid-equality", worst_abs, 1e-5, worst_abs / 1e-5,
                               1e-5, worst_abs <= 1e-5});
          rep.pass = rep.pass && rep.links.back().pass;
        }
        return rep;
      }});
    }
  }
  tasks.push_back({"convex/centroid-equivariance", [config] {
    Rng rng(config.seed ^ 0x13);
    double worst = 0.0;
    for (int k = 0; k < 3; ++k) {
      const Eigen::MatrixXd T = rng.random_invertible(2, 0.6, 1.8);
      const Eigen::MatrixXd M = (T * T.transpose()).inverse();  // T(ball) = {x: <Mx,x> <= 1}
      const StarBody body = ellipsoid_body(Ellipsoid{M});
      for (double p : {1.5, 2.0}) {
        const double ratio = volume(centroid_body(body, p)) / volume(body);
        worst = std::max(worst, std::abs(ratio - 1.0));
      }
    }
    return bound_report("convex/centroid-equivariance", "convex/centroid-affine",
                        "T(ball)", worst, 1e-6);
  }});
  tasks.push_back({"convex/conjugate-polar-scaling", [config] {
    Rng rng(config.seed ^ 0x14);
    double worst_smooth = 0.0;
    worst_smooth = std::max(worst_smooth, polar_legendre_check(make_power_convex(3, 2.0)));
    worst_smooth = std::max(worst_smooth, polar_legendre_check(make_power_convex(2, 2.0)));
    worst_smooth = std::max(
        worst_smooth, polar_legendre_check(make_quadratic_convex(rng.random_spd(3, 0.5, 2.0))));
    VerificationReport rep =
        bound_report("convex/conjugate-polar-scaling", "convex/conjugate-level-sets",
                     "ball,ellipsoid", worst_smooth, 1e-6);
    // Sampled anisotropic gauge power.
    std::vector<Eigen::VectorXd> dirs;
    std::vector<double> wts;
    for (int j = 0; j < 4; ++j) {
      const double a = rng.uniform(0.0, M_PI);
      dirs.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
      wts.push_back(rng.uniform(0.3, 1.2));
    }
    HomogeneousConvex aniso;
    aniso.dim = 2;
    aniso.degree = 2.0;
    aniso.value = [dirs, wts](const Eigen::VectorXd& y) {
      double s = 0.0;
      for (std::size_t j = 0; j < dirs.size(); ++j) {
        const double d = y.dot(dirs[j]);
        s += wts[j] * d * d * d * d;
      }
      return std::sqrt(s);
    };
    const double worst_aniso = polar_legendre_check(aniso);
    rep.links.push_back({"anisotropic", worst_aniso, 1e-4, worst_aniso / 1e-4, 1e-4,
                         worst_aniso <= 1e-4});
    rep.pass = rep.pass && rep.links.back().pass;
    return rep;
  }});
}

// ---- optimal constants and theorem checks ----

void optimal_constant_tasks(const SuiteConfig& config, std::vector<Task>& tasks) {
  tasks.push_back({"optimal-constant/two-routes", [config] {
    Rng rng(config.seed ^ 0x21);
    double worst = 0.0;
    std::vector<HomogeneousConvex> cases;
    cases.push_back(make_power_convex(3, 2.0));
    for (int k = 0; k < 3; ++k)
      cases.push_back(make_quadratic_convex(rng.random_spd(3, 0.5, 2.0)));
    cases.push_back(make_power_convex(3, 3.0));
    for (const auto& c : cases) {
      const double p = c.degree / (c.degree - 1.0);
      const ConstantRoutes routes = sharp_constant_routes(c, p);
      worst = std::max(worst,
                       std::abs(routes.body_moment - routes.spherical) / routes.spherical);
    }
    return bound_report("optimal-constant/two-routes", "optimal-constant/route-agreement", "C family", worst,
                        1e-6);
  }});
  tasks.push_back({"optimal-constant/euclidean-values", [] {
    const ConstantRoutes routes = sharp_constant_routes(make_power_convex(3, 2.0), 2.0);
    const double expected = 4.0 / std::sqrt(M_PI);
    VerificationReport rep =
        bound_report("optimal-constant/euclidean-values", "optimal-constant/euclidean-case", "|y|^2",
                     std::abs(routes.body_moment - expected), 1e-6);
    const double k3 = sharp_K(3);
    rep.links.push_back({"links-classical", routes.body_moment / 4.0, k3,
                         routes.body_moment / 4.0 / k3, 1e-6,
                         std::abs(routes.body_moment / 4.0 - k3) <= 1e-6});
    rep.pass = rep.pass && rep.links.back().pass;
    return rep;
  }});
  tasks.push_back({"optimal-constant/separable-gives-d2", [] {
    // K_{n,C} for C = conjugate of |t|^p + |x|^p equals the Young constant.
    double worst = 0.0;
    for (double p : {2.0, 2.5}) {
      const Dimensions dims(3, p);
      const double q = dims.q;
      const double beta = std::pow(p, -q / p) / q;
      HomogeneousConvex c;
      c.dim = 3;
      c.degree = q;
      c.value = [beta, q](const Eigen::VectorXd& y) {
        return beta * (std::pow(std::abs(y[0]), q) + std::pow(y.tail(2).norm(), q));
      };
      const double got = sharp_constant_routes(c, p).body_moment;
      const double want = constant_set(dims).d2;
      worst = std::max(worst, std::abs(got - want) / want);
    }
    return bound_report("optimal-constant/separable-gives-d2", "optimal-constant/young-constant", "p=2,2.5",
                        worst, 1e-6);
  }});
}

void affine_tasks(const SuiteConfig& config, std::vector<Task>& tasks,
                  const std::pair<int, double>& dims) {
  const int n = dims.first;
  const double p = dims.second;
  TraceOptions opt;
  opt.orders = config.orders;
  opt.tol_equality = config.tol_equality;

  const Corpus corpus = make_corpus(n, p, config.seed);
  for (const auto& cf : corpus.functions) {
    if (cf.kind == FunctionKind::Extremal) {
      tasks.push_back({"affine/equality-" + cf.name, [cf, p, opt] {
        VerificationReport rep = verify_affine(cf.f, p, opt);
        rep.check = "affine/equality-" + cf.name;
        rep.pass = rep.pass && rep.equality;
        return rep;
      }});
    } else if (cf.kind == FunctionKind::Bump) {
      tasks.push_back({"affine/strict-" + cf.name, [cf, p, opt] {
        VerificationReport rep = verify_affine(cf.f, p, opt);
        rep.check = "affine/strict-" + cf.name;
        rep.pass = rep.ratio < 1.0 - 1e-3;
        return rep;
      }});
    }
  }
  tasks.push_back({"affine/scale-invariance", [corpus, p, opt] {
    const TestFunction& f = corpus.functions.front().f;
    TestFunction scaled = f;
    const double gamma = 3.7;
    auto v = f.value;
    auto dt = f.dt;
    auto gx = f.grad_x;
    scaled.value = [v, gamma](double t, const Eigen::VectorXd& x) { return gamma * v(t, x); };
    scaled.dt = [dt, gamma](double t, const Eigen::VectorXd& x) { return gamma * dt(t, x); };
    scaled.grad_x = [gx, gamma](double t, const Eigen::VectorXd& x) {
      return Eigen::VectorXd(gamma * gx(t, x));
    };
    const double r0 = verify_affine(f, p, opt).ratio;
    const double r1 = verify_affine(scaled, p, opt).ratio;
    return bound_report("affine/scale-invariance", "trace/amplitude-invariance", "gamma=3.7",
                        std::abs(r1 - r0) / r0, 1e-12);
  }});
}

void invariance_tasks(const SuiteConfig& config, std::vector<Task>& tasks,
                      const std::pair<int, double>& dims) {
  const int n = dims.first;
  const double p = dims.second;
  TraceOptions opt;
  opt.orders = config.orders;
  const Corpus corpus = make_corpus(n, p, config.seed);
  int idx = 0;
  for (const auto& cf : corpus.functions) {
    if (cf.kind != FunctionKind::Extremal) continue;
    const std::uint64_t frame_seed = config.seed ^ (0x100ull + idx);
    tasks.push_back({"invariance/" + cf.name, [cf, n, p, opt, frame_seed] {
      Rng rng(frame_seed);
      const double base = verify_affine(cf.f, p, opt).ratio;
      double lo = base, hi = base;
      for (int k = 0; k < 20; ++k) {
        AffineFrame frame;
        frame.lambda = rng.uniform(0.5, 2.0);
        frame.B = rng.random_invertible(n - 1, 0.6, 2.2);
        const double r = verify_affine(gl_pullback(cf.f, frame), p, opt).ratio;
        lo = std::min(lo, r);
        hi = std::max(hi, r);
      }
      return bound_report("invariance/" + cf.name, "trace/frame-invariance",
                          cf.name + " 20 frames", hi - lo, 1e-4);
    }});
    ++idx;
  }
}

void ordering_tasks(const SuiteConfig& config, std::vector<Task>& tasks,
                    const std::pair<int, double>& dims) {
  const int n = dims.first;
  const double p = dims.second;
  TraceOptions opt;
  opt.orders = config.orders;
  opt.tol_equality = config.tol_equality;
  const Corpus corpus = make_corpus(n, p, config.seed);

  tasks.push_back({"ordering/energy-vs-gradient", [corpus, p, opt] {
    double worst = -1e9;
    double worst_radial = 0.0;
    for (const auto& cf : corpus.functions) {
      const GradientProfile prof = gradient_profile(cf.f, p, opt);
      const double energy = norm_c(prof.n - 1, p) * prof.Zp();
      const double tilde = std::pow(prof.tilde_p, 1.0 / p);
      worst = std::max(worst, energy - tilde);
      if (cf.kind == FunctionKind::RadialExtremal || cf.kind == FunctionKind::RadialBump)
        worst_radial = std::max(worst_radial, std::abs(energy / tilde - 1.0));
    }
    VerificationReport rep = bound_report("ordering/energy-vs-gradient",
                                          "trace/holder-bound", "corpus", worst, 1e-6);
    rep.links.push_back({"radial-equality", worst_radial, 1e-4, worst_radial / 1e-4, 1e-4,
                         worst_radial <= 1e-4});
    rep.pass = rep.pass && rep.links.back().pass;
    return rep;
  }});
  int idx = 0;
  for (const auto& cf : corpus.functions) {
    if (cf.kind != FunctionKind::RadialExtremal) continue;
    tasks.push_back({"ordering/young-" + cf.name, [cf, p, opt] {
      VerificationReport rep = young_form(cf.f, p, opt);
      rep.check = "ordering/young-" + cf.name;
      rep.pass = rep.pass && rep.equality;
      return rep;
    }});
    if (++idx >= 3) break;
  }
  if (p == 2.0) {
    tasks.push_back({"ordering/stronger-than-classical", [corpus, opt, n] {
      // 2 K_n E ||df/dt|| <= K_n ||grad f||^2 across the corpus.
      double worst = -1e9;
      for (const auto& cf : corpus.functions) {
        const GradientProfile prof = gradient_profile(cf.f, 2.0, opt);
        const double energy = norm_c(n - 1, 2.0) * prof.Zp();
        const double dtn = std::sqrt(prof.dt_p);
        const double affine_rhs = 2.0 * energy * dtn;
        const double classical_rhs = prof.tilde_p + prof.dt_p;
        worst = std::max(worst, affine_rhs - classical_rhs);
      }
      return bound_report("ordering/stronger-than-classical", "trace/rhs-comparison",
                          "corpus", worst, 1e-6);
    }});
  }
}

void chain_tasks(const SuiteConfig& config, std::vector<Task>& tasks,
                 const std::pair<int, double>& dims) {
  const int n = dims.first;
  const double p = dims.second;
  TraceOptions opt;
  opt.orders = config.orders;
  opt.tol_equality = config.tol_equality;
  const Corpus corpus = make_corpus(n, p, config.seed);

  const CorpusFunction* radial = nullptr;
  const CorpusFunction* aniso = nullptr;
  for (const auto& cf : corpus.functions) {
    if (!radial && cf.kind == FunctionKind::RadialExtremal) radial = &cf;
    if (!aniso && cf.kind == FunctionKind::Anisotropic) aniso = &cf;
  }

  if (radial) {
    const CorpusFunction rf = *radial;
    tasks.push_back({"chain/centroid-slice-radial", [rf, p, opt] {
      const CentroidSliceResult res = centroid_slice_check(rf.f, p, opt);
      VerificationReport rep =
          bound_report("chain/centroid-slice-radial", "centroid-slice/relation", rf.name,
                       res.max_radial_discrepancy, 1e-3);
      rep.links.push_back({"volume-identity", res.volume_rel_error, 1e-3,
                           res.volume_rel_error / 1e-3, 1e-3, res.volume_rel_error <= 1e-3});
      rep.pass = rep.pass && rep.links.back().pass;
      return rep;
    }});
    tasks.push_back({"chain/links-radial", [rf, p, opt] {
      VerificationReport rep = proof_chain(rf.f, p, opt);
      rep.check = "chain/links-radial";
      for (const auto& l : rep.links)
        rep.pass = rep.pass && std::abs(l.ratio - 1.0) <= opt.tol_equality;
      return rep;
    }});
  }
  if (aniso) {
    const CorpusFunction af = *aniso;
    tasks.push_back({"chain/centroid-slice-anisotropic", [af, p, opt] {
      const CentroidSliceResult res = centroid_slice_check(af.f, p, opt);
      VerificationReport rep =
          bound_report("chain/centroid-slice-anisotropic", "centroid-slice/relation", af.name,
                       res.max_radial_discrepancy, 1e-3);
      rep.links.push_back({"volume-identity", res.volume_rel_error, 1e-3,
                           res.volume_rel_error / 1e-3, 1e-3, res.volume_rel_error <= 1e-3});
      rep.pass = rep.pass && rep.links.back().pass;
      return rep;
    }});
  }
  // The centroid step is strict only when L_f is not an ellipsoid, which at
  // p = 2 never happens; probe it at p = 1.5.
  if (n == 3) {
    tasks.push_back({"chain/strict-centroid-step", [config] {
      TraceOptions opt15;
      opt15.orders = config.orders;
      Eigen::VectorXd ax(2), c(2);
      ax << 0.4, 2.1;
      c << 0.0, 0.0;
      const TestFunction f = gaussian_profile(3, 1.0, 0.9, 0.0, ax, c);
      VerificationReport rep = proof_chain(f, 1.5, opt15);
      rep.check = "chain/strict-centroid-step";
      double centroid_ratio = 1.0;
      for (const auto& l : rep.links)
        if (l.name == "centroid-step") centroid_ratio = l.ratio;
      rep.pass = centroid_ratio < 1.0 - 1e-5;
      rep.note = "strict when L_f is not an ellipsoid";
      return rep;
    }});
  }
}

void gauge_trace_tasks(const SuiteConfig& config, std::vector<Task>& tasks,
                   const std::pair<int, double>& dims) {
  const int n = dims.first;
  const double p = dims.second;
  TraceOptions opt;
  opt.orders = config.orders;
  opt.tol_equality = config.tol_equality;

  tasks.push_back({"gauge-trace/extremal-euclidean", [n, p, opt] {
    const HomogeneousConvex c = make_power_convex(n, 2.0);
    const TestFunction f =
        gauge_extremal(c, n, p, 1.0, 1.0, Eigen::VectorXd::Zero(n - 1));
    const double ratio = gauge_trace_ratio(f, c, p, opt);
    VerificationReport rep = bound_report("gauge-trace/extremal-euclidean",
                                          "gauge-trace/equality-case", "classical extremal profile",
                                          std::abs(ratio - 1.0), opt.tol_equality);
    rep.ratio = ratio;
    rep.equality = rep.pass;
    return rep;
  }});
  tasks.push_back({"gauge-trace/strict-on-bumps", [n, p, opt, config] {
    const Corpus corpus = make_corpus(n, p, config.seed, CorpusCounts{0, 2, 0, 0});
    const HomogeneousConvex c = make_power_convex(n, 2.0);
    double worst = -1e9;
    for (const auto& cf : corpus.functions)
      worst = std::max(worst, gauge_trace_ratio(cf.f, c, p, opt) - 1.0);
    return bound_report("gauge-trace/strict-on-bumps", "gauge-trace/strictness", "bumps", worst,
                        -1e-3);
  }});
}

std::vector<std::string> checks_or_all(const SuiteConfig& config) {
  if (config.checks.empty()) return available_checks();
  std::vector<std::string> out = config.checks;
  for (auto& c : out) {
    if (c == "all" || c == "default") return available_checks();
  }
  return out;
}

}  // namespace

const std::vector<std::string>& available_checks() {
  static const std::vector<std::string> names = {
      "constants", "quadrature", "convex",   "optimal-constant", "affine",
      "invariance", "ordering",  "chain",    "gauge-trace"};
  return names;
}

void validate_config(const SuiteConfig& config) {
  if (config.dims.empty()) throw UsageError("suite: at least one (n, p) pair is required");
  for (const auto& [n, p] : config.dims) {
    if (n < 3) throw UsageError("suite: n must be >= 3");
    if (!(p > 1.0) || !(p < n))
      throw UsageError("suite: p must lie in (1, n), got p=" + std::to_string(p));
  }
  if (config.format != "json" && config.format != "csv")
    throw UsageError("suite: format must be json or csv");
  for (const auto& c : checks_or_all(config)) {
    const auto& names = available_checks();
    if (std::find(names.begin(), names.end(), c) == names.end())
      throw UsageError("suite: unknown check '" + c + "'");
  }
}

SuiteSummary run_suite(const SuiteConfig& config, std::ostream* live) {
  validate_config(config);
  const auto t0 = std::chrono::steady_clock::now();

  std::vector<Task> tasks;
  for (const auto& name : checks_or_all(config)) {
    if (name == "constants") constants_tasks(config, tasks);
    if (name == "quadrature") quadrature_tasks(config, tasks);
    if (name == "convex") convex_tasks(config, tasks);
    if (name == "optimal-constant") optimal_constant_tasks(config, tasks);
    for (const auto& d : config.dims) {
      if (name == "affine") affine_tasks(config, tasks, d);
      if (name == "invariance") invariance_tasks(config, tasks, d);
      if (name == "ordering") ordering_tasks(config, tasks, d);
      if (name == "chain") chain_tasks(config, tasks, d);
      if (name == "gauge-trace") gauge_trace_tasks(config, tasks, d);
    }
  }

  int workers = config.workers;
  if (workers <= 0) {
    if (const char* env = std::getenv("AFFTRACE_WORKERS")) workers = std::atoi(env);
  }
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::max(1, std::min<int>(workers, static_cast<int>(tasks.size())));

  std::vector<VerificationReport> results(tasks.size());
  std::atomic<std::size_t> next{0};
  std::mutex emit_mu;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      VerificationReport rep;
      const auto task_t0 = std::chrono::steady_clock::now();
      try {
        rep = tasks[i].run();
      } catch (const std::exception& e) {
        rep.check = tasks[i].name;
        rep.anchor = "error";
        rep.pass = false;
        rep.note = e.what();
      }
      if (rep.wall_ms == 0.0) rep.wall_ms = wall_since(task_t0);
      {
        std::lock_guard<std::mutex> lock(emit_mu);
        if (live) *live << to_json(rep) << std::endl;
      }
      results[i] = std::move(rep);
    }
  };

  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  SuiteSummary summary;
  summary.reports = std::move(results);
  for (const auto& r : summary.reports) (r.pass ? summary.passed : summary.failed)++;
  summary.wall_ms = wall_since(t0);

  if (live) {
    std::lock_guard<std::mutex> lock(emit_mu);
    *live << "{\"summary\":{\"passed\":" << summary.passed
          << ",\"failed\":" << summary.failed << ",\"wall_ms\":" << summary.wall_ms << "}}"
          << std::endl;
  }

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) throw UsageError("suite: cannot open output path " + config.out_path);
    if (config.format == "csv") {
      out << csv_header() << '\n';
      for (const auto& r : summary.reports) out << to_csv_row(r) << '\n';
    } else {
      for (const auto& r : summary.reports) out << to_json(r) << '\n';
      out << "{\"summary\":{\"passed\":" << summary.passed
          << ",\"failed\":" << summary.failed << "}}" << '\n';
    }
  }
  return summary;
}

std::vector<ConstantsRow> constants_table(const std::vector<std::pair<int, double>>& dims) {
  std::vector<ConstantsRow> rows;
  for (const auto& [n, p] : dims) {
    const Dimensions d(n, p);
    const ConstantSet cs = constant_set(d);
    rows.push_back({n, p, cs.K_n, cs.A_np, cs.c_np, cs.a_np, cs.d1, cs.d2});
  }
  return rows;
}

std::string constants_table_json(const std::vector<ConstantsRow>& rows) {
  std::ostringstream os;
  os.precision(15);
  os << "[";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    os << (i ? "," : "") << "{\"n\":" << r.n << ",\"p\":" << r.p << ",\"K_n\":" << r.K_n
       << ",\"A_np\":" << r.A_np << ",\"c_np\":" << r.c_np << ",\"a_np\":" << r.a_np
       << ",\"d1\":" << r.d1 << ",\"d2\":" << r.d2 << "}";
  }
  os << "]";
  return os.str();
}

std::string constants_table_csv(const std::vector<ConstantsRow>& rows) {
  std::ostringstream os;
  os.precision(15);
  os << "n,p,K_n,A_np,c_np,a_np,d1,d2\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.p << ',' << r.K_n << ',' << r.A_np << ',' << r.c_np << ','
       << r.a_np << ',' << r.d1 << ',' << r.d2 << '\n';
  }
  return os.str();
}

}  // namespace afftrace
