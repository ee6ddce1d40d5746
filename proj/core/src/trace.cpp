#include "afftrace/trace.hpp"

#include <chrono>
#include <cmath>
#include <memory>
#include <sstream>
#include <stdexcept>

#include "afftrace/errors.hpp"
#include "afftrace/gamma.hpp"
#include "afftrace/quadrature.hpp"
#include "fast_pow.hpp"

namespace afftrace {

using detail::pow_abs;

namespace {

struct MappedLine {
  std::vector<double> t, w;
};

// Same exp-sinh radial line the half-space integrator uses.
MappedLine mapped_line(int order, double scale) {
  MappedLine m;
  m.t.resize(order);
  m.w.resize(order);
  const double U = 3.5;
  const double h = 2.0 * U / (order - 1);
  for (int i = 0; i < order; ++i) {
    const double u = -U + i * h;
    const double r = scale * std::exp(0.5 * M_PI * std::sinh(u));
    m.t[i] = r;
    m.w[i] = h * 0.5 * M_PI * std::cosh(u) * r;
  }
  return m;
}

// Direction rule on S^{m-1} shared by the x-angular decomposition and the
// directional-norm tabulation.
struct DirectionRule {
  std::vector<Eigen::VectorXd> dirs;
  std::vector<double> weights;
};

DirectionRule direction_rule(int m, const HalfspaceOrders& orders) {
  DirectionRule r;
  if (m == 2) {
    const int k = orders.angular;
    r.dirs.reserve(k);
    r.weights.assign(k, 2.0 * M_PI / k);
    for (int i = 0; i < k; ++i) {
      const double a = 2.0 * M_PI * (i + 0.5) / k;
      r.dirs.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
    }
    return r;
  }
  const QuadratureRule rule = sphere_rule(m, std::max(8, std::min(32, orders.angular / 8)));
  r.dirs = rule.nodes;
  r.weights = rule.weights;
  return r;
}

void require_halfspace_decay(const TestFunction& f, double integrand_power) {
  if (!(integrand_power > f.n))
    throw std::domain_error("trace: declared decay is insufficient for this integral");
}

std::string function_digest(const TestFunction& f, double p) {
  Eigen::VectorXd probe = Eigen::VectorXd::LinSpaced(f.n - 1, -0.7, 0.9);
  std::ostringstream os;
  os.precision(17);
  os << f.n << ':' << p << ':' << f.value(0.3, probe) << ':' << f.dt(0.7, probe) << ':'
     << f.grad_x(0.1, probe).sum();
  return digest(os.str());
}

double wall_since(const std::chrono::steady_clock::time_point& t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
      .count();
}

// Bicubic (Catmull-Rom) interpolant of a smooth direction function on S^2,
// tabulated on a uniform (z, phi) grid including both poles.
struct SphereTable {
  int nz = 0, nphi = 0;
  std::vector<double> vals;  // (nz) rows x (nphi) cols

  void build(const std::function<double(const Eigen::VectorXd&)>& fn, int nz_, int nphi_) {
    nz = nz_;
    nphi = nphi_;
    vals.assign(static_cast<std::size_t>(nz) * nphi, 0.0);
    for (int i = 0; i < nz; ++i) {
      const double z = -1.0 + 2.0 * i / (nz - 1.0);
      const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < nphi; ++j) {
        const double phi = 2.0 * M_PI * j / nphi;
        Eigen::VectorXd d(3);
        d << z, s * std::cos(phi), s * std::sin(phi);
        vals[static_cast<std::size_t>(i) * nphi + j] = fn(d.normalized());
      }
    }
  }

  static double cubic(double fm1, double f0, double f1, double f2, double s) {
    return f0 + 0.5 * s * (f1 - fm1 +
                           s * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 +
                                s * (3.0 * (f0 - f1) + f2 - fm1)));
  }

  double at(int i, int j) const {
    i = std::min(std::max(i, 0), nz - 1);
    j = ((j % nphi) + nphi) % nphi;
    return vals[static_cast<std::size_t>(i) * nphi + j];
  }

  double eval(double z, double phi) const {
    const double fz = (z + 1.0) * 0.5 * (nz - 1.0);
    int iz = static_cast<int>(std::floor(fz));
    iz = std::min(std::max(iz, 0), nz - 2);
    const double sz = fz - iz;
    const double fp = phi / (2.0 * M_PI) * nphi;
    const int jp = static_cast<int>(std::floor(fp));
    const double sp = fp - jp;
    double col[4];
    for (int k = -1; k <= 2; ++k) {
      col[k + 1] = cubic(at(iz - 1, jp + k), at(iz, jp + k), at(iz + 1, jp + k),
                         at(iz + 2, jp + k), sz);
    }
    return cubic(col[0], col[1], col[2], col[3], sp);
  }

  double eval_dir(const Eigen::VectorXd& d) const {
    const double z = std::min(std::max(d[0], -1.0), 1.0);
    double phi = std::atan2(d[2], d[1]);
    if (phi < 0) phi += 2.0 * M_PI;
    return eval(z, phi);
  }
};

// Evaluator of a p-homogeneous convex function, accelerated for dim 3 by a
// spherical table of its restriction to the unit sphere.
struct HomogeneousEvaluator {
  double degree = 2.0;
  std::function<double(const Eigen::VectorXd&)> direct;
  bool use_table = false;
  SphereTable table;

  void init(const HomogeneousConvex& C) {
    degree = C.degree;
    direct = C.value;
    if (C.dim == 3) {
      use_table = true;
      table.build(C.value, 97, 128);
    }
  }

  double operator()(const Eigen::VectorXd& y) const {
    const double norm = y.norm();
    if (norm == 0.0) return 0.0;
    if (!use_table) return direct(y);
    return table.eval_dir(y / norm) * std::pow(norm, degree);
  }
};

struct DstarData {
  std::vector<Eigen::VectorXd> xi;
  std::vector<double> coef;
  double p = 2.0;
};

}  // namespace

double GradientProfile::min_dir_p() const {
  double m = dir_p.empty() ? 0.0 : dir_p[0];
  for (double v : dir_p) m = std::min(m, v);
  return m;
}

double GradientProfile::Zp() const {
  if (second_moment.size() > 0) {
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(second_moment);
    if (!(es.eigenvalues().minCoeff() > 1e-12 * es.eigenvalues().maxCoeff()))
      throw DegeneracyError("gradient profile: a directional norm vanishes");
  }
  double max_v = 0.0;
  for (double v : dir_p) max_v = std::max(max_v, v);
  double sum = 0.0;
  for (std::size_t j = 0; j < dir_p.size(); ++j) {
    if (!(dir_p[j] > 1e-20 * max_v))
      throw DegeneracyError("gradient profile: a directional norm vanishes");
    sum += xi_weight[j] * std::pow(dir_p[j], (1.0 - n) / p);
  }
  return std::pow(sum, 1.0 / (1.0 - n));
}

namespace {

// Nodes/weights for int_0^1 (1-z^2)^{(n-3)/2} h(z) dz, the polar-angle factor
// of the half-space parametrization (t, x) = r (z, sqrt(1-z^2) w).
MappedLine polar_z_rule(int n, int kz) {
  MappedLine out;
  if (n == 3) {
    const GaussRule g = gauss_legendre_01(kz);
    out.t = g.nodes;
    out.w = g.weights;
    return out;
  }
  const double half = 0.5 * (n - 3.0);
  const GaussRule gj = gauss_jacobi(kz, half, 0.0);
  const double scale = std::pow(2.0, -1.0 - half);
  out.t.resize(kz);
  out.w.resize(kz);
  for (int i = 0; i < kz; ++i) {
    const double z = 0.5 * (gj.nodes[i] + 1.0);
    out.t[i] = z;
    out.w[i] = gj.weights[i] * scale * std::pow(1.0 + z, half);
  }
  return out;
}

}  // namespace

GradientProfile gradient_profile(const TestFunction& f, double p, const TraceOptions& opt) {
  Dimensions dims(f.n, p);
  require_halfspace_decay(f, p * (f.decay.power + 1.0));
  const int n = f.n;
  const int m = n - 1;
  const double scale = f.decay.scale > 0 ? f.decay.scale : 1.0;
  const MappedLine rl = mapped_line(opt.orders.radial, scale);
  const MappedLine zl = polar_z_rule(n, std::max(24, opt.time_order / 2));
  const DirectionRule ang = direction_rule(m, opt.orders);

  GradientProfile prof;
  prof.n = n;
  prof.p = p;
  prof.xi = ang.dirs;
  prof.xi_weight = ang.weights;
  prof.dir_p.assign(ang.dirs.size(), 0.0);

  const bool quadratic = (p == 2.0);
  Eigen::MatrixXd moment = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd x(m);

  // One sweep of the polar half-space rule accumulates every directional
  // moment at once: t = r z, x = r sqrt(1-z^2) w.
  for (std::size_t a = 0; a < ang.dirs.size(); ++a) {
    const double wa = ang.weights[a];
    for (std::size_t i = 0; i < zl.t.size(); ++i) {
      const double z = zl.t[i];
      const double s = std::sqrt(1.0 - z * z);
      const double waz = wa * zl.w[i];
      for (std::size_t j = 0; j < rl.t.size(); ++j) {
        const double r = rl.t[j];
        const double w = waz * rl.w[j] * std::pow(r, n - 1);
        const double t = r * z;
        x = (r * s) * ang.dirs[a];
        const double dtv = f.dt(t, x);
        const Eigen::VectorXd g = f.grad_x(t, x);
        prof.dt_p += w * pow_abs(dtv, p);
        prof.tilde_p += w * pow_abs(g.norm(), p);
        moment.noalias() += w * (g * g.transpose());
        if (!quadratic) {
          for (std::size_t l = 0; l < prof.xi.size(); ++l) {
            prof.dir_p[l] += w * pow_abs(g.dot(prof.xi[l]), p);
          }
        }
      }
    }
  }
  if (quadratic) {
    for (std::size_t l = 0; l < prof.xi.size(); ++l) {
      prof.dir_p[l] = prof.xi[l].dot(moment * prof.xi[l]);
    }
  }
  prof.second_moment = moment;
  return prof;
}

double directional_norm(const TestFunction& f, const Eigen::VectorXd& xi, double p,
                        const TraceOptions& opt) {
  Dimensions dims(f.n, p);
  const Eigen::VectorXd xin = xi / xi.norm();
  DecayProfile d{p * (f.decay.power + 1.0), f.decay.scale};
  const HalfspaceIntegral r = integrate_halfspace(
      [&](double t, const Eigen::VectorXd& x) { return pow_abs(f.grad_x(t, x).dot(xin), p); },
      f.n, d, opt.orders);
  if (!r.decay_ok) throw std::domain_error("directional_norm: decay insufficient");
  return std::pow(r.value, 1.0 / p);
}

double dt_norm(const TestFunction& f, double p, const TraceOptions& opt) {
  Dimensions dims(f.n, p);
  DecayProfile d{p * (f.decay.power + 1.0), f.decay.scale};
  const HalfspaceIntegral r = integrate_halfspace(
      [&](double t, const Eigen::VectorXd& x) { return pow_abs(f.dt(t, x), p); }, f.n, d,
      opt.orders);
  if (!r.decay_ok) throw std::domain_error("dt_norm: decay insufficient");
  return std::pow(r.value, 1.0 / p);
}

double tilde_grad_norm(const TestFunction& f, double p, const TraceOptions& opt) {
  Dimensions dims(f.n, p);
  DecayProfile d{p * (f.decay.power + 1.0), f.decay.scale};
  const HalfspaceIntegral r = integrate_halfspace(
      [&](double t, const Eigen::VectorXd& x) { return pow_abs(f.grad_x(t, x).norm(), p); },
      f.n, d, opt.orders);
  if (!r.decay_ok) throw std::domain_error("tilde_grad_norm: decay insufficient");
  return std::pow(r.value, 1.0 / p);
}

double trace_norm(const TestFunction& f, double p, const TraceOptions& opt) {
  Dimensions dims(f.n, p);
  const double expo = p * (f.n - 1.0) / (f.n - p);
  DecayProfile d{f.decay.power * expo, f.decay.scale};
  const HalfspaceIntegral r = integrate_plane(
      [&](const Eigen::VectorXd& x) { return std::pow(std::abs(f.value(0.0, x)), expo); },
      f.n - 1, d, opt.orders);
  if (!r.decay_ok) throw std::domain_error("trace_norm: decay insufficient");
  return std::pow(r.value, 1.0 / expo * p);
}

EnergyData affine_energy(const TestFunction& f, double p, const TraceOptions& opt) {
  const GradientProfile prof = gradient_profile(f, p, opt);
  EnergyData e;
  e.Zp = prof.Zp();
  e.value = norm_c(f.n - 1, p) * e.Zp;
  e.vol_Lf = std::pow(e.Zp, 1.0 - f.n) / (f.n - 1.0);
  return e;
}

namespace {

StarBody lf_body(const GradientProfile& prof) {
  const int m = prof.n - 1;
  const double p = prof.p;
  if (p == 2.0 || m > 2) {
    if (p == 2.0) {
      // ||grad_xi f||_2^2 = xi^T M xi exactly.
      const Eigen::MatrixXd M = prof.second_moment;
      return make_star_body(
          m, [M](const Eigen::VectorXd& u) { return std::pow(u.dot(M * u), -0.5); }, true);
    }
    auto xi = prof.xi;
    auto dir = prof.dir_p;
    const double pp = p;
    return make_star_body(
        m,
        [xi, dir, pp](const Eigen::VectorXd& u) {
          double best = -2.0;
          std::size_t bi = 0;
          for (std::size_t i = 0; i < xi.size(); ++i) {
            const double d = u.dot(xi[i]);
            if (d > best) {
              best = d;
              bi = i;
            }
          }
          return std::pow(dir[bi], -1.0 / pp);
        },
        true);
  }
  // m == 2, general p: periodic cubic interpolation over the midpoint angles.
  const int k = static_cast<int>(prof.xi.size());
  auto vals = std::make_shared<std::vector<double>>(prof.dir_p);
  const double pp = p;
  return make_star_body(
      m,
      [vals, k, pp](const Eigen::VectorXd& u) {
        double a = std::atan2(u[1], u[0]);
        if (a < 0) a += 2.0 * M_PI;
        const double fpos = a / (2.0 * M_PI) * k - 0.5;
        const int j0 = static_cast<int>(std::floor(fpos));
        const double s = fpos - j0;
        auto at = [&](int j) { return (*vals)[((j % k) + k) % k]; };
        const double fm1 = at(j0 - 1), f0 = at(j0), f1 = at(j0 + 1), f2 = at(j0 + 2);
        const double v = f0 + 0.5 * s * (f1 - fm1 +
                                         s * (2.0 * fm1 - 5.0 * f0 + 4.0 * f1 - f2 +
                                              s * (3.0 * (f0 - f1) + f2 - fm1)));
        return std::pow(v, -1.0 / pp);
      },
      true);
}

}  // namespace

CfData build_cf(const TestFunction& f, double p, const TraceOptions& opt) {
  Dimensions dims(f.n, p);
  const int n = f.n;
  const int m = n - 1;
  const double q = dims.q;
  const GradientProfile prof = gradient_profile(f, p, opt);
  const double Z = prof.Zp();

  CfData cf;
  cf.Zp = Z;
  cf.alpha = q * std::pow(Z, 1.0 - n) / prof.dt_p;

  auto data = std::make_shared<DstarData>();
  data->xi = prof.xi;
  data->p = p;
  data->coef.resize(prof.xi.size());
  for (std::size_t j = 0; j < prof.xi.size(); ++j) {
    data->coef[j] = prof.xi_weight[j] * std::pow(prof.dir_p[j], (1.0 - n - p) / p);
  }

  cf.Dstar.dim = m;
  cf.Dstar.degree = p;
  cf.Dstar.value = [data](const Eigen::VectorXd& x) {
    double s = 0.0;
    for (std::size_t j = 0; j < data->xi.size(); ++j)
      s += data->coef[j] * pow_abs(x.dot(data->xi[j]), data->p);
    return s;
  };

  const double alpha_over_p = cf.alpha / p;
  auto dstar_value = cf.Dstar.value;
  cf.Cstar.dim = n;
  cf.Cstar.degree = p;
  cf.Cstar.value = [alpha_over_p, dstar_value, p, m](const Eigen::VectorXd& y) {
    return alpha_over_p * pow_abs(y[0], p) + dstar_value(y.tail(m));
  };

  cf.C = legendre(cf.Cstar);
  cf.Df = legendre(cf.Dstar);
  cf.K0 = level_body(cf.Df);
  cf.Lf = lf_body(prof);
  return cf;
}

ConstantRoutes sharp_constant_routes(const HomogeneousConvex& C, double p, int order) {
  Dimensions dims(C.dim, p);
  const int n = C.dim;
  const double q = dims.q;
  const double a = q * n - q - n;
  const double expo = -p / (q * (n - 1.0));
  const double front = std::pow(p, p) * std::pow(n - p, -p / q);

  ConstantRoutes routes;
  {
    const double moment = moment_over_body_plus(level_body(C), a, order);
    routes.body_moment =
        front * std::pow(q * (n - 1.0), expo) * std::pow(moment, expo);
  }
  {
    const QuadratureRule rule = hemisphere_moment_rule(n, order, a);
    double integral = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      integral += rule.weights[i] * std::pow(C.value(rule.nodes[i]), 1.0 - n);
    }
    routes.spherical = front * std::pow(integral, expo);
  }
  return routes;
}

namespace {

double cstar_halfspace_integral(const TestFunction& f, const HomogeneousConvex& Cstar,
                                double p, const TraceOptions& opt) {
  HomogeneousEvaluator eval;
  eval.init(Cstar);
  DecayProfile d{p * (f.decay.power + 1.0), f.decay.scale};
  const int n = f.n;
  const HalfspaceIntegral r = integrate_halfspace(
      [&](double t, const Eigen::VectorXd& x) {
        Eigen::VectorXd y(n);
        y[0] = f.dt(t, x);
        y.tail(n - 1) = f.grad_x(t, x);
        return eval(y);
      },
      n, d, opt.orders);
  if (!r.decay_ok) throw std::domain_error("trace: decay insufficient for C*(grad f)");
  return r.value;
}

}  // namespace

double gauge_trace_ratio(const TestFunction& f, const HomogeneousConvex& C, double p,
                     const TraceOptions& opt) {
  if (C.dim != f.n) throw std::domain_error("gauge_trace_ratio: C must live on R^n");
  const HomogeneousConvex cstar = legendre(C);
  const double K = sharp_constant_routes(C, p, opt.hemisphere_order).body_moment;
  const double integral = cstar_halfspace_integral(f, cstar, p, opt);
  return trace_norm(f, p, opt) / (K * integral);
}

VerificationReport verify_affine(const TestFunction& f, double p, const TraceOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Dimensions dims(f.n, p);
  const GradientProfile prof = gradient_profile(f, p, opt);
  const double Z = prof.Zp();
  const double energy = norm_c(f.n - 1, p) * Z;
  const double dtn = std::pow(prof.dt_p, 1.0 / p);
  const double tr = trace_norm(f, p, opt);

  VerificationReport rep;
  rep.check = "affine-trace";
  rep.anchor = "trace/affine-inequality";
  rep.inputs_digest = function_digest(f, p);
  rep.lhs = tr;
  rep.rhs = p * sharp_A(dims) * std::pow(energy, p - 1.0) * dtn;
  rep.ratio = rep.lhs / rep.rhs;
  rep.tolerance = opt.tol_equality;
  rep.pass = rep.ratio <= 1.0 + opt.tol_equality;
  rep.equality = std::abs(rep.ratio - 1.0) <= opt.tol_equality;
  rep.wall_ms = wall_since(t0);
  return rep;
}

CentroidSliceResult centroid_slice_check(const TestFunction& f, double p, const TraceOptions& opt) {
  Dimensions dims(f.n, p);
  const int n = f.n;
  const int m = n - 1;
  const double q = dims.q;
  const CfData cf = build_cf(f, p, opt);

  const StarBody gamma = centroid_body(cf.Lf, p);
  const double vol_lf = volume(cf.Lf);
  const double scale = std::pow((n + p - 1.0) * norm_a(m, p) * vol_lf, 1.0 / p) *
                       std::pow(q, 1.0 / q) * std::pow(p, 1.0 / p);

  CentroidSliceResult res;
  for (const auto& u : direction_grid(m)) {
    const double lhs = cf.K0.radial(u);
    const double rhs = scale * gamma.radial(u);
    res.max_radial_discrepancy =
        std::max(res.max_radial_discrepancy, std::abs(lhs - rhs) / rhs);
  }

  const double vol_k0 = volume(cf.K0);
  const double vol_gamma = volume(gamma);
  const double rhs_vol = std::pow(p * std::pow(q, p / q) * (n + p - 1.0) * norm_a(m, p),
                                  (n - 1.0) / p) *
                         std::pow(vol_lf, (n - 1.0) / p) * vol_gamma;
  res.volume_rel_error = std::abs(vol_k0 - rhs_vol) / rhs_vol;
  return res;
}

VerificationReport proof_chain(const TestFunction& f, double p, const TraceOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Dimensions dims(f.n, p);
  const int n = f.n;
  const double q = dims.q;
  const GradientProfile prof = gradient_profile(f, p, opt);
  const double Z = prof.Zp();
  const CfData cf = build_cf(f, p, opt);
  const double energy = norm_c(n - 1, p) * Z;
  const double dtn = std::pow(prof.dt_p, 1.0 / p);
  const double tr = trace_norm(f, p, opt);
  const double d1 = p * sharp_A(dims);

  VerificationReport rep;
  rep.check = "proof-chain";
  rep.anchor = "trace/main-chain";
  rep.inputs_digest = function_digest(f, p);
  rep.tolerance = opt.tol_equality;

  // (i) int C_f^*(grad f) = q Z_p^{1-n}, integrated pointwise.
  {
    const double lhs = cstar_halfspace_integral(f, cf.Cstar, p, opt);
    const double rhs = q * std::pow(Z, 1.0 - n);
    rep.links.push_back({"cf-identity", lhs, rhs, lhs / rhs, opt.tol_equality,
                         std::abs(lhs / rhs - 1.0) <= opt.tol_equality});
  }

  // (ii) K_{n,C_f} against the slice-decomposed closed form.
  const double K_direct = sharp_constant_routes(cf.C, p, opt.hemisphere_order).body_moment;
  {
    const double expo = -p / (q * (n - 1.0));
    const double closed = std::pow(p, p) * std::pow(n - p, -p / q) *
                          std::pow(q * (n - 1.0), expo) *
                          std::pow(beta_moment(dims), expo) * std::pow(q, -1.0 / q) *
                          std::pow(volume(cf.K0), expo) * std::pow(cf.alpha, -1.0 / p);
    rep.links.push_back({"constant-slice-form", K_direct, closed, K_direct / closed,
                         opt.tol_equality,
                         std::abs(K_direct / closed - 1.0) <= opt.tol_equality});
  }

  // (iii) the abstract-norm inequality at C = C_f.
  const double I1 = rep.links[0].lhs;
  {
    const double ratio = tr / (K_direct * I1);
    rep.links.push_back({"gauge-step", tr, K_direct * I1, ratio, opt.tol_equality,
                         ratio <= 1.0 + opt.tol_equality});
  }

  // (iv) the centroid-inequality step.
  {
    const double lhs = K_direct * I1;
    const double rhs = d1 * std::pow(energy, p - 1.0) * dtn;
    rep.links.push_back({"centroid-step", lhs, rhs, lhs / rhs, opt.tol_equality,
                         lhs / rhs <= 1.0 + opt.tol_equality});
  }

  // (v) the assembled inequality.
  {
    const double rhs = d1 * std::pow(energy, p - 1.0) * dtn;
    rep.links.push_back({"chain", tr, rhs, tr / rhs, opt.tol_equality,
                         tr / rhs <= 1.0 + opt.tol_equality});
    rep.lhs = tr;
    rep.rhs = rhs;
    rep.ratio = tr / rhs;
  }

  rep.pass = true;
  for (const auto& l : rep.links) rep.pass = rep.pass && l.pass;
  rep.equality = std::abs(rep.ratio - 1.0) <= opt.tol_equality;
  rep.wall_ms = wall_since(t0);
  return rep;
}

double appendix_chain(const Dimensions& dims) {
  const double n = dims.n;
  const double p = dims.p;
  const double q = dims.q;
  const double acp = norm_a(dims.n - 1, p) * std::pow(norm_c(dims.n - 1, p), p);
  const double gamma_block = (n - 1.0) * gamma_fn((n - 1.0) / p) * gamma_fn((n - 1.0) / q + 1.0) /
                             gamma_fn(n);
  const double d1_raw = std::pow(p, p - 1.0 / q) * std::pow(q, -p / (q * q)) *
                        std::pow(n - p, -p / q) * std::pow(n + p - 1.0, -1.0 / q) *
                        std::pow(n - 1.0, (n + p - 1.0) / ((n - 1.0) * q)) *
                        std::pow(gamma_block, -p / ((n - 1.0) * q)) *
                        std::pow(acp, -1.0 / q);
  const double d1 = p * sharp_A(dims);
  return std::abs(d1_raw - d1) / d1;
}

VerificationReport young_form(const TestFunction& f, double p, const TraceOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  Dimensions dims(f.n, p);
  const GradientProfile prof = gradient_profile(f, p, opt);
  const double Z = prof.Zp();
  const double energy = norm_c(f.n - 1, p) * Z;
  const double tr = trace_norm(f, p, opt);
  const double d2 = constant_set(dims).d2;

  const double middle = d2 * (std::pow(energy, p) + prof.dt_p);
  const double outer = d2 * (prof.tilde_p + prof.dt_p);

  VerificationReport rep;
  rep.check = "young-form";
  rep.anchor = "trace/young-chain";
  rep.inputs_digest = function_digest(f, p);
  rep.tolerance = opt.tol_equality;
  rep.links.push_back({"trace-vs-middle", tr, middle, tr / middle, opt.tol_equality,
                       tr / middle <= 1.0 + opt.tol_equality});
  rep.links.push_back({"middle-vs-gradient", middle, outer, middle / outer,
                       opt.tol_equality, middle / outer <= 1.0 + opt.tol_equality});
  rep.lhs = tr;
  rep.rhs = outer;
  rep.ratio = tr / outer;
  rep.pass = rep.links[0].pass && rep.links[1].pass;
  rep.equality = std::abs(tr / middle - 1.0) <= opt.tol_equality &&
                 std::abs(middle / outer - 1.0) <= opt.tol_equality;
  rep.wall_ms = wall_since(t0);
  return rep;
}

}  // namespace afftrace
