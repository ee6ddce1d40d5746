#include "afftrace/convex.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "afftrace/constants.hpp"
#include "afftrace/errors.hpp"
#include "afftrace/quadrature.hpp"

namespace afftrace {

namespace {

inline double pow_abs(double x, double p) {
  const double a = std::abs(x);
  if (p == 2.0) return a * a;
  if (p == 3.0) return a * a * a;
  if (p == 1.5) return a * std::sqrt(a);
  if (p == 2.5) return a * a * std::sqrt(a);
  return std::pow(a, p);
}

// Maximizes g on [a, b] by golden section; returns the best value seen.
double golden_max(const std::function<double(double)>& g, double a, double b, int iters) {
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a);
  double x2 = a + gr * (b - a);
  double f1 = g(x1), f2 = g(x2);
  double best = std::max(f1, f2);
  for (int i = 0; i < iters; ++i) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + gr * (b - a);
      f2 = g(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - gr * (b - a);
      f1 = g(x1);
    }
    best = std::max(best, std::max(f1, f2));
  }
  return best;
}

// Orthonormal basis of the tangent space at unit vector theta.
Eigen::MatrixXd tangent_basis(const Eigen::VectorXd& theta) {
  const int m = static_cast<int>(theta.size());
  Eigen::VectorXd v = theta;
  v[0] -= (theta[0] >= 0.0 ? -1.0 : 1.0);  // v = theta + sign e1, never ~0
  const Eigen::MatrixXd H =
      Eigen::MatrixXd::Identity(m, m) - 2.0 / v.squaredNorm() * (v * v.transpose());
  // First column of H is ±theta; the rest span the tangent space.
  return H.rightCols(m - 1);
}

// Refines max_{|theta|=1} g(theta) near a starting direction. 2-D finite
// difference Newton with a shrinking trust radius, gradient-ascent fallback.
double refine_max_sphere(const std::function<double(const Eigen::VectorXd&)>& g,
                         Eigen::VectorXd theta, double h0, double val) {
  const int m = static_cast<int>(theta.size());
  double h = h0;
  int stalled = 0;
  for (int iter = 0; iter < 14 && h > 1e-8 && stalled < 2; ++iter) {
    const double before = val;
    const Eigen::MatrixXd B = tangent_basis(theta);
    if (m == 3) {
      auto eval = [&](double a, double b) {
        return g((theta + a * B.col(0) + b * B.col(1)).normalized());
      };
      const double fpa = eval(h, 0), fma = eval(-h, 0);
      const double fpb = eval(0, h), fmb = eval(0, -h);
      const double fab = eval(h, h);
      const double ga = (fpa - fma) / (2 * h), gb = (fpb - fmb) / (2 * h);
      const double haa = (fpa - 2 * val + fma) / (h * h);
      const double hbb = (fpb - 2 * val + fmb) / (h * h);
      const double hab = (fab - fpa - fpb + val) / (h * h);
      double da, db;
      const double det = haa * hbb - hab * hab;
      if (det > 0.0 && haa < 0.0) {
        da = -(hbb * ga - hab * gb) / det;
        db = -(haa * gb - hab * ga) / det;
      } else {
        const double gn = std::hypot(ga, gb);
        da = gn > 0 ? ga / gn * h : 0.0;
        db = gn > 0 ? gb / gn * h : 0.0;
      }
      const double step = std::hypot(da, db);
      if (step > 2.0 * h) {
        da *= 2.0 * h / step;
        db *= 2.0 * h / step;
      }
      const double cand = eval(da, db);
      const double local_best = std::max({fpa, fma, fpb, fmb, fab, cand});
      if (cand >= local_best && cand > val) {
        theta = (theta + da * B.col(0) + db * B.col(1)).normalized();
        val = cand;
        h = std::max(0.3 * h, std::min(step, h));
      } else if (local_best > val) {
        if (fpa == local_best) theta = (theta + h * B.col(0)).normalized();
        else if (fma == local_best) theta = (theta - h * B.col(0)).normalized();
        else if (fpb == local_best) theta = (theta + h * B.col(1)).normalized();
        else if (fmb == local_best) theta = (theta - h * B.col(1)).normalized();
        else theta = (theta + h * B.col(0) + h * B.col(1)).normalized();
        val = local_best;
        h *= 0.6;
      } else {
        h *= 0.3;
      }
    } else {
      // Alternating golden-section sweeps along the tangent axes.
      for (int c = 0; c < m - 1; ++c) {
        Eigen::VectorXd base = theta;
        const Eigen::VectorXd axis = B.col(c);
        double best_s = 0.0;
        auto g1 = [&](double s) { return g((base + s * axis).normalized()); };
        const double gr = 0.6180339887498949;
        double a = -h, b = h;
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = g1(x1), f2 = g1(x2);
        for (int it = 0; it < 40; ++it) {
          if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = g1(x2);
          } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = g1(x1);
          }
        }
        best_s = f1 > f2 ? x1 : x2;
        const double cand = g1(best_s);
        if (cand > val) {
          val = cand;
          theta = (base + best_s * axis).normalized();
        }
      }
      h *= 0.4;
    }
    if (val - before <= 1e-14 * std::abs(val)) ++stalled;
  }
  return val;
}

// Panel boundaries on the circle: the given breakpoints, each normalized to
// [0, 2pi), sorted and deduplicated.
std::vector<double> circle_panels(std::vector<double> breaks) {
  for (double& b : breaks) {
    b = std::fmod(b, 2.0 * M_PI);
    if (b < 0) b += 2.0 * M_PI;
  }
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               breaks.end());
  return breaks;
}

struct CentroidMoment {
  // Evaluates the body moment int_{S^{m-1}} |<u,xi>|^p r_K(xi)^{m+p} d xi.
  int m = 0;
  double p = 0.0;
  StarBody K;
  // m == 2: panel Gauss rule split at the cosine zeros and the body's kinks.
  GaussRule panel;
  // m >= 3: rule rotated so z = <u, xi> is the polar coordinate; z^p is then
  // the (exact) Jacobi weight and the kink never meets the rule's interior.
  std::vector<double> znodes, zweights;      // fold z^p (1-z^2)^{(m-3)/2} dz
  std::vector<Eigen::VectorXd> sub_nodes;    // S^{m-2} directions
  std::vector<double> sub_weights;

  void init(const StarBody& body, double p_) {
    m = body.dim;
    p = p_;
    K = body;
    if (m == 2) {
      panel = gauss_legendre(48);
      return;
    }
    const int kz = 16;
    const double half = 0.5 * (m - 3.0);
    const GaussRule gj = gauss_jacobi(kz, half, p);
    const double scale = std::pow(2.0, -1.0 - p - half);
    for (int i = 0; i < kz; ++i) {
      const double z = 0.5 * (gj.nodes[i] + 1.0);
      znodes.push_back(z);
      zweights.push_back(gj.weights[i] * scale *
                         ((m == 3) ? 1.0 : std::pow(1.0 + z, half)));
    }
    if (m == 3) {
      const int az = 48;
      for (int j = 0; j < az; ++j) {
        const double a = 2.0 * M_PI * (j + 0.5) / az;
        sub_nodes.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
        sub_weights.push_back(2.0 * M_PI / az);
      }
    } else {
      const QuadratureRule sub = sphere_rule(m - 1, 16);
      sub_nodes = sub.nodes;
      sub_weights = sub.weights;
    }
  }

  double operator()(const Eigen::VectorXd& u) const {
    if (m == 2) {
      const double base = std::atan2(u[1], u[0]);
      std::vector<double> breaks = K.kink_angles;
      breaks.push_back(base + 0.5 * M_PI);
      breaks.push_back(base + 1.5 * M_PI);
      const std::vector<double> bounds = circle_panels(std::move(breaks));
      double sum = 0.0;
      Eigen::VectorXd xi(2);
      for (std::size_t j = 0; j < bounds.size(); ++j) {
        const double a = bounds[j];
        const double b = (j + 1 < bounds.size()) ? bounds[j + 1] : bounds[0] + 2.0 * M_PI;
        const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t i = 0; i < panel.nodes.size(); ++i) {
          const double ang = mid + half * panel.nodes[i];
          xi << std::cos(ang), std::sin(ang);
          sum += half * panel.weights[i] * pow_abs(std::cos(ang - base), p) *
                 std::pow(K.radial(xi), 2.0 + p);
        }
      }
      return sum;
    }
    const Eigen::MatrixXd tangent = tangent_basis(u);
    Eigen::VectorXd xi(m), ortho(m);
    double sum = 0.0;
    for (std::size_t j = 0; j < sub_nodes.size(); ++j) {
      ortho = tangent * sub_nodes[j];
      for (std::size_t i = 0; i < znodes.size(); ++i) {
        const double z = znodes[i];
        const double s = std::sqrt(1.0 - z * z);
        const double w = zweights[i] * sub_weights[j];
        xi = z * u + s * ortho;
        double f = std::pow(K.radial(xi), m + p);
        xi = -z * u + s * ortho;
        f += std::pow(K.radial(xi), m + p);
        sum += w * f;
      }
    }
    return sum;
  }
};

}  // namespace

double support(const StarBody& K, const Eigen::VectorXd& u) {
  const double un = u.norm();
  if (un == 0.0) return 0.0;
  const Eigen::VectorXd uhat = u / un;

  double best = -std::numeric_limits<double>::infinity();
  std::size_t best_i = 0;
  for (std::size_t i = 0; i < K.grid.size(); ++i) {
    const double v = uhat.dot(K.grid[i]) * K.grid_radial[i];
    if (v > best) {
      best = v;
      best_i = i;
    }
  }

  if (K.dim == 2) {
    const double spacing = 2.0 * M_PI / K.grid.size();
    const double a0 = std::atan2(K.grid[best_i][1], K.grid[best_i][0]);
    auto g = [&](double a) {
      Eigen::VectorXd th(2);
      th << std::cos(a), std::sin(a);
      return uhat.dot(th) * K.radial(th);
    };
    best = std::max(best, golden_max(g, a0 - spacing, a0 + spacing, 48));
  } else {
    const double spacing = 1.3 * std::sqrt(K.dim * omega(K.dim) / K.grid.size());
    auto g = [&](const Eigen::VectorXd& th) { return uhat.dot(th) * K.radial(th); };
    best = refine_max_sphere(g, K.grid[best_i], spacing, best);
  }
  return un * best;
}

StarBody polar(const StarBody& K) {
  StarBody copy = K;
  const int grid_size = K.dim == 3 ? 512 : 0;
  return make_star_body(
      K.dim, [copy](const Eigen::VectorXd& u) { return 1.0 / support(copy, u); },
      K.symmetric, grid_size);
}

double volume(const StarBody& K, int order) {
  const int m = K.dim;
  if (m == 2) {
    const int panels = order > 0 ? std::max(8, order) : 64;
    std::vector<double> breaks = K.kink_angles;
    for (int j = 0; j < panels; ++j) breaks.push_back(2.0 * M_PI * j / panels);
    const std::vector<double> bounds = circle_panels(std::move(breaks));
    const GaussRule g = gauss_legendre(8);
    double sum = 0.0;
    Eigen::VectorXd xi(2);
    for (std::size_t j = 0; j < bounds.size(); ++j) {
      const double a = bounds[j];
      const double b = (j + 1 < bounds.size()) ? bounds[j + 1] : bounds[0] + 2.0 * M_PI;
      const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
      for (int i = 0; i < 8; ++i) {
        const double ang = mid + half * g.nodes[i];
        xi << std::cos(ang), std::sin(ang);
        const double r = K.radial(xi);
        sum += half * g.weights[i] * r * r;
      }
    }
    return 0.5 * sum;
  }
  const QuadratureRule rule =
      (m == 3) ? sphere_rule(3, order > 0 ? order : 48)
               : sphere_rule(m, order > 0 ? order : 24);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * std::pow(K.radial(rule.nodes[i]), m);
  }
  return sum / m;
}

StarBody centroid_body(const StarBody& K, double p) {
  if (!(p > 1.0)) throw std::domain_error("centroid_body: p must be > 1");
  const int m = K.dim;
  const double vol = volume(K);
  const double scale = 1.0 / (norm_a(m, p) * vol * (m + p));

  auto moment = std::make_shared<CentroidMoment>();
  moment->init(K, p);

  const double pinv = 1.0 / p;
  auto gauge_of_result = [moment, scale, pinv](const Eigen::VectorXd& u) {
    // radial of the polar of Gamma_p K: 1 / h_{Gamma_p K}(u)
    return 1.0 / std::pow(scale * (*moment)(u), pinv);
  };
  StarBody polar_of_gamma =
      make_star_body(m, gauge_of_result, true, m == 3 ? 384 : 256);
  StarBody result = make_star_body(
      m,
      [polar_of_gamma](const Eigen::VectorXd& th) {
        return 1.0 / support(polar_of_gamma, th);
      },
      true, m == 3 ? 192 : 0);
  return result;
}

double bp_gap(const StarBody& K, double p) {
  const StarBody gamma = centroid_body(K, p);
  // r_Gamma is smooth and each evaluation is a support maximization, so a
  // moderate spectral order is plenty.
  const int order = K.dim == 3 ? 28 : 0;
  return volume(gamma, order) / volume(K) - 1.0;
}

Eigen::VectorXd HomogeneousConvex::grad(const Eigen::VectorXd& y) const {
  if (gradient) return gradient(y);
  const double h = 1e-5 * std::max(y.norm(), 1e-8);
  Eigen::VectorXd g(y.size());
  Eigen::VectorXd yp = y, ym = y;
  for (int i = 0; i < y.size(); ++i) {
    yp[i] += h;
    ym[i] -= h;
    g[i] = (value(yp) - value(ym)) / (2.0 * h);
    yp[i] = y[i];
    ym[i] = y[i];
  }
  return g;
}

HomogeneousConvex make_quadratic_convex(const Eigen::MatrixXd& M) {
  HomogeneousConvex c;
  c.dim = static_cast<int>(M.rows());
  c.degree = 2.0;
  Eigen::MatrixXd Mc = M;
  c.value = [Mc](const Eigen::VectorXd& y) { return y.dot(Mc * y); };
  c.gradient = [Mc](const Eigen::VectorXd& y) { return Eigen::VectorXd(2.0 * Mc * y); };
  return c;
}

HomogeneousConvex make_power_convex(int m, double degree) {
  HomogeneousConvex c;
  c.dim = m;
  c.degree = degree;
  c.value = [degree](const Eigen::VectorXd& y) { return std::pow(y.norm(), degree); };
  c.gradient = [degree](const Eigen::VectorXd& y) {
    const double n = y.norm();
    if (n == 0.0) return Eigen::VectorXd(Eigen::VectorXd::Zero(y.size()));
    return Eigen::VectorXd(degree * std::pow(n, degree - 2.0) * y);
  };
  return c;
}

StarBody level_body(const HomogeneousConvex& C) {
  const double inv_deg = 1.0 / C.degree;
  double vmin = std::numeric_limits<double>::infinity(), vmax = 0.0;
  for (const auto& th : direction_grid(C.dim)) {
    const double v = C.value(th);
    if (!(v >= 0.0) || !std::isfinite(v))
      throw DegeneracyError("level_body: C must be nonnegative and finite");
    vmin = std::min(vmin, v);
    vmax = std::max(vmax, v);
  }
  if (!(vmin > 1e-16 * vmax))
    throw DegeneracyError("level_body: C vanishes on the sphere grid");
  auto val = C.value;
  return make_star_body(
      C.dim, [val, inv_deg](const Eigen::VectorXd& th) { return std::pow(val(th), -inv_deg); },
      true);
}

HomogeneousConvex legendre(const HomogeneousConvex& C) {
  if (!(C.degree > 1.0)) throw std::domain_error("legendre: degree must be > 1");
  const double q = C.degree;
  const double p = q / (q - 1.0);
  const StarBody kc = level_body(C);
  HomogeneousConvex conj;
  conj.dim = C.dim;
  conj.degree = p;
  const double front = std::pow(q, -p / q) / p;
  conj.value = [kc, front, p](const Eigen::VectorXd& x) {
    const double xn = x.norm();
    if (xn == 0.0) return 0.0;
    const double h = support(kc, x / xn);
    return front * std::pow(xn * h, p);
  };
  return conj;
}

double polar_legendre_check(const HomogeneousConvex& C) {
  const double q = C.degree;
  const double p = q / (q - 1.0);
  const HomogeneousConvex cstar = legendre(C);
  const StarBody k_cstar = level_body(cstar);
  const StarBody k_polar = polar(level_body(C));
  const double factor = std::pow(q, 1.0 / q) * std::pow(p, 1.0 / p);
  double worst = 0.0;
  for (const auto& u : direction_grid(C.dim)) {
    const double lhs = k_cstar.radial(u);
    const double rhs = factor * k_polar.radial(u);
    worst = std::max(worst, std::abs(lhs - rhs) / k_polar.radial(u));
  }
  return worst;
}

}  // namespace afftrace
