#include "afftrace/quadrature.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <stdexcept>

#include "afftrace/constants.hpp"
#include "afftrace/gamma.hpp"

namespace afftrace {

namespace {

GaussRule compute_gauss_legendre(int k) {
  GaussRule r;
  r.nodes.resize(k);
  r.weights.resize(k);
  for (int i = 0; i < (k + 1) / 2; ++i) {
    // Newton iteration on P_k, starting from the Chebyshev-like guess.
    double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = k * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    r.nodes[i] = -x;
    r.weights[i] = w;
    r.nodes[k - 1 - i] = x;
    r.weights[k - 1 - i] = w;
  }
  return r;
}

const GaussRule& cached_gauss_legendre(int k) {
  static std::map<int, GaussRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, compute_gauss_legendre(k)).first;
  return it->second;
}

Eigen::VectorXd embed_polar(double z, const Eigen::VectorXd& sub) {
  Eigen::VectorXd v(sub.size() + 1);
  v[0] = z;
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  v.tail(sub.size()) = s * sub;
  return v;
}

void normalize_weights(QuadratureRule& rule, double target) {
  double sum = 0.0;
  for (double w : rule.weights) sum += w;
  const double scale = target / sum;
  for (double& w : rule.weights) w *= scale;
}

}  // namespace

GaussRule gauss_legendre(int k) {
  if (k < 1) throw std::domain_error("gauss_legendre: order must be >= 1");
  return cached_gauss_legendre(k);
}

GaussRule gauss_legendre_01(int k) {
  GaussRule r = gauss_legendre(k);
  for (int i = 0; i < k; ++i) {
    r.nodes[i] = 0.5 * (r.nodes[i] + 1.0);
    r.weights[i] *= 0.5;
  }
  return r;
}

GaussRule gauss_laguerre(int k) {
  if (k < 1) throw std::domain_error("gauss_laguerre: order must be >= 1");
  // Golub-Welsch on the monic Laguerre Jacobi matrix: alpha_i = 2i+1, beta_i = i^2.
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i < k; ++i) {
    J(i, i) = 2.0 * i + 1.0;
    if (i + 1 < k) {
      J(i, i + 1) = i + 1.0;
      J(i + 1, i) = i + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussRule r;
  r.nodes.resize(k);
  r.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    r.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    r.weights[i] = v0 * v0;  // mu_0 = int_0^inf e^{-t} dt = 1
  }
  return r;
}

GaussRule gauss_jacobi(int k, double alpha, double beta) {
  if (k < 1) throw std::domain_error("gauss_jacobi: order must be >= 1");
  if (alpha <= -1.0 || beta <= -1.0)
    throw std::domain_error("gauss_jacobi: exponents must exceed -1");
  const double s = alpha + beta;
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(k, k);
  J(0, 0) = (beta - alpha) / (s + 2.0);
  for (int i = 1; i < k; ++i) {
    const double d = 2.0 * i + s;
    J(i, i) = (beta * beta - alpha * alpha) / (d * (d + 2.0));
    const double b = 4.0 * i * (i + alpha) * (i + beta) * (i + s) /
                     (d * d * (d + 1.0) * (d - 1.0));
    J(i, i - 1) = std::sqrt(b);
    J(i - 1, i) = J(i, i - 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  const double mu0 = std::exp((s + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) +
                              log_gamma(beta + 1.0) - log_gamma(s + 2.0));
  GaussRule r;
  r.nodes.resize(k);
  r.weights.resize(k);
  for (int i = 0; i < k; ++i) {
    r.nodes[i] = es.eigenvalues()[i];
    const double v0 = es.eigenvectors()(0, i);
    r.weights[i] = mu0 * v0 * v0;
  }
  return r;
}

double QuadratureRule::integrate(const std::function<double(const Eigen::VectorXd&)>& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes.size(); ++i) sum += weights[i] * f(nodes[i]);
  return sum;
}

QuadratureRule sphere_rule(int m, int order) {
  if (m < 2) throw std::domain_error("sphere_rule: m must be >= 2");
  if (order < 1) throw std::domain_error("sphere_rule: unsupported order");
  QuadratureRule rule;
  rule.domain = QuadDomain::Sphere;
  rule.dimension = m;
  if (m == 2) {
    int count = std::max(16, order + 1);
    count = ((count + 7) / 8) * 8;
    const double w = 2.0 * M_PI / count;
    for (int i = 0; i < count; ++i) {
      const double a = 2.0 * M_PI * (i + 0.5) / count;
      rule.nodes.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
      rule.weights.push_back(w);
    }
    return rule;
  }
  const int kz = std::max(2, (order + 2) / 2);
  // The (1 - z^2)^{(m-3)/2} surface factor is the Jacobi weight, so the
  // z-part stays polynomially exact in every dimension.
  const GaussRule gz =
      (m == 3) ? gauss_legendre(kz) : gauss_jacobi(kz, 0.5 * (m - 3.0), 0.5 * (m - 3.0));
  const QuadratureRule sub = sphere_rule(m - 1, order);
  for (int i = 0; i < kz; ++i) {
    const double z = gz.nodes[i];
    for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
      rule.nodes.push_back(embed_polar(z, sub.nodes[j]));
      rule.weights.push_back(gz.weights[i] * sub.weights[j]);
    }
  }
  normalize_weights(rule, m * omega(m));
  return rule;
}

QuadratureRule hemisphere_rule(int m, int order) {
  if (m < 2) throw std::domain_error("hemisphere_rule: m must be >= 2");
  if (order < 1) throw std::domain_error("hemisphere_rule: unsupported order");
  QuadratureRule rule;
  rule.domain = QuadDomain::Hemisphere;
  rule.dimension = m;
  if (m == 2) {
    const int k = std::max(8, order + 1);
    const GaussRule g = gauss_legendre(k);
    for (int i = 0; i < k; ++i) {
      const double a = 0.5 * M_PI * g.nodes[i];
      rule.nodes.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
      rule.weights.push_back(0.5 * M_PI * g.weights[i]);
    }
    return rule;
  }
  const QuadratureRule weighted = hemisphere_moment_rule(m, order, 0.0);
  rule.nodes = weighted.nodes;
  rule.weights = weighted.weights;
  normalize_weights(rule, 0.5 * m * omega(m));
  return rule;
}

QuadratureRule hemisphere_moment_rule(int m, int order, double exponent) {
  if (m < 3) throw std::domain_error("hemisphere_moment_rule: m must be >= 3");
  if (exponent <= -1.0)
    throw std::domain_error("hemisphere_moment_rule: exponent must be > -1");
  QuadratureRule rule;
  rule.domain = QuadDomain::Hemisphere;
  rule.dimension = m;
  const int kz = std::max(2, (order + 2) / 2);
  // On z in [0,1] the measure z^a (1-z^2)^{(m-3)/2} dz splits as the Jacobi
  // weight (1-x)^{(m-3)/2} (1+x)^a under x = 2z-1, with the smooth factor
  // ((1+z)/2)^{(m-3)/2} folded into the weights.
  const double half = 0.5 * (m - 3.0);
  const GaussRule gj = gauss_jacobi(kz, half, exponent);
  const QuadratureRule sub = sphere_rule(m - 1, order);
  const double measure_scale = std::pow(2.0, -1.0 - exponent - half);
  for (int i = 0; i < kz; ++i) {
    const double z = 0.5 * (gj.nodes[i] + 1.0);
    const double wz =
        gj.weights[i] * measure_scale * ((m == 3) ? 1.0 : std::pow(1.0 + z, half));
    for (std::size_t j = 0; j < sub.nodes.size(); ++j) {
      rule.nodes.push_back(embed_polar(z, sub.nodes[j]));
      rule.weights.push_back(wz * sub.weights[j]);
    }
  }
  return rule;
}

QuadratureRule halfline_rule(int order) {
  const GaussRule g = gauss_laguerre(order);
  QuadratureRule rule;
  rule.domain = QuadDomain::HalfLine;
  rule.dimension = 1;
  for (int i = 0; i < order; ++i) {
    rule.nodes.push_back((Eigen::VectorXd(1) << g.nodes[i]).finished());
    rule.weights.push_back(g.weights[i] * std::exp(g.nodes[i]));
  }
  return rule;
}

QuadratureRule halfline_mapped_rule(int order, double scale) {
  if (!(scale > 0.0)) throw std::domain_error("halfline_mapped_rule: scale must be > 0");
  const GaussRule g = gauss_legendre_01(order);
  QuadratureRule rule;
  rule.domain = QuadDomain::HalfLine;
  rule.dimension = 1;
  for (int i = 0; i < order; ++i) {
    const double s = g.nodes[i];
    const double t = scale * s / (1.0 - s);
    rule.nodes.push_back((Eigen::VectorXd(1) << t).finished());
    rule.weights.push_back(g.weights[i] * scale / ((1.0 - s) * (1.0 - s)));
  }
  return rule;
}

QuadratureRule circle_panel_rule(int panels, int k) {
  QuadratureRule rule;
  rule.domain = QuadDomain::Sphere;
  rule.dimension = 2;
  const GaussRule g = gauss_legendre(k);
  const double h = 2.0 * M_PI / panels;
  for (int j = 0; j < panels; ++j) {
    const double mid = (j + 0.5) * h;
    for (int i = 0; i < k; ++i) {
      const double a = mid + 0.5 * h * g.nodes[i];
      rule.nodes.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
      rule.weights.push_back(0.5 * h * g.weights[i]);
    }
  }
  return rule;
}

namespace {

QuadratureRule angular_rule_for(int m, int angular) {
  // Direction rule on S^{m-1} used inside product integrators.
  if (m == 2) {
    QuadratureRule rule;
    rule.domain = QuadDomain::Sphere;
    rule.dimension = 2;
    const double w = 2.0 * M_PI / angular;
    for (int i = 0; i < angular; ++i) {
      const double a = 2.0 * M_PI * (i + 0.5) / angular;
      rule.nodes.push_back((Eigen::VectorXd(2) << std::cos(a), std::sin(a)).finished());
      rule.weights.push_back(w);
    }
    return rule;
  }
  return sphere_rule(m, std::max(8, std::min(48, angular / 4)));
}

struct MappedHalfline {
  std::vector<double> t;
  std::vector<double> w;
  double t_max = 0.0;
};

// exp-sinh transformation r = scale * exp((pi/2) sinh u) with the trapezoid
// rule: exponentially convergent for integrands with algebraic behavior at
// both ends of (0, inf), fractional powers included.
MappedHalfline mapped_halfline(int order, double scale) {
  MappedHalfline m;
  m.t.resize(order);
  m.w.resize(order);
  const double U = 3.5;
  const double h = 2.0 * U / (order - 1);
  for (int i = 0; i < order; ++i) {
    const double u = -U + i * h;
    const double r = scale * std::exp(0.5 * M_PI * std::sinh(u));
    m.t[i] = r;
    m.w[i] = h * 0.5 * M_PI * std::cosh(u) * r;
    m.t_max = std::max(m.t_max, r);
  }
  return m;
}

}  // namespace

HalfspaceIntegral integrate_halfspace(
    const std::function<double(double, const Eigen::VectorXd&)>& f, int n,
    const DecayProfile& decay, const HalfspaceOrders& orders) {
  if (n < 3) throw std::domain_error("integrate_halfspace: n must be >= 3");
  const int m = n - 1;
  const double scale = decay.scale > 0.0 ? decay.scale : 1.0;
  // Polar parametrization y = r theta, theta in S^{n-1}_+ with theta_1 the
  // t-component; decaying profiles stay single-scale along every ray, which a
  // product of independently mapped half-lines does not.
  const MappedHalfline rr = mapped_halfline(orders.radial, scale);
  const QuadratureRule hemi =
      hemisphere_rule(n, std::min(128, std::max(16, orders.angular / 3)));

  HalfspaceIntegral out;
  double sum = 0.0;
  Eigen::VectorXd x(m);
  for (std::size_t a = 0; a < hemi.nodes.size(); ++a) {
    const Eigen::VectorXd& theta = hemi.nodes[a];
    const double wa = hemi.weights[a];
    double inner = 0.0;
    for (std::size_t j = 0; j < rr.t.size(); ++j) {
      const double r = rr.t[j];
      x = r * theta.tail(m);
      inner += rr.w[j] * std::pow(r, n - 1) * f(r * theta[0], x);
    }
    sum += wa * inner;
  }
  out.value = sum;

  // Tail estimate from the declared decay: probe |f| near the outermost
  // resolved radius and extend by the power law.
  const double R = rr.t_max;
  out.decay_ok = decay.power > n;
  if (out.decay_ok) {
    double sup = 0.0;
    const int probes = 6;
    for (int k = 0; k <= probes; ++k) {
      const double th = 0.5 * M_PI * k / probes;
      const double t = std::max(R * std::cos(th), 1e-12);
      x = Eigen::VectorXd::Zero(m);
      x[0] = R * std::sin(th);
      sup = std::max(sup, std::abs(f(t, x)));
    }
    out.tail_bound = sup * 0.5 * n * omega(n) * std::pow(R, n) / (decay.power - n);
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

HalfspaceIntegral integrate_plane(const std::function<double(const Eigen::VectorXd&)>& f,
                                  int m, const DecayProfile& decay,
                                  const HalfspaceOrders& orders) {
  if (m < 2) throw std::domain_error("integrate_plane: m must be >= 2");
  const double scale = decay.scale > 0.0 ? decay.scale : 1.0;
  const MappedHalfline rr = mapped_halfline(orders.radial, scale);
  const QuadratureRule ang = angular_rule_for(m, orders.angular);

  HalfspaceIntegral out;
  double sum = 0.0;
  Eigen::VectorXd x(m);
  for (std::size_t a = 0; a < ang.nodes.size(); ++a) {
    const double wa = ang.weights[a];
    for (std::size_t j = 0; j < rr.t.size(); ++j) {
      const double rho = rr.t[j];
      x = rho * ang.nodes[a];
      sum += rr.w[j] * std::pow(rho, m - 1) * wa * f(x);
    }
  }
  out.value = sum;

  const double R = rr.t_max;
  out.decay_ok = decay.power > m;
  if (out.decay_ok) {
    double sup = 0.0;
    for (std::size_t a = 0; a < ang.nodes.size(); a += std::max<std::size_t>(1, ang.nodes.size() / 8)) {
      x = R * ang.nodes[a];
      sup = std::max(sup, std::abs(f(x)));
    }
    out.tail_bound = sup * m * omega(m) * std::pow(R, m) / (decay.power - m);
  } else {
    out.tail_bound = std::numeric_limits<double>::infinity();
  }
  return out;
}

double moment_over_body_plus(const StarBody& K, double exponent, int order) {
  if (exponent <= -1.0)
    throw std::domain_error("moment_over_body_plus: exponent must be > -1");
  const int n = K.dim;
  if (n < 3) throw std::domain_error("moment_over_body_plus: body dimension must be >= 3");
  const QuadratureRule rule = hemisphere_moment_rule(n, order, exponent);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double r = K.radial(rule.nodes[i]);
    sum += rule.weights[i] * std::pow(r, exponent + n);
  }
  return sum / (exponent + n);
}

}  // namespace afftrace
