#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "afftrace/star_body.hpp"

namespace afftrace {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussRule gauss_legendre(int k);     // [-1, 1]
GaussRule gauss_legendre_01(int k);  // mapped to [0, 1]
GaussRule gauss_laguerre(int k);     // weight e^{-t} on (0, inf)
GaussRule gauss_jacobi(int k, double alpha, double beta);  // weight (1-x)^a (1+x)^b on [-1,1]

enum class QuadDomain { Sphere, Hemisphere, HalfLine, Product };

struct QuadratureRule {
  QuadDomain domain;
  int dimension = 0;  // ambient dimension m for S^{m-1}; 1 for half-line
  std::vector<Eigen::VectorXd> nodes;
  std::vector<double> weights;

  double integrate(const std::function<double(const Eigen::VectorXd&)>& f) const;
};

// Rule on S^{m-1} exact (m <= 3) or convergent (m >= 4, recursive product in
// spherical coordinates) for spherical polynomials up to `order`. Weights sum
// to m*omega_m exactly.
QuadratureRule sphere_rule(int m, int order);

// Restriction to {theta_1 > 0}; weights sum to m*omega_m / 2.
QuadratureRule hemisphere_rule(int m, int order);

// Rule integrating f against theta_1^exponent d theta over S^{m-1}_+, m >= 3.
// Exponents in (-1, 0) are handled by the substitution z = u^{1/(1+exponent)}.
QuadratureRule hemisphere_moment_rule(int m, int order, double exponent);

// Gauss-Laguerre with the e^{-t} weight folded back in, so that
// sum w_i f(t_i) integrates f = e^{-t} * (polynomial of degree <= 2*order-1)
// over (0, inf) exactly.
QuadratureRule halfline_rule(int order);

// Mapped Gauss-Legendre on (0, inf) via t = scale * s / (1 - s).
QuadratureRule halfline_mapped_rule(int order, double scale);

// Composite Gauss-Legendre on the circle: `panels` arcs with `k` nodes each,
// panel boundaries at multiples of 2*pi/panels.
QuadratureRule circle_panel_rule(int panels, int k);

// Algebraic decay of an integrand at infinity: |g(y)| ~ |y|^{-power} beyond
// radius ~ scale.
struct DecayProfile {
  double power = 0.0;
  double scale = 1.0;
};

struct HalfspaceOrders {
  int radial = 96;
  int angular = 256;
};

struct HalfspaceIntegral {
  double value = 0.0;
  double tail_bound = 0.0;
  bool decay_ok = true;
};

// Integral over R^n_+ = {(t, x) : t > 0, x in R^{n-1}} by a mapped product
// rule: Gauss-Legendre in t and in the radial x variable (t = scale*s/(1-s)),
// a sphere rule in the x direction. n >= 3.
HalfspaceIntegral integrate_halfspace(
    const std::function<double(double, const Eigen::VectorXd&)>& f, int n,
    const DecayProfile& decay, const HalfspaceOrders& orders = {});

// Integral over R^m (the boundary hyperplane), spherical-radial product rule.
HalfspaceIntegral integrate_plane(const std::function<double(const Eigen::VectorXd&)>& f,
                                  int m, const DecayProfile& decay,
                                  const HalfspaceOrders& orders = {});

// int_{K cap R^n_+} y_1^exponent dy by the spherical-radial formula
// (1/(exponent+n)) int_{S^{n-1}_+} theta_1^exponent r_K(theta)^{exponent+n}.
// Requires exponent > -1.
double moment_over_body_plus(const StarBody& K, double exponent, int order = 96);

}  // namespace afftrace
