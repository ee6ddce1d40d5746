#pragma once

#include <Eigen/Dense>
#include <functional>

#include "afftrace/star_body.hpp"

namespace afftrace {

// Support function h_K(u) = max_{z in K} <u, z> for convex K (caller's
// responsibility): grid scan plus golden-section refinement.
double support(const StarBody& K, const Eigen::VectorXd& u);

// Polar body: r_{K°}(u) = 1 / h_K(u). Requires 0 interior to K.
StarBody polar(const StarBody& K);

// vol(K) = (1/m) int_{S^{m-1}} r_K^m. Order 0 selects per-dimension defaults.
double volume(const StarBody& K, int order = 0);

// L_p centroid body: h_{Gamma_p K}^p(u) = (1/(a_{m,p} vol K)) int_K |<u,z>|^p dz,
// normalized so the ball is fixed. Result is convex and symmetric.
StarBody centroid_body(const StarBody& K, double p);

// vol(Gamma_p K)/vol(K) - 1; nonnegative for every convex body, zero exactly
// at 0-symmetric ellipsoids.
double bp_gap(const StarBody& K, double p);

// An even convex function, positive off 0, homogeneous of degree `degree` > 1
// (equivalently a power of a norm).
struct HomogeneousConvex {
  int dim = 0;
  double degree = 2.0;
  std::function<double(const Eigen::VectorXd&)> value;
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> gradient;  // optional

  // Analytic gradient when available, central finite differences otherwise.
  Eigen::VectorXd grad(const Eigen::VectorXd& y) const;
};

HomogeneousConvex make_quadratic_convex(const Eigen::MatrixXd& M);  // <My, y>
HomogeneousConvex make_power_convex(int m, double degree);          // |y|^degree

// Legendre transform C*(x) = sup_z (<x,z> - C(z)), computed through the
// homogeneity reduction C*(x) = (1/p) q^{-p/q} h_{K_C}(x)^p with q = degree,
// 1/p + 1/q = 1. The reduction is validated against brute-force maximization
// in the test suite before being relied on.
HomogeneousConvex legendre(const HomogeneousConvex& C);

// K_C = {C <= 1}; r_{K_C}(theta) = C(theta)^{-1/degree}.
StarBody level_body(const HomogeneousConvex& C);

// Max relative radial gap between K_{C*} and q^{1/q} p^{1/p} K_C° over the
// direction grid.
double polar_legendre_check(const HomogeneousConvex& C);

}  // namespace afftrace
