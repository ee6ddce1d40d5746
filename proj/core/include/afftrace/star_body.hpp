#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace afftrace {

using RadialFn = std::function<double(const Eigen::VectorXd&)>;

// A star-shaped body about the origin in R^m, stored by its radial function
// over unit directions. Operations that require convexity state it as a
// precondition; nothing is enforced structurally.
struct StarBody {
  int dim = 0;
  bool symmetric = true;
  RadialFn radial_fn;

  // Tabulated values on a canonical direction grid, used for scan-based
  // maximization and sampled checks.
  std::vector<Eigen::VectorXd> grid;
  std::vector<double> grid_radial;

  // Angles (dim == 2 only) where the radial function is not smooth; panel
  // integrators split at these.
  std::vector<double> kink_angles;

  double radial(const Eigen::VectorXd& unit_dir) const { return radial_fn(unit_dir); }

  // Minkowski gauge ||y||_K = |y| / r_K(y/|y|); 1-homogeneous, even when
  // the body is symmetric. Returns 0 at y = 0.
  double gauge(const Eigen::VectorXd& y) const;
};

// Canonical direction grids: 512 angles on S^1, 2048 Fibonacci points on S^2,
// a product-rule grid for m >= 4.
const std::vector<Eigen::VectorXd>& direction_grid(int m);

// Tabulates `radial` on the canonical grid (or a grid of `grid_size` points
// when given). The callable must be positive and continuous on the sphere.
StarBody make_star_body(int dim, RadialFn radial, bool symmetric, int grid_size = 0);

StarBody ball_body(int m, double r);

// {x : <Mx, x> <= 1} with M symmetric positive definite (checked).
struct Ellipsoid {
  Eigen::MatrixXd M;
};

StarBody ellipsoid_body(const Ellipsoid& e);

// Axis-aligned box prod_i [-h_i, h_i].
StarBody box_body(const Eigen::VectorXd& halfwidths);

// Convex polygon given by counter-clockwise vertices with the origin in its
// interior.
StarBody polygon_body(const std::vector<Eigen::Vector2d>& vertices, bool symmetric);

}  // namespace afftrace
