#pragma once

#include <Eigen/Dense>
#include <functional>

#include "afftrace/convex.hpp"
#include "afftrace/quadrature.hpp"

namespace afftrace {

// A smooth function on the closed half-space R^n_+ = {(t, x)}, with explicit
// first derivatives and decay metadata. Derivatives are carried analytically
// whenever possible; finite differences serve as a validation oracle only.
struct TestFunction {
  int n = 0;
  std::function<double(double, const Eigen::VectorXd&)> value;
  std::function<double(double, const Eigen::VectorXd&)> dt;
  std::function<Eigen::VectorXd(double, const Eigen::VectorXd&)> grad_x;
  DecayProfile decay;
  bool analytic = true;
};

// Parameters of the equality family
//   f(t,x) = sign * gamma * ((lambda t + delta)^q + |B(x - x0)|^q)^{-(n-p)/p},
// q = p/(p-1). At p = 2 this is ((lambda t + delta)^2 + |B(x-x0)|^2)^{-(n-2)/2}.
struct ExtremalParams {
  int n = 3;
  double p = 2.0;
  double lambda = 1.0;
  double delta = 1.0;
  Eigen::MatrixXd B;        // invertible (n-1) x (n-1)
  Eigen::VectorXd x0;       // point in R^{n-1}
  double gamma = 1.0;
  int sign = 1;
};

TestFunction extremal(const ExtremalParams& params);

// Block matrix (lambda; B) of the half-space affine group.
struct AffineFrame {
  double lambda = 1.0;
  Eigen::MatrixXd B;
};

// y -> f(frame . y) with chain-rule derivatives.
TestFunction gl_pullback(const TestFunction& f, const AffineFrame& frame);

// f = gamma * C(t + delta, x - x0)^{-(n-p)/p} for a q-homogeneous convex C
// on R^n, the equality family of the abstract-norm trace inequality.
TestFunction gauge_extremal(const HomogeneousConvex& C, int n, double p, double gamma,
                              double delta, const Eigen::VectorXd& x0);

// amp * exp(-at (t - t0)^2 - sum_i ax_i (x_i - c_i)^2); smooth, rapidly
// decaying, generically non-extremal.
TestFunction gaussian_profile(int n, double amp, double at, double t0,
                              const Eigen::VectorXd& ax, const Eigen::VectorXd& center);

// Largest relative mismatch between the declared derivatives and central
// finite differences of `value` at `npoints` pseudo-random points.
double max_derivative_mismatch(const TestFunction& f, int npoints, unsigned long long seed);

}  // namespace afftrace
