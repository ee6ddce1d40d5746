#pragma once

#include <Eigen/Dense>

#include "afftrace/constants.hpp"
#include "afftrace/convex.hpp"
#include "afftrace/report.hpp"
#include "afftrace/test_function.hpp"

namespace afftrace {

struct TraceOptions {
  HalfspaceOrders orders{96, 256};
  int time_order = 64;        // Gauss order in t
  int hemisphere_order = 96;  // body-moment integrals
  double tol_equality = 5e-3;
  double tol_identity = 1e-6;
};

// Directional data of f tabulated on an S^{n-2} rule: the p-th power of every
// directional gradient norm, plus the dt / full-gradient moments, all from a
// single sweep of the half-space product rule.
struct GradientProfile {
  int n = 0;
  double p = 0.0;
  std::vector<Eigen::VectorXd> xi;
  std::vector<double> xi_weight;
  std::vector<double> dir_p;       // int |grad_xi f|^p
  double dt_p = 0.0;               // int |df/dt|^p
  double tilde_p = 0.0;            // int |grad_x f|^p
  Eigen::MatrixXd second_moment;   // int grad_x f grad_x f^T; singular iff some
                                   // directional norm vanishes (any p)

  double min_dir_p() const;
  double Zp() const;  // (int ||grad_xi f||^{1-n} d xi)^{1/(1-n)}; throws on degeneracy
};

GradientProfile gradient_profile(const TestFunction& f, double p,
                                 const TraceOptions& opt = {});

// ||grad_xi f||_{L^p(R^n_+)} along a single direction (independent quadrature).
double directional_norm(const TestFunction& f, const Eigen::VectorXd& xi, double p,
                        const TraceOptions& opt = {});

double dt_norm(const TestFunction& f, double p, const TraceOptions& opt = {});
double tilde_grad_norm(const TestFunction& f, double p, const TraceOptions& opt = {});

// Boundary norm (int |f(0,x)|^{p(n-1)/(n-p)} dx)^{(n-p)/(n-1)}.
double trace_norm(const TestFunction& f, double p, const TraceOptions& opt = {});

struct EnergyData {
  double value = 0.0;   // E_p(f) = c_{n-1,p} Z_p(f)
  double Zp = 0.0;
  double vol_Lf = 0.0;  // Z_p^{1-n} / (n-1)
};

EnergyData affine_energy(const TestFunction& f, double p, const TraceOptions& opt = {});

// The convex data attached to f: alpha_f, D_f^*, C_f^* and its Legendre
// transform, the t = 0 slice body K_{f,0}, and the gradient body L_f.
struct CfData {
  double alpha = 0.0;
  double Zp = 0.0;
  HomogeneousConvex Dstar;  // on R^{n-1}, degree p
  HomogeneousConvex Cstar;  // on R^n, degree p
  HomogeneousConvex C;      // Legendre transform of Cstar, degree q
  HomogeneousConvex Df;     // Legendre transform of Dstar, degree q
  StarBody K0;              // {D_f <= 1}
  StarBody Lf;              // gauge xi -> ||grad_xi f||_p
};

CfData build_cf(const TestFunction& f, double p, const TraceOptions& opt = {});

// The optimal abstract-norm trace constant by two routes: through the body
// moment over (K_C)_+ and through the intermediate hemisphere integral.
struct ConstantRoutes {
  double body_moment = 0.0;
  double spherical = 0.0;
};

ConstantRoutes sharp_constant_routes(const HomogeneousConvex& C, double p, int order = 96);

// trace_norm(f,p) / (K_{n,C} * int C*(grad f)); <= 1 for admissible f, = 1 on
// the extremal family of C.
double gauge_trace_ratio(const TestFunction& f, const HomogeneousConvex& C, double p,
                     const TraceOptions& opt = {});

// The affine trace inequality: trace <= p A_{n,p} E_p(f)^{p-1} dt_norm.
VerificationReport verify_affine(const TestFunction& f, double p,
                                 const TraceOptions& opt = {});

struct CentroidSliceResult {
  double max_radial_discrepancy = 0.0;
  double volume_rel_error = 0.0;
};

// K_{f,0} (Legendre route) against the scaled centroid body of L_f, plus the
// volume identity.
CentroidSliceResult centroid_slice_check(const TestFunction& f, double p, const TraceOptions& opt = {});

// Every displayed link of the main proof chain, evaluated numerically.
VerificationReport proof_chain(const TestFunction& f, double p,
                               const TraceOptions& opt = {});

// Step-by-step evaluation of the closed-form constant d_1; returns the
// relative gap to p * A_{n,p}.
double appendix_chain(const Dimensions& dims);

// The Young-form chain: trace <= d_2 (E_p^p + dt^p) <= d_2 int(|grad_x f|^p + |df/dt|^p).
VerificationReport young_form(const TestFunction& f, double p,
                              const TraceOptions& opt = {});

}  // namespace afftrace
