#pragma once

namespace afftrace {

// Ambient dimension n >= 3 with integrability exponent p in (1, n).
// The dual exponent q is derived from p on construction and never supplied
// independently.
struct Dimensions {
  int n;
  double p;
  double q;

  Dimensions(int n_, double p_);
};

// Volume of the unit ball of (real) dimension s > 0: pi^{s/2} / Gamma(s/2+1).
double omega(double s);

// Sharp constant of the classical L^2 trace inequality, n >= 3.
double sharp_K(int n);

// Sharp constant of the affine L^p trace inequality.
double sharp_A(const Dimensions& dims);

// Normalization constant c_{m,p} of the affine energy, m >= 2, p > 1.
// At p = 2 it reduces to m^{(m+2)/(2m)} omega_m^{1/m}.
double norm_c(int m, double p);

// Centroid-body normalization a_{m,p} = omega_{m+p} / (omega_2 omega_m omega_{p-1}),
// chosen so that the L_p centroid body of a ball is the ball itself.
double norm_a(int m, double p);

// max_{t >= 0} (t^{1/q} - t) = q^{-p/q} / p  for q > 1.
double ell(double q);

// int_0^1 t^{qn-q-n} (1-t^q)^{(n-1)/q} dt in Gamma closed form.
double beta_moment(const Dimensions& dims);

struct ConstantSet {
  double K_n;    // classical sharp trace constant
  double A_np;   // sharp affine constant
  double c_np;   // c_{n,p}
  double a_np;   // a_{n,p}
  double d1;     // p * A_np
  double d2;     // (p^{1/p} q^{1/q})^{-1} * d1, the sharp Young-form constant
  double ell_q;  // q^{-p/q} / p
};

ConstantSet constant_set(const Dimensions& dims);

}  // namespace afftrace
