#pragma once

#include <optional>

namespace fracops {

/// ln Gamma(x) for x > 0.
double log_gamma(double x);

/// Regularized incomplete beta function I_x(a, b).
double beta_inc_reg(double a, double b, double x);

/// Inverse of x -> I_x(a, b): returns x with I_x(a, b) = p.
double beta_inverse(double a, double b, double p);

/// Surface area of the unit sphere S^{n-1}, 2 pi^{n/2} / Gamma(n/2).
double sphere_area(int n);

/// Normalizing constant of sqrt(-Delta) in R^n: Gamma((n+1)/2) pi^{-(n+1)/2}.
double half_laplacian_constant(int n);

/// Named constants of the fractional Laplacian of order 2s in R^n.
///
///   c_ns      normalizes (-Delta)^s = c_ns P.V. int (u(x)-u(x+y)) |y|^{-n-2s} dy
///   q_ns      value of (-Delta)^s (1-|x|^2)^s_+ inside the unit ball
///   a_ns      constant of the Poisson kernel of the unit ball
///   kappa_ns  constant of the fundamental solution kappa |x|^{2s-n}; empty if n <= 2s
struct OperatorConstants {
  int n = 1;
  double s = 0.5;
  double c_ns = 0.0;
  double q_ns = 0.0;
  double a_ns = 0.0;
  std::optional<double> kappa_ns;
};

/// Throws DomainError unless n in {1,2,3} and 0 < s < 1.
void check_order(int n, double s);

OperatorConstants constants(int n, double s);

}  // namespace fracops
