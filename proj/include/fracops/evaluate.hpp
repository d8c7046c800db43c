#pragma once

#include "fracops/fields.hpp"
#include "fracops/kernels.hpp"
#include "fracops/point.hpp"

namespace fracops {

/// Quadrature controls for pointwise operator evaluation.
struct QuadConfig {
  /// Fraction of the field's C^2 radius used as the singular shell.
  double near_radius_fraction = 1.0;
  /// Truncation radius of the mid field; 0 selects it automatically.
  double far_cutoff = 0.0;
  /// Angular resolution for n = 2, 3.
  int angular_order = 16;
  /// Gauss-Legendre points per dyadic piece of the singular shell.
  int radial_points = 24;
  double target_rel_err = 1e-6;

  void validate() const;
};

struct Evaluation {
  double value = 0.0;
  double err_est = 0.0;
  /// False when err_est exceeds the requested accuracy.
  bool accuracy_met = true;
};

/// Lu(x) = (1/2) int (2u(x) - u(x+y) - u(x-y)) K(dy).
Evaluation apply_operator(const Kernel& K, const ScalarField& u, const Point& x, const QuadConfig& cfg = {});

enum class Extremal { plus, minus };

/// Extremal operators of the class of kernels comparable to |y|^{-n-2s} with constants (lambda, Lambda):
///   M+ u(x) = (1/2) int { Lambda (d2u)_+ - lambda (d2u)_- } |y|^{-n-2s} dy,  d2u = u(x+y)+u(x-y)-2u(x),
/// and M- with the roles of lambda and Lambda swapped.
Evaluation apply_extremal(double lambda, double Lambda, Extremal which, double s, const ScalarField& u,
                          const Point& x, const QuadConfig& cfg = {});

/// a_ns int_{|z|>r} r^{2s} u(z) / ((|z|^2 - r^2)^s |z|^n) dz; equals u(0) for u s-harmonic in B_r.
Evaluation mean_value(const ScalarField& u, double r, int n, double s, const QuadConfig& cfg = {});

}  // namespace fracops
