#pragma once

#include <functional>
#include <span>
#include <vector>

#include "fracops/point.hpp"

namespace fracops::quad {

struct Integral {
  double value = 0.0;
  double error = 0.0;

  Integral& operator+=(const Integral& o) {
    value += o.value;
    error += o.error;
    return *this;
  }
};

using Integrand = std::function<double(double)>;

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Cached rule of the given order (thread-safe).
const GaussRule& gauss_legendre(int order);

/// Fixed-order Gauss-Legendre on [a, b]; the error is the difference against half the order.
Integral gauss_fixed(const Integrand& f, double a, double b, int order);

/// Adaptive 31-point Gauss-Kronrod on [a, b].
Integral gauss_kronrod(const Integrand& f, double a, double b, double tol, int max_depth = 15);

/// Double-exponential rule on (a, b); tolerates integrable endpoint singularities.
Integral tanh_sinh(const Integrand& f, double a, double b, double tol);

/// tanh_sinh over [a, b] split at every breakpoint strictly inside (a, b).
Integral tanh_sinh_pieces(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                          double tol);

/// A direction on the unit sphere with a quadrature weight.
struct Direction {
  Point theta;
  double weight = 0.0;
};

/// Rule on a hemisphere such that sum w f(theta) ~ (1/2) int_{S^{n-1}} f for even f.
std::vector<Direction> hemisphere_rule(int n, int order);

/// Rule on the full sphere: sum w f(theta) ~ int_{S^{n-1}} f.
std::vector<Direction> sphere_rule(int n, int order);

/// Hemisphere rule {theta : theta . axis >= 0} whose nodes cluster at the equator theta . axis = 0,
/// for integrands behaving like |theta . axis|^p there. Same normalization as hemisphere_rule.
std::vector<Direction> aligned_hemisphere_rule(const Point& axis, int order);

/// Hemisphere rule about `axis` graded toward the pole: the angle from the axis is
/// psi = (pi/2) t^grading with Gauss-Legendre nodes in t. Suited to integrands behaving like
/// psi^{p} with p > -1 near the axis. Same normalization as hemisphere_rule.
std::vector<Direction> polar_graded_rule(const Point& axis, int order, double grading);

}  // namespace fracops::quad
