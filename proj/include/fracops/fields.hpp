#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracops/point.hpp"

namespace fracops {

/// A function on R^n with the metadata needed for principal-value evaluation.
///
/// Growth: |u(y)| <= growth_bound * (1 + |y|^decay_exponent); evaluation of an operator of
/// order 2s requires decay_exponent < 2s.
/// Regularity: within c2_radius(x) of x the second difference obeys
/// |2u(x) - u(x+y) - u(x-y)| <= c2_constant |y|^2.
struct ScalarField {
  int dim = 1;
  std::string name;
  std::function<double(const Point&)> eval;
  std::function<double(const Point&)> c2_radius;
  double c2_constant = 1.0;
  double growth_bound = 1.0;
  double decay_exponent = 0.0;
  /// u vanishes outside the closed ball of this radius about the origin.
  std::optional<double> support_radius;
  /// Isolated points where u is unbounded. In two and three dimensions the evaluator grades its
  /// angular rule toward the nearest one.
  std::vector<Point> singular_points;
  /// Radii r > 0 at which r -> u(x + r theta) fails to be smooth (kinks, jumps).
  std::function<std::vector<double>(const Point& x, const Point& theta)> singular_radii;
  /// Optional far tail: int_R^inf (u(x + r theta) + u(x - r theta)) r^{-1-2s} dr.
  std::function<double(const Point& x, const Point& theta, double R, double s)> far_tail;

  double operator()(const Point& x) const { return eval(x); }

  std::vector<double> breakpoints(const Point& x, const Point& theta) const {
    return singular_radii ? singular_radii(x, theta) : std::vector<double>{};
  }
};

/// Exterior (Dirichlet) datum g on the complement of a domain.
/// |g(z)| <= growth_bound * (1 + |z|^decay_exponent) with decay_exponent < 2s.
struct ExteriorData {
  std::string name;
  std::function<double(const Point&)> g;
  double growth_bound = 1.0;
  double decay_exponent = 0.0;
  /// 1D only: points where g is discontinuous or not smooth.
  std::vector<double> breakpoints;

  double operator()(const Point& z) const { return g(z); }
};

ScalarField constant_field(int n, double value);

/// amplitude * exp(1 - 1/(1 - |y|^2)) with y = (x - center)/radius, zero for |y| >= 1. Smooth, peak = amplitude.
ScalarField bump(const Point& center, double radius, double amplitude);

/// a u + b v.
ScalarField linear_combination(double a, const ScalarField& u, double b, const ScalarField& v);

/// x -> u(x + h).
ScalarField translate(const ScalarField& u, const Point& h);

/// x -> u(t x), t > 0.
ScalarField dilate(const ScalarField& u, double t);

/// Numerical far tail int_R^inf (u(x + r theta) + u(x - r theta)) r^{-1-2s} dr computed after the
/// substitution r = R w^{-1/(2s)}, split at the field's breakpoints.
double numeric_far_tail(const ScalarField& u, const Point& x, const Point& theta, double R, double s);

ExteriorData constant_exterior(double value);
ExteriorData exterior_from_field(const ScalarField& u, std::vector<double> breakpoints = {});
/// Pointwise product, used for exterior couplings of bilinear forms.
ExteriorData product(const ExteriorData& f, const ExteriorData& g);

}  // namespace fracops
