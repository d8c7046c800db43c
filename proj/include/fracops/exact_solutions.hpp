#pragma once

#include <functional>
#include <string>

#include "fracops/fields.hpp"
#include "fracops/point.hpp"

namespace fracops {

/// A field with a known value of (-Delta)^s on its validity region.
struct OracleField {
  ScalarField field;
  std::function<double(const Point&)> known_operator_value;
  std::function<bool(const Point&)> in_validity_region;
};

/// (x . e + shift)^p_+ for 0 < p; not an oracle unless p = s.
ScalarField halfspace_power(int n, double p, const Point& e, double shift);

/// (x . e)^s_+, s-harmonic on {x . e > 0}.
OracleField halfspace_harmonic(int n, double s, const Point& e);

/// (x . e + shift)^s_+, s-harmonic on {x . e > -shift}.
OracleField shifted_halfspace(int n, double s, const Point& e, double shift);

/// (1 - |x|^2)^s_+ with (-Delta)^s u = q_ns in B_1.
OracleField ball_torsion(int n, double s);

/// kappa_{2s,n} |x|^{2s-n} for n != 2s, and -log|x| / pi for n = 2s = 1.
OracleField fundamental_solution(int n, double s);

/// Value of the fundamental solution; throws SingularityError at x = 0.
double fundamental_value(int n, double s, const Point& x);

/// a_ns (1-|x|^2)^s / ((|z|^2-1)^s |x-z|^n) for |x| < 1 < |z|.
double poisson_kernel_ball(int n, double s, const Point& x, const Point& z);

/// Kernel of sqrt(-Delta) for the half-space {x . e > 0}: a_n sqrt(x.e) / (sqrt|z.e| |x-z|^n).
double poisson_kernel_halfspace(int n, const Point& x, const Point& z, const Point& e);

/// Radial mean-value weight: u(0) = int u(z) omega_s(|z|) dz for u s-harmonic in B_1.
/// Normalized to be a probability density on R^n for every n.
double mean_value_weight(double t, int n, double s);

/// Heat kernel p(t, x) of (-Delta)^s: closed form for s = 1/2 (any n), Fourier inversion
/// of exp(-t |xi|^{2s}) for other s (n = 1 only).
double heat_kernel(int n, double s, double t, const Point& x);

}  // namespace fracops
