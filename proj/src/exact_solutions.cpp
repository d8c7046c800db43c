#include "fracops/exact_solutions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <utility>

#include <boost/math/special_functions/beta.hpp>

#include "fracops/errors.hpp"
#include "fracops/heat_kernel.hpp"
#include "fracops/special_math.hpp"

namespace fracops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Point require_unit(const Point& e, int n) {
  if (e.dim() != n) throw DomainError("direction has the wrong dimension");
  if (std::abs(e.norm() - 1.0) > 1e-12) throw DomainError("direction must be a unit vector");
  return e;
}

// Attaches the numerically integrated far tail to a field that has none yet.
void attach_numeric_tail(ScalarField& u) {
  ScalarField base = u;
  base.far_tail = nullptr;
  u.far_tail = [base](const Point& x, const Point& th, double R, double s) {
    return numeric_far_tail(base, x, th, R, s);
  };
}

// Positive roots r of |x + r theta| = 1.
std::vector<double> unit_sphere_crossings(const Point& x, const Point& theta) {
  const double b = x.dot(theta);
  const double c = x.norm2() - 1.0;
  const double disc = b * b - c;
  std::vector<double> out;
  if (disc <= 0.0) return out;
  const double root = std::sqrt(disc);
  for (double r : {-b - root, -b + root})
    if (r > 0.0) out.push_back(r);
  return out;
}

double fundamental_kappa(int n, double s) {
  const double pi = std::numbers::pi;
  return std::pow(2.0, -2.0 * s) * std::tgamma(0.5 * n - s) / std::tgamma(s) * std::pow(pi, -0.5 * n);
}

bool is_log_case(int n, double s) { return n == 1 && s == 0.5; }

}  // namespace

ScalarField halfspace_power(int n, double p, const Point& e_in, double shift) {
  if (n < 1 || n > 3) throw DomainError("dimension must be 1, 2 or 3");
  if (!(p > 0.0)) throw DomainError("halfspace_power: exponent must be positive");
  const Point e = require_unit(e_in, n);
  ScalarField u;
  u.dim = n;
  u.name = "halfspace_power";
  u.eval = [e, p, shift](const Point& x) {
    const double d = x.dot(e) + shift;
    return d > 0.0 ? std::pow(d, p) : 0.0;
  };
  // Half the distance to the kink plane keeps the shell away from it.
  u.c2_radius = [e, shift](const Point& x) { return 0.5 * std::abs(x.dot(e) + shift); };
  u.c2_constant = p * std::abs(p - 1.0);
  u.growth_bound = std::pow(2.0, std::max(0.0, p - 1.0)) * (1.0 + std::pow(std::abs(shift), p));
  u.decay_exponent = p;
  u.singular_radii = [e, shift](const Point& x, const Point& theta) {
    const double te = theta.dot(e);
    std::vector<double> out;
    if (te != 0.0) {
      const double r = -(x.dot(e) + shift) / te;
      if (r > 0.0) out.push_back(r);
    }
    return out;
  };
  attach_numeric_tail(u);
  return u;
}

OracleField halfspace_harmonic(int n, double s, const Point& e_in) {
  check_order(n, s);
  const Point e = require_unit(e_in, n);
  ScalarField u = halfspace_power(n, s, e, 0.0);
  u.name = "halfspace";
  OracleField o;
  o.field = std::move(u);
  o.known_operator_value = [](const Point&) { return 0.0; };
  o.in_validity_region = [e](const Point& x) { return x.dot(e) > 0.0; };
  return o;
}

OracleField shifted_halfspace(int n, double s, const Point& e_in, double shift) {
  check_order(n, s);
  const Point e = require_unit(e_in, n);
  OracleField o;
  o.field = halfspace_power(n, s, e, shift);
  o.field.name = "shifted_halfspace";
  o.known_operator_value = [](const Point&) { return 0.0; };
  o.in_validity_region = [e, shift](const Point& x) { return x.dot(e) + shift > 0.0; };
  return o;
}

OracleField ball_torsion(int n, double s) {
  const double q = constants(n, s).q_ns;
  ScalarField u;
  u.dim = n;
  u.name = "ball_torsion";
  u.eval = [s](const Point& x) {
    const double m = 1.0 - x.norm2();
    return m > 0.0 ? std::pow(m, s) : 0.0;
  };
  u.c2_radius = [](const Point& x) { return 0.5 * std::abs(1.0 - x.norm()); };
  u.c2_constant = 2.0 * s;
  u.growth_bound = 1.0;
  u.decay_exponent = 0.0;
  u.support_radius = 1.0;
  u.singular_radii = unit_sphere_crossings;
  OracleField o;
  o.field = std::move(u);
  o.known_operator_value = [q](const Point&) { return q; };
  o.in_validity_region = [](const Point& x) { return x.norm2() < 1.0; };
  return o;
}

double fundamental_value(int n, double s, const Point& x) {
  check_order(n, s);
  if (x.dim() != n) throw DomainError("fundamental_value: dimension mismatch");
  const double r = x.norm();
  if (r == 0.0) throw SingularityError("fundamental solution is singular at the origin");
  if (is_log_case(n, s)) return -std::log(r) / std::numbers::pi;
  return fundamental_kappa(n, s) * std::pow(r, 2.0 * s - n);
}

OracleField fundamental_solution(int n, double s) {
  check_order(n, s);
  if (n == 2.0 * s && !is_log_case(n, s)) throw DomainError("fundamental_solution: n = 2s is not supported");
  ScalarField u;
  u.dim = n;
  u.name = "fundamental";
  // Quadrature may land exactly on the pole; the field reports the signed infinite limit there.
  const double pole = is_log_case(n, s) ? kInf : std::copysign(kInf, fundamental_kappa(n, s));
  u.eval = [n, s, pole](const Point& x) { return x.norm2() == 0.0 ? pole : fundamental_value(n, s, x); };
  u.c2_radius = [](const Point& x) { return 0.5 * x.norm(); };
  u.c2_constant = kInf;
  u.singular_points = {Point(n)};
  if (is_log_case(n, s)) {
    u.growth_bound = 10.0 / std::numbers::pi;
    u.decay_exponent = 0.1;
  } else {
    u.growth_bound = std::abs(fundamental_kappa(n, s));
    u.decay_exponent = std::max(0.0, 2.0 * s - n);
  }
  u.singular_radii = [](const Point& x, const Point& theta) {
    std::vector<double> out;
    const double r = x.norm();
    if (r > 0.0 && (theta + (1.0 / r) * x).norm() < 1e-12) out.push_back(r);
    return out;
  };
  attach_numeric_tail(u);
  OracleField o;
  o.field = std::move(u);
  o.known_operator_value = [](const Point&) { return 0.0; };
  o.in_validity_region = [](const Point& x) { return x.norm2() > 0.0; };
  return o;
}

double poisson_kernel_ball(int n, double s, const Point& x, const Point& z) {
  const double a = constants(n, s).a_ns;
  if (x.dim() != n || z.dim() != n) throw DomainError("poisson_kernel_ball: dimension mismatch");
  const double x2 = x.norm2();
  const double z2 = z.norm2();
  if (!(x2 < 1.0)) throw DomainError("poisson_kernel_ball: x must lie inside the unit ball");
  if (!(z2 > 1.0)) throw DomainError("poisson_kernel_ball: z must lie outside the closed unit ball");
  return a * std::pow((1.0 - x2) / (z2 - 1.0), s) * std::pow((x - z).norm(), -n);
}

double poisson_kernel_halfspace(int n, const Point& x, const Point& z, const Point& e_in) {
  check_order(n, 0.5);
  const Point e = require_unit(e_in, n);
  if (x.dim() != n || z.dim() != n) throw DomainError("poisson_kernel_halfspace: dimension mismatch");
  const double xe = x.dot(e);
  const double ze = z.dot(e);
  if (!(xe > 0.0)) throw DomainError("poisson_kernel_halfspace: x must satisfy x.e > 0");
  if (ze > 0.0) throw DomainError("poisson_kernel_halfspace: z must satisfy z.e <= 0");
  if (ze == 0.0) throw SingularityError("poisson_kernel_halfspace: kernel is singular on the hyperplane");
  const double an = std::exp(log_gamma(0.5 * n) - (0.5 * n + 1.0) * std::log(std::numbers::pi));
  return an * std::sqrt(xe / -ze) * std::pow((x - z).norm(), -n);
}

double mean_value_weight(double t, int n, double s) {
  check_order(n, s);
  if (!(t >= 0.0)) throw DomainError("mean_value_weight: radius must be nonnegative");
  const double p = 0.5 * n + s;
  const double q = 1.0 - s;
  const double upper = t <= 1.0 ? 1.0 : 1.0 / (t * t);
  // n a_ns int_0^{min(1,1/t)} rho^{n+2s-1} (1-rho^2)^{-s} d rho, with u = rho^2.
  return n * constants(n, s).a_ns * 0.5 * boost::math::beta(p, q, upper);
}

double heat_kernel(int n, double s, double t, const Point& x) {
  check_order(n, s);
  if (x.dim() != n) throw DomainError("heat_kernel: dimension mismatch");
  if (!(t > 0.0)) throw DomainError("heat_kernel: time must be positive");
  if (s == 0.5) return half_laplacian_constant(n) * t * std::pow(x.norm2() + t * t, -0.5 * (n + 1));
  if (n != 1) throw DomainError("heat_kernel: general order is available in one dimension only");

  // Small cache of recent grids; a grid costs one transform of up to 2^24 points.
  static std::mutex mutex;
  static std::vector<std::pair<std::pair<double, double>, std::shared_ptr<const HeatKernel1D>>> cache;
  std::shared_ptr<const HeatKernel1D> grid;
  {
    std::lock_guard lock(mutex);
    for (const auto& [key, value] : cache)
      if (key.first == s && key.second == t) grid = value;
  }
  if (!grid) {
    grid = std::make_shared<const HeatKernel1D>(s, t);
    std::lock_guard lock(mutex);
    cache.emplace_back(std::make_pair(s, t), grid);
    if (cache.size() > 2) cache.erase(cache.begin());
  }
  return std::max(0.0, (*grid)(x[0]));
}

}  // namespace fracops
