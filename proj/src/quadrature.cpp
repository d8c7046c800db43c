#include "fracops/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "fracops/errors.hpp"

namespace fracops::quad {

namespace {

GaussRule make_gauss_legendre(int order) {
  GaussRule rule;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= order; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    if (order == 1) {
      x = 0.0;
      dp = 1.0;
    }
    const double w = order == 1 ? 2.0 : 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[order - 1 - i] = x;
    rule.weights[i] = w;
    rule.weights[order - 1 - i] = w;
  }
  return rule;
}

// One integrator per thread: the abscissa tables grow lazily on first use.
boost::math::quadrature::tanh_sinh<double>& tanh_sinh_integrator() {
  thread_local boost::math::quadrature::tanh_sinh<double> integrator(15);
  return integrator;
}

double sum_rule(const Integrand& f, double a, double b, const GaussRule& rule) {
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return acc * half;
}

}  // namespace

const GaussRule& gauss_legendre(int order) {
  if (order < 1) throw DomainError("gauss_legendre: order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussRule> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_gauss_legendre(order)).first;
  return it->second;
}

Integral gauss_fixed(const Integrand& f, double a, double b, int order) {
  const double hi = sum_rule(f, a, b, gauss_legendre(order));
  const double lo = sum_rule(f, a, b, gauss_legendre(std::max(1, order / 2)));
  return {hi, std::abs(hi - lo)};
}

Integral gauss_kronrod(const Integrand& f, double a, double b, double tol, int max_depth) {
  if (a == b) return {};
  double err = 0.0;
  const double v =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, max_depth, tol, &err);
  return {v, err};
}

Integral tanh_sinh(const Integrand& f, double a, double b, double tol) {
  if (a == b) return {};
  double err = 0.0;
  // The rule samples within a few ulps of the endpoints, where integrable singularities can overflow;
  // such samples carry no weight and are dropped.
  auto g = [&f](double t) {
    const double v = f(t);
    return std::isfinite(v) ? v : 0.0;
  };
  const double v = tanh_sinh_integrator().integrate(g, a, b, tol, &err);
  return {v, err};
}

Integral tanh_sinh_pieces(const Integrand& f, double a, double b, std::span<const double> breakpoints,
                          double tol) {
  std::vector<double> cuts{a};
  for (double c : breakpoints)
    if (c > a && c < b) cuts.push_back(c);
  cuts.push_back(b);
  std::sort(cuts.begin(), cuts.end());
  Integral total;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] - cuts[i] <= 1e-15 * std::max(1.0, std::abs(cuts[i]))) continue;
    total += tanh_sinh(f, cuts[i], cuts[i + 1], tol);
  }
  return total;
}

std::vector<Direction> hemisphere_rule(int n, int order) {
  const double pi = std::numbers::pi;
  std::vector<Direction> out;
  if (n == 1) {
    out.push_back({Point{1.0}, 1.0});
  } else if (n == 2) {
    for (int k = 0; k < order; ++k) {
      const double t = (k + 0.5) * pi / order;
      out.push_back({Point{std::cos(t), std::sin(t)}, pi / order});
    }
  } else if (n == 3) {
    const GaussRule& gl = gauss_legendre(order);
    const int m = 2 * order;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double z = 0.5 * (gl.nodes[i] + 1.0), wz = 0.5 * gl.weights[i];
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < m; ++j) {
        const double phi = (j + 0.5) * 2.0 * pi / m;
        out.push_back({Point{rho * std::cos(phi), rho * std::sin(phi), z}, wz * 2.0 * pi / m});
      }
    }
  } else {
    throw DomainError("hemisphere_rule: dimension must be 1, 2 or 3");
  }
  return out;
}

std::vector<Direction> sphere_rule(int n, int order) {
  auto half = hemisphere_rule(n, order);
  std::vector<Direction> out;
  out.reserve(2 * half.size());
  for (const auto& d : half) {
    out.push_back(d);
    out.push_back({-d.theta, d.weight});
  }
  return out;
}

std::vector<Direction> aligned_hemisphere_rule(const Point& axis, int order) {
  const int n = axis.dim();
  const double pi = std::numbers::pi;
  const double len = axis.norm();
  if (!(len > 0.0)) throw DomainError("aligned_hemisphere_rule: zero axis");
  const Point e = (1.0 / len) * axis;
  std::vector<Direction> out;
  if (n == 1) {
    out.push_back({e, 1.0});
    return out;
  }
  const GaussRule& gl = gauss_legendre(order);
  // Substitution z = t^2 on [0,1] clusters nodes at the equator z = 0.
  if (n == 2) {
    const Point perp{-e[1], e[0]};
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = 0.5 * (gl.nodes[i] + 1.0), wt = 0.5 * gl.weights[i];
      // psi = (pi/2)(1 - t^2) is the angle from the axis; both signs of psi.
      const double psi = 0.5 * pi * (1.0 - t * t);
      const double w = wt * pi * t;
      for (double sgn : {1.0, -1.0})
        out.push_back({std::cos(psi) * e + (sgn * std::sin(psi)) * perp, w});
    }
    return out;
  }
  if (n == 3) {
    Point u = std::abs(e[0]) < 0.9 ? Point{1.0, 0.0, 0.0} : Point{0.0, 1.0, 0.0};
    u -= u.dot(e) * e;
    u *= 1.0 / u.norm();
    const Point v{e[1] * u[2] - e[2] * u[1], e[2] * u[0] - e[0] * u[2], e[0] * u[1] - e[1] * u[0]};
    const int m = 2 * order;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double t = 0.5 * (gl.nodes[i] + 1.0), wt = 0.5 * gl.weights[i];
      const double z = t * t, wz = 2.0 * t * wt;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      for (int j = 0; j < m; ++j) {
        const double phi = (j + 0.5) * 2.0 * pi / m;
        out.push_back({z * e + (rho * std::cos(phi)) * u + (rho * std::sin(phi)) * v, wz * 2.0 * pi / m});
      }
    }
    return out;
  }
  throw DomainError("aligned_hemisphere_rule: dimension must be 1, 2 or 3");
}

std::vector<Direction> polar_graded_rule(const Point& axis, int order, double grading) {
  const int n = axis.dim();
  const double pi = std::numbers::pi;
  const double len = axis.norm();
  if (!(len > 0.0)) throw DomainError("polar_graded_rule: zero axis");
  if (!(grading >= 1.0)) throw DomainError("polar_graded_rule: grading must be at least 1");
  const Point e = (1.0 / len) * axis;
  if (n == 1) return {{e, 1.0}};
  if (n != 2 && n != 3) throw DomainError("polar_graded_rule: dimension must be 1, 2 or 3");
  const GaussRule& gl = gauss_legendre(order);
  std::vector<Direction> out;
  Point u = n == 2 ? Point{-e[1], e[0]} : (std::abs(e[0]) < 0.9 ? Point{1.0, 0.0, 0.0} : Point{0.0, 1.0, 0.0});
  if (n == 3) {
    u -= u.dot(e) * e;
    u *= 1.0 / u.norm();
  }
  for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
    const double t = 0.5 * (gl.nodes[i] + 1.0), wt = 0.5 * gl.weights[i];
    const double psi = 0.5 * pi * std::pow(t, grading);
    const double dpsi = wt * 0.5 * pi * grading * std::pow(t, grading - 1.0);
    if (n == 2) {
      for (double sgn : {1.0, -1.0}) out.push_back({std::cos(psi) * e + (sgn * std::sin(psi)) * u, dpsi});
      continue;
    }
    const Point v{e[1] * u[2] - e[2] * u[1], e[2] * u[0] - e[0] * u[2], e[0] * u[1] - e[1] * u[0]};
    const int m = 2 * order;
    for (int j = 0; j < m; ++j) {
      const double phi = (j + 0.5) * 2.0 * pi / m;
      out.push_back({std::cos(psi) * e + (std::sin(psi) * std::cos(phi)) * u + (std::sin(psi) * std::sin(phi)) * v,
                     dpsi * std::sin(psi) * 2.0 * pi / m});
    }
  }
  return out;
}

}  // namespace fracops::quad
