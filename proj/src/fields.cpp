#include "fracops/fields.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fracops/errors.hpp"
#include "fracops/quadrature.hpp"

namespace fracops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Multiplier M' with |u(x + h)| <= M' (1 + |x|^tau) whenever |u(y)| <= (1 + |y|^tau).
double shifted_growth(double tau, double shift) {
  if (tau <= 0.0) return 2.0;
  return std::pow(2.0, std::max(0.0, tau - 1.0)) * (1.0 + std::pow(shift, tau));
}

}  // namespace

ScalarField constant_field(int n, double value) {
  ScalarField u;
  u.dim = n;
  u.name = "constant";
  u.eval = [value](const Point&) { return value; };
  u.c2_radius = [](const Point&) { return kInf; };
  u.c2_constant = 0.0;
  u.growth_bound = std::abs(value);
  u.decay_exponent = 0.0;
  u.far_tail = [value](const Point&, const Point&, double R, double s) {
    return 2.0 * value * std::pow(R, -2.0 * s) / (2.0 * s);
  };
  return u;
}

ScalarField bump(const Point& center, double radius, double amplitude) {
  if (!(radius > 0.0)) throw DomainError("bump: radius must be positive");
  ScalarField u;
  u.dim = center.dim();
  u.name = "bump";
  u.eval = [=](const Point& x) {
    const double y2 = (x - center).norm2() / (radius * radius);
    return y2 < 1.0 ? amplitude * std::exp(1.0 - 1.0 / (1.0 - y2)) : 0.0;
  };
  u.c2_radius = [radius](const Point&) { return 0.5 * radius; };
  // max |psi''| of exp(1 - 1/(1-t^2)) is below 6.
  u.c2_constant = 6.0 * std::abs(amplitude) / (radius * radius);
  u.growth_bound = std::abs(amplitude);
  u.decay_exponent = 0.0;
  u.support_radius = center.norm() + radius;
  u.singular_radii = [=](const Point& x, const Point& theta) {
    const Point d = x - center;
    const double b = d.dot(theta) / radius;
    const double c = d.norm2() / (radius * radius) - 1.0;
    std::vector<double> out;
    const double disc = b * b - c;
    if (disc > 0.0)
      for (double r : {-b - std::sqrt(disc), -b + std::sqrt(disc)})
        if (r > 0.0) out.push_back(r * radius);
    return out;
  };
  return u;
}

ScalarField linear_combination(double a, const ScalarField& u, double b, const ScalarField& v) {
  if (u.dim != v.dim) throw DomainError("linear_combination: dimension mismatch");
  ScalarField w;
  w.dim = u.dim;
  w.name = "lincomb(" + u.name + "," + v.name + ")";
  w.eval = [=, fu = u.eval, fv = v.eval](const Point& x) { return a * fu(x) + b * fv(x); };
  w.c2_radius = [ru = u.c2_radius, rv = v.c2_radius](const Point& x) { return std::min(ru(x), rv(x)); };
  w.c2_constant = std::abs(a) * u.c2_constant + std::abs(b) * v.c2_constant;
  w.growth_bound = std::abs(a) * u.growth_bound + std::abs(b) * v.growth_bound;
  w.decay_exponent = std::max(u.decay_exponent, v.decay_exponent);
  if (u.decay_exponent != v.decay_exponent) w.growth_bound *= 2.0;
  if (u.support_radius && v.support_radius)
    w.support_radius = std::max(*u.support_radius, *v.support_radius);
  w.singular_points = u.singular_points;
  w.singular_points.insert(w.singular_points.end(), v.singular_points.begin(), v.singular_points.end());
  if (u.singular_radii || v.singular_radii) {
    w.singular_radii = [u, v](const Point& x, const Point& theta) {
      auto out = u.breakpoints(x, theta);
      auto more = v.breakpoints(x, theta);
      out.insert(out.end(), more.begin(), more.end());
      return out;
    };
  }
  if (u.far_tail && v.far_tail) {
    w.far_tail = [=, tu = u.far_tail, tv = v.far_tail](const Point& x, const Point& th, double R, double s) {
      return a * tu(x, th, R, s) + b * tv(x, th, R, s);
    };
  }
  return w;
}

ScalarField translate(const ScalarField& u, const Point& h) {
  if (h.dim() != u.dim) throw DomainError("translate: dimension mismatch");
  ScalarField w = u;
  w.name = "translate(" + u.name + ")";
  w.eval = [f = u.eval, h](const Point& x) { return f(x + h); };
  w.c2_radius = [r = u.c2_radius, h](const Point& x) { return r(x + h); };
  w.growth_bound = u.growth_bound * shifted_growth(u.decay_exponent, h.norm());
  if (u.support_radius) w.support_radius = *u.support_radius + h.norm();
  for (Point& p : w.singular_points) p -= h;
  if (u.singular_radii)
    w.singular_radii = [f = u.singular_radii, h](const Point& x, const Point& th) { return f(x + h, th); };
  if (u.far_tail)
    w.far_tail = [f = u.far_tail, h](const Point& x, const Point& th, double R, double s) {
      return f(x + h, th, R, s);
    };
  return w;
}

ScalarField dilate(const ScalarField& u, double t) {
  if (!(t > 0.0)) throw DomainError("dilate: factor must be positive");
  ScalarField w = u;
  w.name = "dilate(" + u.name + ")";
  w.eval = [f = u.eval, t](const Point& x) { return f(t * x); };
  w.c2_radius = [r = u.c2_radius, t](const Point& x) { return r(t * x) / t; };
  w.c2_constant = u.c2_constant * t * t;
  w.growth_bound = u.growth_bound * std::max(1.0, std::pow(t, u.decay_exponent));
  if (u.support_radius) w.support_radius = *u.support_radius / t;
  for (Point& p : w.singular_points) p *= 1.0 / t;
  if (u.singular_radii)
    w.singular_radii = [f = u.singular_radii, t](const Point& x, const Point& th) {
      auto radii = f(t * x, th);
      for (double& r : radii) r /= t;
      return radii;
    };
  if (u.far_tail)
    w.far_tail = [f = u.far_tail, t](const Point& x, const Point& th, double R, double s) {
      return std::pow(t, 2.0 * s) * f(t * x, th, t * R, s);
    };
  return w;
}

double numeric_far_tail(const ScalarField& u, const Point& x, const Point& theta, double R, double s) {
  if (u.support_radius && R >= x.norm() + *u.support_radius) return 0.0;
  const double inv = 1.0 / (2.0 * s);
  std::vector<double> cuts;
  for (const Point& dir : {theta, -theta})
    for (double rb : u.breakpoints(x, dir))
      if (rb > R) cuts.push_back(std::pow(R / rb, 2.0 * s));
  auto integrand = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double r = R * std::pow(w, -inv);
    return u(x + r * theta) + u(x - r * theta);
  };
  const auto res = quad::tanh_sinh_pieces(integrand, 0.0, 1.0, cuts, 1e-12);
  return std::pow(R, -2.0 * s) * inv * res.value;
}

ExteriorData constant_exterior(double value) {
  ExteriorData g;
  g.name = "constant";
  g.g = [value](const Point&) { return value; };
  g.growth_bound = std::abs(value);
  g.decay_exponent = 0.0;
  return g;
}

ExteriorData exterior_from_field(const ScalarField& u, std::vector<double> breakpoints) {
  ExteriorData g;
  g.name = u.name;
  g.g = u.eval;
  g.growth_bound = u.growth_bound;
  g.decay_exponent = u.decay_exponent;
  g.breakpoints = std::move(breakpoints);
  return g;
}

ExteriorData product(const ExteriorData& f, const ExteriorData& g) {
  ExteriorData p;
  p.name = f.name + "*" + g.name;
  p.g = [a = f.g, b = g.g](const Point& z) { return a(z) * b(z); };
  p.growth_bound = 2.0 * f.growth_bound * g.growth_bound;
  p.decay_exponent = f.decay_exponent + g.decay_exponent;
  p.breakpoints = f.breakpoints;
  p.breakpoints.insert(p.breakpoints.end(), g.breakpoints.begin(), g.breakpoints.end());
  return p;
}

}  // namespace fracops
