#include "fracops/registry.hpp"

#include <cmath>
#include <sstream>

#include "fracops/errors.hpp"

namespace fracops {

namespace {

double to_double(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw DomainError("parameter '" + key + "' is not a number: '" + text + "'");
  }
}

std::string join(const std::vector<std::string>& names) {
  std::string out;
  for (const auto& n : names) out += (out.empty() ? "" : ", ") + n;
  return out;
}

}  // namespace

double param_double(const Params& p, const std::string& key, double fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : to_double(key, it->second);
}

int param_int(const Params& p, const std::string& key, int fallback) {
  const auto it = p.find(key);
  if (it == p.end()) return fallback;
  const double v = to_double(key, it->second);
  if (v != std::floor(v) || std::abs(v) > 2e9) throw DomainError("parameter '" + key + "' must be an integer");
  return static_cast<int>(v);
}

std::string param_string(const Params& p, const std::string& key, const std::string& fallback) {
  const auto it = p.find(key);
  return it == p.end() ? fallback : it->second;
}

Point parse_point(const std::string& text, int n) {
  std::vector<double> coords;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) coords.push_back(to_double("point", item));
  if (coords.size() == 1 && n > 1 && coords[0] == 0.0) coords.assign(n, 0.0);
  if (static_cast<int>(coords.size()) != n)
    throw DomainError("point '" + text + "' needs " + std::to_string(n) + " coordinates");
  Point x(n);
  for (int i = 0; i < n; ++i) x[i] = coords[i];
  return x;
}

std::vector<std::string> field_names() {
  return {"ball_torsion", "halfspace", "shifted_halfspace", "fundamental", "constant", "bump"};
}

OracleField make_field(const std::string& name, int n, double s, const Params& p) {
  const Point e = Point::unit(n, 0);
  if (name == "ball_torsion") return ball_torsion(n, s);
  if (name == "halfspace") return halfspace_harmonic(n, s, e);
  if (name == "shifted_halfspace") return shifted_halfspace(n, s, e, param_double(p, "shift", 1.0));
  if (name == "fundamental") return fundamental_solution(n, s);
  if (name == "constant") {
    const double c = param_double(p, "value", 1.0);
    OracleField o;
    o.field = constant_field(n, c);
    o.known_operator_value = [](const Point&) { return 0.0; };
    o.in_validity_region = [](const Point&) { return true; };
    return o;
  }
  if (name == "bump") {
    OracleField o;
    o.field = bump(parse_point(param_string(p, "center", "0"), n), param_double(p, "radius", 1.0),
                   param_double(p, "amplitude", 1.0));
    return o;
  }
  throw DomainError("unknown field '" + name + "' (known: " + join(field_names()) + ")");
}

std::vector<std::string> exterior_names() {
  return {"zero", "constant", "halfspace", "shifted_halfspace", "annulus_indicator", "ball_torsion"};
}

ExteriorData make_exterior(const std::string& name, int n, double s, const Params& p) {
  const Point e = Point::unit(n, 0);
  if (name == "zero") return constant_exterior(0.0);
  if (name == "constant") return constant_exterior(param_double(p, "value", 1.0));
  if (name == "halfspace") return exterior_from_field(halfspace_harmonic(n, s, e).field, {0.0});
  if (name == "shifted_halfspace") {
    const double shift = param_double(p, "shift", 1.0);
    return exterior_from_field(shifted_halfspace(n, s, e, shift).field, {-shift});
  }
  if (name == "ball_torsion") return exterior_from_field(ball_torsion(n, s).field, {-1.0, 1.0});
  if (name == "annulus_indicator") {
    ExteriorData g;
    g.name = "annulus_indicator";
    g.g = [](const Point& z) {
      const double r = z.norm();
      return r > 2.0 && r < 3.0 ? 1.0 : 0.0;
    };
    g.growth_bound = 1.0;
    g.decay_exponent = 0.0;
    g.breakpoints = {-3.0, -2.0, 2.0, 3.0};
    return g;
  }
  throw DomainError("unknown exterior datum '" + name + "' (known: " + join(exterior_names()) + ")");
}

std::vector<std::string> domain_names() { return {"ball", "interval", "box", "halfspace"}; }

DomainPtr make_domain(const std::string& name, int n, const Params& p) {
  if (name == "ball")
    return make_ball(parse_point(param_string(p, "center", "0"), n), param_double(p, "radius", 1.0));
  if (name == "interval") {
    if (n != 1) throw DomainError("interval domains are one-dimensional");
    return make_interval(param_double(p, "a", -1.0), param_double(p, "b", 1.0));
  }
  if (name == "box") {
    Point lo(n), hi(n);
    for (int i = 0; i < n; ++i) lo[i] = -1.0, hi[i] = 1.0;
    if (p.count("lo")) lo = parse_point(p.at("lo"), n);
    if (p.count("hi")) hi = parse_point(p.at("hi"), n);
    return make_box(lo, hi);
  }
  if (name == "halfspace") return make_halfspace(Point::unit(n, 0), param_double(p, "offset", 0.0));
  throw DomainError("unknown domain '" + name + "' (known: " + join(domain_names()) + ")");
}

}  // namespace fracops
