#include "fracops/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "fracops/errors.hpp"
#include "fracops/quadrature.hpp"
#include "fracops/special_math.hpp"

namespace fracops {

namespace {

// A line through x along +-theta carrying the radial kernel k(r) with weight w; the contribution
// is w int_0^inf T(2u(x) - u(x + r theta) - u(x - r theta)) k(r) dr.
struct Ray {
  Point theta;
  double weight = 0.0;
  std::function<double(double)> k;
  double k_upper = 0.0;         // k(r) <= k_upper r^{-1-2s}
  double homogeneous_coeff = 0.0;  // > 0 iff k(r) = coeff r^{-1-2s}
};

// Transform applied to D = 2u(x) - u(x+y) - u(x-y); positively homogeneous, Lipschitz.
struct Transform {
  double pos_slope = 1.0;  // T(D) = pos_slope D for D >= 0
  double neg_slope = 1.0;  // T(D) = neg_slope D for D < 0
  bool linear() const { return pos_slope == neg_slope; }
  double lipschitz() const { return std::max(std::abs(pos_slope), std::abs(neg_slope)); }
  double operator()(double d) const { return d >= 0.0 ? pos_slope * d : neg_slope * d; }
};

struct Setup {
  double s = 0.5;
  double r_c = 0.0;
  double R = 0.0;
  double u0 = 0.0;
};

void require_integrable(const ScalarField& u, double s) {
  if (!(u.decay_exponent < 2.0 * s))
    throw DomainError("non-integrable tail: field growth exponent " + std::to_string(u.decay_exponent) +
                      " must be below 2s = " + std::to_string(2.0 * s));
}

double tail_mass(const Ray& ray, double R, double s) {
  if (ray.homogeneous_coeff > 0.0) return ray.homogeneous_coeff * std::pow(R, -2.0 * s) / (2.0 * s);
  const double inv = 1.0 / (2.0 * s);
  auto f = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double r = R * std::pow(w, -inv);
    return ray.k(r) * std::pow(r, 1.0 + 2.0 * s);
  };
  return std::pow(R, -2.0 * s) * inv * quad::gauss_kronrod(f, 0.0, 1.0, 1e-12).value;
}

// int_0^rho r^2 k(r) dr.
quad::Integral second_moment(const Ray& ray, double rho, double s) {
  if (ray.homogeneous_coeff > 0.0)
    return {ray.homogeneous_coeff * std::pow(rho, 2.0 - 2.0 * s) / (2.0 - 2.0 * s), 0.0};
  quad::Integral acc;
  double hi = rho;
  auto f = [&](double r) { return r * r * ray.k(r); };
  for (int j = 0; j < 40; ++j) {
    acc += quad::gauss_fixed(f, 0.5 * hi, hi, 16);
    hi *= 0.5;
  }
  acc.error += ray.k_upper * std::pow(hi, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  return acc;
}

quad::Integral ray_integral(const ScalarField& u, const Point& x, const Ray& ray, const Transform& T,
                            const Setup& st, const QuadConfig& cfg) {
  const double s = st.s;
  const double u0 = st.u0;
  auto D = [&](double r) { return 2.0 * u0 - u(x + r * ray.theta) - u(x - r * ray.theta); };
  auto integrand = [&](double r) { return T(D(r)) * ray.k(r); };

  std::vector<double> cuts = u.breakpoints(x, ray.theta);
  for (double r : u.breakpoints(x, -ray.theta)) cuts.push_back(r);
  // Closest approach to each singular point, where the integrand peaks.
  for (const Point& p : u.singular_points) {
    const double r0 = (p - x).dot(ray.theta);
    if (r0 != 0.0) cuts.push_back(std::abs(r0));
  }
  std::sort(cuts.begin(), cuts.end());
  auto has_cut = [&](double a, double b) {
    return std::any_of(cuts.begin(), cuts.end(), [&](double c) { return c > a && c < b; });
  };
  const double ts_tol = std::min(1e-10, 0.01 * cfg.target_rel_err);

  quad::Integral total;

  // Innermost ball: D(r) ~ a r^2 extrapolated from r_min.
  const double r_min = 1e-3 * st.r_c;
  const double a1 = D(r_min) / (r_min * r_min);
  const double a2 = D(2.0 * r_min) / (4.0 * r_min * r_min);
  const auto moment = second_moment(ray, r_min, s);
  total.value += T(a1) * moment.value;
  total.error += std::abs(T(a1) - T(a2)) * moment.value + std::abs(T(a1)) * moment.error;

  // Singular shell [r_min, r_c] in dyadic pieces.
  for (double lo = r_min; lo < st.r_c;) {
    const double hi = std::min(2.0 * lo, st.r_c);
    if (has_cut(lo, hi))
      total += quad::tanh_sinh_pieces(integrand, lo, hi, cuts, ts_tol);
    else
      total += quad::gauss_fixed(integrand, lo, hi, cfg.radial_points);
    lo = hi;
  }

  // Mid field [r_c, R] in dyadic annuli.
  for (double lo = st.r_c; lo < st.R;) {
    const double hi = std::min(2.0 * lo, st.R);
    total += quad::tanh_sinh_pieces(integrand, lo, hi, cuts, ts_tol);
    lo = hi;
  }

  // Tail beyond R.
  const double R = st.R;
  const double mass = tail_mass(ray, R, s);
  if (u.support_radius && R >= x.norm() + *u.support_radius) {
    total.value += T(2.0 * u0) * mass;
  } else if (u.far_tail && T.linear() && ray.homogeneous_coeff > 0.0) {
    const double pair = u.far_tail(x, ray.theta, R, s);
    total.value += T.pos_slope * ray.homogeneous_coeff * (2.0 * u0 * std::pow(R, -2.0 * s) / (2.0 * s) - pair);
    total.error += 1e-12 * std::abs(ray.homogeneous_coeff * pair);
  } else {
    const double tau = std::max(0.0, u.decay_exponent);
    total.value += T(2.0 * u0) * mass;
    total.error += T.lipschitz() * 2.0 * u.growth_bound * ray.k_upper *
                   (std::pow(R, -2.0 * s) / (2.0 * s) +
                    std::pow(2.0, tau) * std::pow(R, tau - 2.0 * s) / (2.0 * s - tau));
  }
  return {ray.weight * total.value, ray.weight * total.error};
}

Evaluation integrate_rays(const ScalarField& u, const Point& x, double s,
                          const std::function<std::vector<Ray>(int order)>& make_rays, bool angular,
                          const Transform& T, const QuadConfig& cfg) {
  cfg.validate();
  if (x.dim() != u.dim) throw DomainError("evaluation point has the wrong dimension");
  require_integrable(u, s);

  Setup st;
  st.s = s;
  st.u0 = u(x);
  const double c2 = u.c2_radius ? u.c2_radius(x) : 0.0;
  if (!(c2 > 0.0))
    throw DomainError("field '" + u.name + "' has no C^2 neighbourhood at " + x.to_string());
  double r_c = cfg.near_radius_fraction * c2;

  const auto rays = make_rays(cfg.angular_order);
  const double tau = std::max(0.0, u.decay_exponent);
  double k_up = 0.0;
  for (const auto& ray : rays) k_up += ray.weight * ray.k_upper;
  const bool exact_tail = u.far_tail && T.linear() &&
                          std::all_of(rays.begin(), rays.end(), [](const Ray& r) { return r.homogeneous_coeff > 0.0; });

  double R = cfg.far_cutoff;
  if (R <= 0.0) {
    const double base = std::max({1.0, 2.0 * x.norm(), std::isfinite(r_c) ? 4.0 * r_c : 0.0});
    if (u.support_radius) {
      R = x.norm() + *u.support_radius;
    } else if (exact_tail) {
      R = base;
    } else {
      const double rc_ref = std::isfinite(r_c) ? std::min(r_c, 1.0) : 1.0;
      const double ref = std::max(std::abs(st.u0), u.growth_bound) * k_up * std::pow(rc_ref, -2.0 * s) / (2.0 * s);
      R = base;
      auto bound = [&](double Rv) {
        return T.lipschitz() * 2.0 * u.growth_bound * k_up *
               (std::pow(Rv, -2.0 * s) / (2.0 * s) + std::pow(2.0, tau) * std::pow(Rv, tau - 2.0 * s) / (2.0 * s - tau));
      };
      while (bound(R) > 0.1 * cfg.target_rel_err * ref && R < 1e150) R *= 2.0;
    }
  }
  if (R < x.norm()) R = x.norm();
  st.R = R;
  st.r_c = std::min(r_c, R);

  auto sum_rays = [&](const std::vector<Ray>& rs) {
    quad::Integral acc;
    for (const auto& ray : rs) acc += ray_integral(u, x, ray, T, st, cfg);
    return acc;
  };

  quad::Integral result = sum_rays(rays);
  if (angular) {
    const auto coarse = sum_rays(make_rays(std::max(2, cfg.angular_order / 2)));
    result.error += std::abs(result.value - coarse.value);
  }

  Evaluation ev;
  ev.value = result.value;
  ev.err_est = result.error;
  double scale = std::abs(st.u0) * k_up * std::pow(st.r_c, -2.0 * s) / (2.0 * s);
  ev.accuracy_met = ev.err_est <= cfg.target_rel_err * std::max(std::abs(ev.value), scale);
  return ev;
}

// Directions for a field evaluated at x. Near an isolated singularity p the ray integral grows like
// psi^{2s-1} in the angle psi between theta and p - x, so the rule is graded toward that axis.
std::vector<quad::Direction> angular_rule(const ScalarField& u, const Point& x, double s, int order) {
  const int n = x.dim();
  const Point* nearest = nullptr;
  double best = std::numeric_limits<double>::infinity();
  for (const Point& p : u.singular_points) {
    const double d = (p - x).norm();
    if (d > 0.0 && d < best) best = d, nearest = &p;
  }
  if (n == 1 || !nearest) return quad::hemisphere_rule(n, order);
  return quad::polar_graded_rule(*nearest - x, order, std::max(2.0, 2.0 / s));
}

std::vector<Ray> homogeneous_rays(const ScalarField& u, const Point& x, double s, double coeff, int order) {
  std::vector<Ray> rays;
  for (const auto& d : angular_rule(u, x, s, order)) {
    Ray ray;
    ray.theta = d.theta;
    ray.weight = d.weight;
    ray.homogeneous_coeff = coeff;
    ray.k_upper = coeff;
    ray.k = [coeff, s](double r) { return coeff * std::pow(r, -1.0 - 2.0 * s); };
    rays.push_back(std::move(ray));
  }
  return rays;
}

}  // namespace

void QuadConfig::validate() const {
  if (!(near_radius_fraction > 0.0) || far_cutoff < 0.0 || angular_order < 1 || radial_points < 2)
    throw DomainError("QuadConfig: resolutions must be positive");
  if (!(target_rel_err > 1e-12 && target_rel_err < 1e-1))
    throw DomainError("QuadConfig: target_rel_err must lie in (1e-12, 1e-1)");
}

Evaluation apply_operator(const Kernel& K, const ScalarField& u, const Point& x, const QuadConfig& cfg) {
  const int n = K.dim();
  const double s = K.order();
  if (u.dim != n) throw DomainError("apply_operator: field and kernel dimensions differ");
  const Transform identity{};
  switch (K.variant()) {
    case KernelVariant::fractional_laplacian: {
      const double c = constants(n, s).c_ns;
      return integrate_rays(u, x, s, [&](int order) { return homogeneous_rays(u, x, s, c, order); }, n > 1,
                            identity, cfg);
    }
    case KernelVariant::stable: {
      const double c1 = constants(1, s).c_ns;
      auto make = [&](int) {
        std::vector<Ray> rays;
        for (const auto& atom : K.atoms()) {
          Ray ray;
          ray.theta = atom.direction;
          ray.weight = 0.5 * atom.weight;
          ray.homogeneous_coeff = c1;
          ray.k_upper = c1;
          ray.k = [c1, s](double r) { return c1 * std::pow(r, -1.0 - 2.0 * s); };
          rays.push_back(std::move(ray));
        }
        return rays;
      };
      return integrate_rays(u, x, s, make, false, identity, cfg);
    }
    case KernelVariant::comparable: {
      auto make = [&](int order) {
        std::vector<Ray> rays;
        for (const auto& d : angular_rule(u, x, s, order)) {
          Ray ray;
          ray.theta = d.theta;
          ray.weight = d.weight;
          ray.k_upper = K.Lambda();
          ray.k = [&K, theta = d.theta, n](double r) { return K.density(r * theta) * std::pow(r, n - 1); };
          rays.push_back(std::move(ray));
        }
        return rays;
      };
      return integrate_rays(u, x, s, make, n > 1, identity, cfg);
    }
  }
  throw UnsupportedError("apply_operator: unknown kernel variant");
}

Evaluation apply_extremal(double lambda, double Lambda, Extremal which, double s, const ScalarField& u,
                          const Point& x, const QuadConfig& cfg) {
  if (!(lambda > 0.0) || !(Lambda >= lambda)) throw DomainError("apply_extremal: need 0 < lambda <= Lambda");
  check_order(u.dim, s);
  // In terms of D = -d2u: M+ takes Lambda on D < 0 and lambda on D > 0, both with a minus sign.
  const Transform T = which == Extremal::plus ? Transform{-lambda, -Lambda} : Transform{-Lambda, -lambda};
  return integrate_rays(u, x, s, [&](int order) { return homogeneous_rays(u, x, s, 1.0, order); }, u.dim > 1, T,
                        cfg);
}

Evaluation mean_value(const ScalarField& u, double r, int n, double s, const QuadConfig& cfg) {
  cfg.validate();
  check_order(n, s);
  if (u.dim != n) throw DomainError("mean_value: dimension mismatch");
  if (!(r > 0.0)) throw DomainError("mean_value: radius must be positive");
  require_integrable(u, s);
  const double a = constants(n, s).a_ns;
  const Point origin(n);
  const double tol = std::min(1e-10, 0.01 * cfg.target_rel_err);

  auto integrate = [&](int order) {
    quad::Integral acc;
    for (const auto& d : quad::sphere_rule(n, order)) {
      // rho = r / sqrt(1 - w). The half w > 1/2 is integrated in v = 1 - w so that the endpoint
      // singularity (1 - w)^{s-1} keeps full relative precision.
      std::vector<double> cuts_w, cuts_v;
      for (double rb : u.breakpoints(origin, d.theta)) {
        if (!(rb > r)) continue;
        const double v = (r / rb) * (r / rb);
        (v > 0.5 ? cuts_w : cuts_v).push_back(v > 0.5 ? 1.0 - v : v);
      }
      auto fw = [&](double w) {
        if (w <= 0.0) return 0.0;
        return u((r / std::sqrt(1.0 - w)) * d.theta) * std::pow(w, -s) * std::pow(1.0 - w, s - 1.0);
      };
      auto fv = [&](double v) {
        if (v <= 0.0) return 0.0;
        return u((r / std::sqrt(v)) * d.theta) * std::pow(1.0 - v, -s) * std::pow(v, s - 1.0);
      };
      auto part = quad::tanh_sinh_pieces(fw, 0.0, 0.5, cuts_w, tol);
      part += quad::tanh_sinh_pieces(fv, 0.0, 0.5, cuts_v, tol);
      acc.value += d.weight * part.value;
      acc.error += d.weight * part.error;
    }
    acc.value *= 0.5 * a;
    acc.error *= 0.5 * a;
    return acc;
  };
  auto res = integrate(cfg.angular_order);
  if (n > 1) res.error += std::abs(res.value - integrate(std::max(2, cfg.angular_order / 2)).value);
  Evaluation ev{res.value, res.error, true};
  ev.accuracy_met = ev.err_est <= cfg.target_rel_err * std::max(std::abs(ev.value), 1e-300);
  return ev;
}

}  // namespace fracops
