#include "fracops/special_math.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "fracops/errors.hpp"

namespace fracops {

namespace {

void require_beta_params(double a, double b) {
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b))
    throw DomainError("beta: parameters must be positive and finite");
}

}  // namespace

double log_gamma(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw DomainError("log_gamma: argument must be positive, got " + std::to_string(x));
  return boost::math::lgamma(x);
}

double beta_inc_reg(double a, double b, double x) {
  require_beta_params(a, b);
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("beta_inc_reg: x must lie in [0,1]");
  return boost::math::ibeta(a, b, x);
}

double beta_inverse(double a, double b, double p) {
  require_beta_params(a, b);
  if (!(p >= 0.0 && p <= 1.0)) throw DomainError("beta_inverse: p must lie in [0,1]");
  if (p == 0.0) return 0.0;
  if (p == 1.0) return 1.0;
  return boost::math::ibeta_inv(a, b, p);
}

double sphere_area(int n) {
  if (n < 1) throw DomainError("sphere_area: dimension must be positive");
  return 2.0 * std::pow(std::numbers::pi, 0.5 * n) / std::exp(log_gamma(0.5 * n));
}

double half_laplacian_constant(int n) {
  if (n < 1) throw DomainError("half_laplacian_constant: dimension must be positive");
  return std::exp(log_gamma(0.5 * (n + 1)) - 0.5 * (n + 1) * std::log(std::numbers::pi));
}

void check_order(int n, double s) {
  if (n < 1 || n > 3) throw DomainError("dimension must be 1, 2 or 3, got " + std::to_string(n));
  if (!(s > 0.0 && s < 1.0)) throw DomainError("order s must lie in (0,1), got " + std::to_string(s));
}

OperatorConstants constants(int n, double s) {
  check_order(n, s);
  const double pi = std::numbers::pi;
  const double half_n = 0.5 * n;
  OperatorConstants k;
  k.n = n;
  k.s = s;
  k.c_ns = std::exp(2.0 * s * std::log(2.0) + std::log(s) + log_gamma(half_n + s) -
                    log_gamma(1.0 - s) - half_n * std::log(pi));
  k.q_ns = std::exp(2.0 * s * std::log(2.0) + log_gamma(1.0 + s) + log_gamma(half_n + s) -
                    log_gamma(half_n));
  k.a_ns = std::exp(log_gamma(half_n) - (half_n + 1.0) * std::log(pi)) * std::sin(pi * s);
  if (n > 2.0 * s) {
    k.kappa_ns = std::exp(-2.0 * s * std::log(2.0) + log_gamma(half_n - s) - log_gamma(s) -
                          half_n * std::log(pi));
  }
  return k;
}

}  // namespace fracops
