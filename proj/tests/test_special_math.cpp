#include <cmath>
#include <numbers>

#include "doctest.h"

#include "fracops/errors.hpp"
#include "fracops/special_math.hpp"

using namespace fracops;
using std::numbers::pi;

namespace {

// Closed forms of the normalizing constants, written out independently of the library.
double c_closed(int n, double s) {
  return s * std::pow(4.0, s) * std::tgamma(0.5 * n + s) / (std::pow(pi, 0.5 * n) * std::tgamma(1.0 - s));
}

// int_0^inf (1 - cos y) y^{-1-2s} dy = -Gamma(-2s) cos(pi s), s != 1/2.
double c_from_symbol_1d(double s) { return 1.0 / (-2.0 * std::tgamma(-2.0 * s) * std::cos(pi * s)); }

}  // namespace

TEST_CASE("incomplete beta matches elementary closed forms") {
  for (double x : {0.0, 0.1, 0.37, 0.5, 0.9, 1.0}) {
    CHECK(beta_inc_reg(1.0, 1.0, x) == doctest::Approx(x).epsilon(1e-14));
    CHECK(beta_inc_reg(2.5, 1.0, x) == doctest::Approx(std::pow(x, 2.5)).epsilon(1e-13));
    CHECK(beta_inc_reg(1.0, 3.0, x) == doctest::Approx(1.0 - std::pow(1.0 - x, 3.0)).epsilon(1e-13));
    // Arcsine law.
    CHECK(beta_inc_reg(0.5, 0.5, x) == doctest::Approx(2.0 / pi * std::asin(std::sqrt(x))).epsilon(1e-13));
  }
  CHECK(beta_inc_reg(0.5, 0.5, 0.75) == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
}

TEST_CASE("incomplete beta reflection symmetry") {
  for (double a : {0.3, 1.7})
    for (double b : {0.6, 2.2})
      for (double x : {0.05, 0.5, 0.83})
        CHECK(beta_inc_reg(a, b, x) == doctest::Approx(1.0 - beta_inc_reg(b, a, 1.0 - x)).epsilon(1e-12));
}

TEST_CASE("beta inverse round trip") {
  for (double a : {0.3, 0.5, 0.7, 2.0})
    for (double b : {0.3, 0.5, 0.7, 3.0})
      for (double p : {1e-6, 0.01, 0.3, 0.5, 0.77, 0.999}) {
        const double x = beta_inverse(a, b, p);
        CHECK(x >= 0.0);
        CHECK(x <= 1.0);
        CHECK(beta_inc_reg(a, b, x) == doctest::Approx(p).epsilon(1e-10));
      }
}

TEST_CASE("log gamma and sphere areas") {
  for (double x : {0.1, 0.5, 1.0, 3.3, 40.0}) CHECK(log_gamma(x) == doctest::Approx(std::lgamma(x)).epsilon(1e-13));
  CHECK(sphere_area(1) == doctest::Approx(2.0));
  CHECK(sphere_area(2) == doctest::Approx(2.0 * pi));
  CHECK(sphere_area(3) == doctest::Approx(4.0 * pi));
  CHECK_THROWS_AS(log_gamma(0.0), DomainError);
  CHECK_THROWS_AS(log_gamma(-1.0), DomainError);
}

TEST_CASE("normalizing constant") {
  for (int n = 1; n <= 3; ++n)
    for (double s : {0.1, 0.25, 0.5, 0.75, 0.95})
      CHECK(constants(n, s).c_ns == doctest::Approx(c_closed(n, s)).epsilon(1e-13));
  for (double s : {0.2, 0.3, 0.7, 0.9}) CHECK(constants(1, s).c_ns == doctest::Approx(c_from_symbol_1d(s)).epsilon(1e-12));
  CHECK(half_laplacian_constant(1) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  CHECK(half_laplacian_constant(3) == doctest::Approx(1.0 / (pi * pi)).epsilon(1e-15));
}

TEST_CASE("torsion, Poisson and fundamental-solution constants") {
  CHECK(constants(1, 0.5).q_ns == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(constants(2, 0.5).q_ns == doctest::Approx(pi / 2.0).epsilon(1e-14));
  CHECK(constants(3, 0.5).q_ns == doctest::Approx(2.0 * std::tgamma(1.5) * std::tgamma(2.0) / std::tgamma(1.5)).epsilon(1e-14));
  for (double s : {0.2, 0.5, 0.8}) CHECK(constants(1, s).a_ns == doctest::Approx(std::sin(pi * s) / pi).epsilon(1e-14));
  CHECK(constants(3, 0.5).a_ns == doctest::Approx(std::tgamma(1.5) / std::pow(pi, 2.5)).epsilon(1e-14));

  const auto k = constants(3, 0.5).kappa_ns;
  REQUIRE(k.has_value());
  CHECK(*k == doctest::Approx(1.0 / (2.0 * pi * pi)).epsilon(1e-14));
  const auto k2 = constants(2, 0.3).kappa_ns;
  REQUIRE(k2.has_value());
  CHECK(*k2 == doctest::Approx(std::tgamma(0.7) / (std::pow(4.0, 0.3) * pi * std::tgamma(0.3))).epsilon(1e-13));
  CHECK_FALSE(constants(1, 0.5).kappa_ns.has_value());
  CHECK_FALSE(constants(1, 0.7).kappa_ns.has_value());
}

TEST_CASE("order validation") {
  CHECK_THROWS_AS(constants(1, 0.0), DomainError);
  CHECK_THROWS_AS(constants(1, 1.0), DomainError);
  CHECK_THROWS_AS(constants(4, 0.5), DomainError);
  CHECK_THROWS_AS(constants(0, 0.5), DomainError);
  CHECK_THROWS_AS(beta_inverse(0.5, 0.5, 1.5), DomainError);
  CHECK_THROWS_AS(beta_inc_reg(-1.0, 0.5, 0.5), DomainError);
}

TEST_CASE("reference values") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(M_PI)).epsilon(1e-14));
  CHECK(log_gamma(1.5) == doctest::Approx(std::log(std::sqrt(M_PI) / 2.0)).epsilon(1e-14));
  CHECK(beta_inc_reg(2.5, 0.7, 1.0) == 1.0);
  CHECK(beta_inverse(1.0, 1.0, 0.25) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(beta_inverse(0.5, 0.5, 2.0 / 3.0) == doctest::Approx(0.75).epsilon(1e-12));
  const auto k = constants(1, 0.5);
  CHECK(k.c_ns == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
  CHECK(k.q_ns == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(k.a_ns == doctest::Approx(1.0 / M_PI).epsilon(1e-14));
}
