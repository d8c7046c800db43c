#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"

#include "fracops/errors.hpp"
#include "fracops/evaluate.hpp"
#include "fracops/exact_solutions.hpp"
#include "fracops/fields.hpp"
#include "fracops/quadrature.hpp"
#include "fracops/special_math.hpp"

using namespace fracops;

namespace {

// Brute-force 1D principal value for a smooth bump supported in [lo, hi]:
// c int_0^inf (2u(x) - u(x+y) - u(x-y)) y^{-1-2s} dy. Below delta the second difference is
// replaced by -u''(x) y^2; past the support only 2u(x) remains.
double brute_force_1d(const ScalarField& u, double x, double s, double lo, double hi) {
  using boost::math::quadrature::gauss_kronrod;
  auto at = [&](double z) { return u(Point{z}); };
  auto f = [&](double y) { return (2.0 * at(x) - at(x + y) - at(x - y)) * std::pow(y, -1.0 - 2.0 * s); };
  const double h = 1e-3, delta = 1e-3;
  const double u2 = (-at(x + 2 * h) + 16 * at(x + h) - 30 * at(x) + 16 * at(x - h) - at(x - 2 * h)) / (12 * h * h);
  std::vector<double> cuts{delta, std::abs(x - lo), std::abs(x - hi), 0.5 * (hi - lo)};
  const double L = std::max(std::abs(x - lo), std::abs(x - hi));
  std::sort(cuts.begin(), cuts.end());
  double total = -u2 * std::pow(delta, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  double a = delta;
  for (double b : cuts) {
    if (b > a) total += gauss_kronrod<double, 61>::integrate(f, a, b, 10, 1e-10);
    a = std::max(a, b);
  }
  total += 2.0 * at(x) * std::pow(L, -2.0 * s) / (2.0 * s);
  return constants(1, s).c_ns * total;
}

}  // namespace

TEST_CASE("operator on a bump matches brute-force quadrature") {
  for (double s : {0.3, 0.5, 0.8}) {
    const ScalarField u = bump(Point{0.1}, 0.9, 1.3);
    const Kernel K = Kernel::fractional_laplacian(1, s);
    for (double x : {-0.4, 0.1, 0.5, 1.5}) {
      const Evaluation e = apply_operator(K, u, Point{x});
      const double ref = brute_force_1d(u, x, s, -0.8, 1.0);
      CHECK(std::abs(e.value - ref) < 2e-5 * (1.0 + std::abs(ref)));
    }
  }
}

TEST_CASE("torsion field in two and three dimensions") {
  for (int n : {2, 3})
    for (double s : {0.3, 0.7}) {
      const auto o = ball_torsion(n, s);
      const Kernel K = Kernel::fractional_laplacian(n, s);
      Point x(n);
      x[0] = 0.2;
      x[n - 1] += -0.35;
      const double q = constants(n, s).q_ns;
      CHECK(apply_operator(K, o.field, x).value == doctest::Approx(q).epsilon(1e-4));
      CHECK(o.known_operator_value(x) == doctest::Approx(q));
    }
}

TEST_CASE("fundamental solution is harmonic away from the pole") {
  for (auto [n, s] : {std::pair{3, 0.5}, std::pair{2, 0.3}, std::pair{3, 0.8}}) {
    const auto o = fundamental_solution(n, s);
    const Kernel K = Kernel::fractional_laplacian(n, s);
    Point x(n);
    x[0] = 0.7;
    x[1] = -0.2;
    const Evaluation e = apply_operator(K, o.field, x);
    CHECK(std::abs(e.value) < 1e-4 * std::abs(o.field(x)));
  }
}

TEST_CASE("linearity") {
  const double s = 0.4;
  const Kernel K = Kernel::fractional_laplacian(2, s);
  const ScalarField u = bump(Point{0.1, 0.0}, 0.8, 1.0);
  const ScalarField v = bump(Point{-0.3, 0.4}, 0.6, 2.0);
  const ScalarField w = linear_combination(2.5, u, -0.7, v);
  const Point x{0.05, 0.2};
  const double lhs = apply_operator(K, w, x).value;
  const double rhs = 2.5 * apply_operator(K, u, x).value - 0.7 * apply_operator(K, v, x).value;
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-6));
}

TEST_CASE("translation and scaling covariance") {
  const double s = 0.6;
  const Kernel K = Kernel::fractional_laplacian(1, s);
  const ScalarField u = bump(Point{0.0}, 1.0, 1.0);
  const Point x{0.2};
  const double base = apply_operator(K, u, Point{0.5}).value;
  CHECK(apply_operator(K, translate(u, Point{0.3}), x).value == doctest::Approx(base).epsilon(1e-7));
  // u(t x) has operator t^{2s} (Lu)(t x).
  const double t = 2.5;
  CHECK(apply_operator(K, dilate(u, t), x).value == doctest::Approx(std::pow(t, 2 * s) * base).epsilon(1e-6));
}

TEST_CASE("extremal operators") {
  const double s = 0.5;
  const ScalarField u = linear_combination(1.0, bump(Point{0.2}, 0.7, 1.0), -0.8, bump(Point{-0.5}, 0.5, 1.0));
  const ScalarField neg = linear_combination(-1.0, u, 0.0, u);
  const Point x{0.1};
  const auto mp = apply_extremal(0.5, 2.0, Extremal::plus, s, neg, x);
  const auto mm = apply_extremal(0.5, 2.0, Extremal::minus, s, u, x);
  CHECK(mp.value == doctest::Approx(-mm.value).epsilon(1e-9));

  const double c = constants(1, s).c_ns;
  const auto Lu = apply_operator(Kernel::fractional_laplacian(1, s), u, x);
  CHECK(apply_extremal(1.0, 1.0, Extremal::plus, s, u, x).value == doctest::Approx(-Lu.value / c).epsilon(1e-7));
  CHECK(mm.value <= -Lu.value / c + 1e-9);
  CHECK(apply_extremal(0.5, 2.0, Extremal::plus, s, u, x).value >= -Lu.value / c - 1e-9);
  CHECK_THROWS_AS(apply_extremal(2.0, 1.0, Extremal::plus, s, u, x), DomainError);
}

TEST_CASE("mean value formula reproduces s-harmonic functions") {
  for (double s : {0.3, 0.7}) {
    const auto o = shifted_halfspace(1, s, Point{1.0}, 1.0);
    CHECK(mean_value(o.field, 1.0, 1, s).value == doctest::Approx(1.0).epsilon(1e-5));
  }
  const auto o2 = shifted_halfspace(2, 0.5, Point{1.0, 0.0}, 2.0);
  CHECK(mean_value(o2.field, 1.5, 2, 0.5).value == doctest::Approx(std::sqrt(2.0)).epsilon(1e-4));
}

TEST_CASE("argument validation") {
  const Kernel K = Kernel::fractional_laplacian(1, 0.3);
  // Growth of order 0.7 is too fast for an operator of order 0.6.
  CHECK_THROWS_AS(apply_operator(K, halfspace_power(1, 0.7, Point{1.0}, 1.0), Point{0.0}), DomainError);
  CHECK_THROWS_AS(apply_operator(K, ball_torsion(2, 0.3).field, Point{0.0}), DomainError);
  QuadConfig bad;
  bad.angular_order = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}

TEST_CASE("graded hemisphere rule integrates polar singularities") {
  const double pi = 3.141592653589793;
  for (double grading : {1.0, 4.0}) {
    // Area of the half circle and of the hemisphere, and the mean of theta . e over them.
    const auto r2 = quad::polar_graded_rule(Point{0.6, 0.8}, 24, grading);
    const auto r3 = quad::polar_graded_rule(Point{0.0, 0.0, 2.0}, 24, grading);
    double w2 = 0.0, c2 = 0.0, w3 = 0.0, c3 = 0.0;
    for (const auto& d : r2) w2 += d.weight, c2 += d.weight * d.theta.dot(Point{0.6, 0.8});
    for (const auto& d : r3) w3 += d.weight, c3 += d.weight * d.theta[2];
    CHECK(w2 == doctest::Approx(pi).epsilon(1e-12));
    CHECK(c2 == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(w3 == doctest::Approx(2.0 * pi).epsilon(1e-12));
    CHECK(c3 == doctest::Approx(pi).epsilon(1e-12));
  }
  // psi^{-1/2} on the half circle: 2 int_0^{pi/2} psi^{-1/2} dpsi = 4 sqrt(pi/2).
  double acc = 0.0;
  for (const auto& d : quad::polar_graded_rule(Point{1.0, 0.0}, 16, 4.0))
    acc += d.weight / std::sqrt(std::atan2(std::abs(d.theta[1]), d.theta[0]));
  CHECK(acc == doctest::Approx(4.0 * std::sqrt(pi / 2.0)).epsilon(1e-8));
  CHECK_THROWS_AS(quad::polar_graded_rule(Point{0.0, 0.0}, 8, 2.0), DomainError);
}

TEST_CASE("reference values of the operators") {
  const double s = 0.5;
  const ScalarField one = constant_field(1, 1.0);
  CHECK(std::abs(apply_operator(Kernel::fractional_laplacian(1, s), one, Point{0.3}).value) < 1e-12);
  CHECK(std::abs(apply_extremal(0.5, 2.0, Extremal::plus, s, constant_field(1, 0.0), Point{0.0}).value) < 1e-14);

  // Torsion is concave at the origin, so M+ picks the lower constant: -lambda q / c = -lambda pi.
  const double lambda = 0.5;
  const auto tor = ball_torsion(1, s);
  CHECK(apply_extremal(lambda, 2.0, Extremal::plus, s, tor.field, Point{0.0}).value ==
        doctest::Approx(-lambda * M_PI).epsilon(1e-5));

  CHECK(mean_value(one, 0.7, 1, s).value == doctest::Approx(1.0).epsilon(1e-9));
  const auto hs = shifted_halfspace(1, s, Point{1.0}, 1.0);
  CHECK(mean_value(hs.field, 0.5, 1, s).value == doctest::Approx(1.0).epsilon(1e-6));

  // Indicator of 2 < |z| < 3 averaged over the exterior of the unit ball.
  ScalarField ind;
  ind.name = "annulus";
  ind.eval = [](const Point& z) { const double r = z.norm(); return (r > 2.0 && r < 3.0) ? 1.0 : 0.0; };
  ind.c2_radius = [](const Point& z) { return std::max(0.0, std::min(std::abs(z.norm() - 2.0), std::abs(z.norm() - 3.0))); };
  ind.support_radius = 3.0;
  ind.singular_radii = [](const Point& x, const Point& theta) {
    std::vector<double> r;
    for (double R : {2.0, 3.0})
      for (double sgn : {1.0, -1.0}) {
        const double t = sgn * R - x.dot(theta);
        if (t > 0) r.push_back(t);
      }
    return r;
  };
  const double expect = 2.0 / M_PI * (std::acos(1.0 / 3.0) - std::acos(0.5));
  CHECK(mean_value(ind, 1.0, 1, s).value == doctest::Approx(expect).epsilon(1e-7));
}

TEST_CASE("translation invariance") {
  const double s = 0.4;
  const Kernel K = Kernel::fractional_laplacian(1, s);
  const ScalarField u = bump(Point{0.1}, 0.8, 1.0);
  const Point h{0.35}, x{0.2};
  CHECK(apply_operator(K, translate(u, h), x - h).value == doctest::Approx(apply_operator(K, u, x).value).epsilon(1e-8));
}
