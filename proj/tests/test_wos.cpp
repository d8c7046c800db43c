#include <cmath>
#include <cstdlib>
#include <numbers>
#include <set>

#include "doctest.h"

#include "fracops/errors.hpp"
#include "fracops/exact_solutions.hpp"
#include "fracops/fields.hpp"
#include "fracops/wos.hpp"

using namespace fracops;
using std::numbers::pi;

TEST_CASE("counter-based generator") {
  CounterRng a(7, 3), b(7, 3), c(7, 4), d(8, 3);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a();
    CHECK(x == b());
    seen.insert(x);
    seen.insert(c());
    seen.insert(d());
  }
  CHECK(seen.size() == 3000);
  CounterRng u(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double v = u.uniform();
    REQUIRE(v > 0.0);
    REQUIRE(v < 1.0);
    sum += v;
  }
  CHECK(std::abs(sum / 100000 - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / 100000));
}

TEST_CASE("exit radius law") {
  for (double s : {0.3, 0.5, 0.8}) {
    CounterRng rng(11, 0);
    const int m = 40000;
    int beyond = 0;
    for (int i = 0; i < m; ++i) {
      const double r = sample_exit_radius(rng, s);
      REQUIRE(r >= 1.0);
      beyond += r > 2.0;
    }
    // At s = 1/2, P(rho > 2) = 1 - (2/pi) asin(sqrt(3)/2) = 1/3.
    if (s == 0.5) CHECK(std::abs(beyond / double(m) - 1.0 / 3.0) < 4.0 * std::sqrt(2.0 / 9.0 / m));
  }
  CounterRng rng(1, 0);
  for (int n = 1; n <= 3; ++n) {
    Point c(n);
    c[0] = 0.5;
    for (int i = 0; i < 100; ++i) CHECK((sample_exit(rng, c, 0.25, n, 0.4) - c).norm() >= 0.25 * (1.0 - 1e-12));
  }
}

TEST_CASE("domains") {
  const auto ball = make_ball(Point{0.0, 0.0}, 2.0);
  CHECK(ball->contains(Point{1.0, 1.0}));
  CHECK_FALSE(ball->contains(Point{2.0, 0.1}));
  CHECK(ball->dist_to_complement(Point{0.5, 0.0}) == doctest::Approx(1.5));
  CHECK_FALSE(ball->contains(ball->nearest_exterior(Point{0.5, 0.0})));

  const auto iv = make_interval(-1.0, 3.0);
  CHECK(iv->dist_to_complement(Point{2.5}) == doctest::Approx(0.5));
  const auto box = make_box(Point{0.0, 0.0}, Point{1.0, 2.0});
  CHECK(box->dist_to_complement(Point{0.2, 1.0}) == doctest::Approx(0.2));
  const auto hs = make_halfspace(Point{0.0, 1.0}, -1.0);
  CHECK(hs->contains(Point{5.0, -0.5}));
  CHECK(hs->dist_to_complement(Point{5.0, -0.5}) == doctest::Approx(0.5));

  const auto u = make_union({make_interval(-1.0, 1.0), make_interval(0.5, 3.0)});
  CHECK(u->contains(Point{2.0}));
  CHECK(u->dist_to_complement(Point{0.8}) >= 0.2 - 1e-15);
  const auto x = make_intersection({make_interval(-1.0, 1.0), make_interval(0.5, 3.0)});
  CHECK_FALSE(x->contains(Point{0.0}));
  CHECK(x->dist_to_complement(Point{0.7}) == doctest::Approx(0.2));

  CHECK_THROWS_AS(make_ball(Point{0.0}, 0.0), DomainError);
  CHECK_THROWS_AS(make_interval(1.0, 1.0), DomainError);
  CHECK_THROWS_AS(make_union({}), DomainError);
  CHECK_THROWS_AS(make_union({make_interval(0.0, 1.0), make_ball(Point{0.0, 0.0}, 1.0)}), DomainError);
}

TEST_CASE("one step from the center of a ball samples the Poisson kernel exactly") {
  // Indicator of 2 < |z| < 3; for s = 1/2 its Poisson integral is (2/pi)(acos(1/3) - acos(1/2)).
  ExteriorData g;
  g.name = "annulus";
  g.g = [](const Point& z) { return std::abs(z[0]) > 2.0 && std::abs(z[0]) < 3.0 ? 1.0 : 0.0; };
  g.decay_exponent = 0.0;
  WosConfig cfg;
  cfg.n_samples = 200000;
  cfg.master_seed = 3;
  const auto est = wos_solve(*make_ball(Point{0.0}, 1.0), g, Point{0.0}, 0.5, cfg);
  const double exact = 2.0 / pi * (std::acos(1.0 / 3.0) - std::acos(0.5));
  CHECK(est.mean_steps == 1.0);
  CHECK(std::abs(est.mean - exact) < 4.0 * est.std_error);
}

TEST_CASE("harmonic extension in two dimensions") {
  const double s = 0.6;
  const auto o = shifted_halfspace(2, s, Point{1.0, 0.0}, 1.0);
  WosConfig cfg;
  cfg.n_samples = 50000;
  cfg.master_seed = 5;
  const Point x{0.3, 0.2};
  const auto est = wos_solve(*make_ball(Point{0.0, 0.0}, 1.0), exterior_from_field(o.field), x, s, cfg);
  CHECK(est.max_steps_hit == 0);
  CHECK(std::abs(est.mean - std::pow(1.3, s)) < 4.0 * est.std_error);
}

TEST_CASE("estimates are reproducible and independent of the worker count") {
  const auto dom = make_interval(-1.0, 1.0);
  const auto g = exterior_from_field(ball_torsion(1, 0.5).field);
  ExteriorData one = constant_exterior(1.0);
  WosConfig cfg;
  cfg.n_samples = 20000;
  cfg.master_seed = 42;
  setenv("FRACOPS_THREADS", "1", 1);
  const auto a = wos_solve(*dom, one, Point{0.4}, 0.3, cfg);
  setenv("FRACOPS_THREADS", "4", 1);
  const auto b = wos_solve(*dom, one, Point{0.4}, 0.3, cfg);
  unsetenv("FRACOPS_THREADS");
  CHECK(a.mean == b.mean);
  CHECK(a.std_error == b.std_error);
  CHECK(a.mean_steps == b.mean_steps);
  CHECK(a.mean == doctest::Approx(1.0).epsilon(1e-15));
  cfg.master_seed = 43;
  const auto c = wos_solve(*dom, g, Point{0.4}, 0.5, cfg);
  CHECK(c.mean == 0.0);
}

TEST_CASE("argument validation") {
  const auto dom = make_interval(-1.0, 1.0);
  CHECK_THROWS_AS(wos_solve(*dom, constant_exterior(1.0), Point{2.0}, 0.5), DomainError);
  CHECK_THROWS_AS(wos_solve(*dom, constant_exterior(1.0), Point{0.0, 0.0}, 0.5), DomainError);
  const auto fast = exterior_from_field(halfspace_power(1, 1.2, Point{1.0}, 1.0));
  CHECK_THROWS_AS(wos_solve(*dom, fast, Point{0.0}, 0.5), DomainError);
  WosConfig bad;
  bad.n_samples = 0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  bad = {};
  bad.radius_safety = 1.5;
  CHECK_THROWS_AS(bad.validate(), DomainError);
}
