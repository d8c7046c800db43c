#include <cmath>

#include "doctest.h"

#include "fracops/errors.hpp"
#include "fracops/registry.hpp"
#include "fracops/special_math.hpp"

using namespace fracops;

TEST_CASE("parameters") {
  const Params p{{"a", "1.5"}, {"k", "7"}, {"bad", "1.5x"}, {"name", "ball"}};
  CHECK(param_double(p, "a", 0.0) == 1.5);
  CHECK(param_double(p, "missing", 2.0) == 2.0);
  CHECK(param_int(p, "k", 0) == 7);
  CHECK(param_string(p, "name", "") == "ball");
  CHECK_THROWS_AS(param_double(p, "bad", 0.0), DomainError);
  CHECK_THROWS_AS(param_int(p, "a", 0), DomainError);
  CHECK(parse_point("1,2,3", 3)[2] == 3.0);
  CHECK(parse_point("0", 3).norm() == 0.0);
  CHECK_THROWS_AS(parse_point("1,2", 3), DomainError);
}

TEST_CASE("every registered name builds") {
  for (const auto& name : field_names()) CHECK_NOTHROW(make_field(name, 1, 0.5, {}));
  for (const auto& name : exterior_names()) CHECK_NOTHROW(make_exterior(name, 1, 0.5, {}));
  for (const auto& name : domain_names()) CHECK_NOTHROW(make_domain(name, 1, {}));
  CHECK_THROWS_AS(make_field("nope", 1, 0.5, {}), DomainError);
  CHECK_THROWS_AS(make_exterior("nope", 1, 0.5, {}), DomainError);
  CHECK_THROWS_AS(make_domain("nope", 1, {}), DomainError);
}

TEST_CASE("registry entries carry their parameters") {
  const auto f = make_field("shifted_halfspace", 1, 0.5, {{"shift", "3"}});
  CHECK(f.field(Point{1.0}) == doctest::Approx(2.0));
  const auto t = make_field("ball_torsion", 2, 0.5, {});
  CHECK(t.known_operator_value(Point{0.0, 0.0}) == doctest::Approx(constants(2, 0.5).q_ns));
  const auto b = make_field("bump", 1, 0.5, {{"center", "0.5"}, {"radius", "0.25"}, {"amplitude", "2"}});
  CHECK(b.field(Point{0.5}) == doctest::Approx(2.0));
  CHECK(b.field(Point{0.8}) == 0.0);
  const auto g = make_exterior("annulus_indicator", 1, 0.5, {});
  CHECK(g(Point{-2.5}) == 1.0);
  CHECK(g(Point{1.5}) == 0.0);
  const auto d = make_domain("interval", 1, {{"a", "0"}, {"b", "4"}});
  CHECK(d->dist_to_complement(Point{1.0}) == doctest::Approx(1.0));
  const auto ball = make_domain("ball", 2, {{"center", "1,1"}, {"radius", "0.5"}});
  CHECK(ball->contains(Point{1.2, 1.2}));
  CHECK_FALSE(ball->contains(Point{0.0, 0.0}));
}
