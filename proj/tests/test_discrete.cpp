#include <cmath>
#include <random>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "doctest.h"

#include "fracops/discrete.hpp"
#include "fracops/errors.hpp"
#include "fracops/exact_solutions.hpp"
#include "fracops/fields.hpp"
#include "fracops/special_math.hpp"

using namespace fracops;

namespace {

GridFunction1D zero_exterior(const Grid1D& grid, Eigen::VectorXd values) {
  return {grid, std::move(values), constant_exterior(0.0)};
}

double torsion_error(double s, int N) {
  const Grid1D grid{-1.0, 1.0, N};
  const DiscreteOperator op = assemble_operator(s, grid);
  const auto u = solve_dirichlet(op, Eigen::VectorXd::Constant(N, constants(1, s).q_ns), constant_exterior(0.0));
  double err = 0.0;
  for (int i = 0; i < N; ++i) {
    const double x = grid.node(i);
    if (std::abs(x) <= 0.5) err = std::max(err, std::abs(u.values[i] - std::pow(1.0 - x * x, s)));
  }
  return err;
}

}  // namespace

TEST_CASE("matrix structure") {
  for (double s : {0.1, 0.5, 0.9}) {
    const Grid1D grid{-1.0, 2.0, 40};
    const DiscreteOperator op = assemble_operator(s, grid);
    const Eigen::MatrixXd& A = op.matrix();
    CHECK((A - A.transpose()).cwiseAbs().maxCoeff() == 0.0);
    for (int i = 0; i < grid.N; ++i)
      for (int j = 0; j < grid.N; ++j)
        if (i != j) REQUIRE(A(i, j) <= 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
    // Constants are annihilated once the exterior value is included.
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(grid.N);
    const Eigen::VectorXd r = op.apply(ones, constant_exterior(1.0));
    CHECK(r.cwiseAbs().maxCoeff() < 1e-10 * A(0, 0));
    // Toeplitz.
    CHECK(A(3, 7) == doctest::Approx(A(10, 14)).epsilon(1e-15));
  }
}

TEST_CASE("Dirichlet solve reproduces constants and converges to the torsion function") {
  const Grid1D grid{-1.0, 1.0, 64};
  const DiscreteOperator op = assemble_operator(0.4, grid);
  const auto u = solve_dirichlet(op, Eigen::VectorXd::Zero(64), constant_exterior(2.0));
  CHECK((u.values.array() - 2.0).abs().maxCoeff() < 1e-10);

  CHECK(torsion_error(0.5, 512) < 5e-3);
  for (double s : {0.3, 0.7}) CHECK(torsion_error(s, 256) < 1.1 * torsion_error(s, 128));
}

TEST_CASE("energy is a symmetric positive bilinear form") {
  const Grid1D grid{-1.0, 1.0, 50};
  const DiscreteOperator op = assemble_operator(0.6, grid);
  std::mt19937_64 gen(3);
  std::normal_distribution<double> N01;
  Eigen::VectorXd a(50), b(50);
  for (int i = 0; i < 50; ++i) a[i] = N01(gen), b[i] = N01(gen);
  const auto u = zero_exterior(grid, a), v = zero_exterior(grid, b);
  const auto sum = zero_exterior(grid, a + b), diff = zero_exterior(grid, a - b);
  const double uv = energy(op, u, v);
  CHECK(uv == doctest::Approx(energy(op, v, u)).epsilon(1e-12));
  CHECK(energy(op, u, u) > 0.0);
  CHECK(uv == doctest::Approx(0.25 * (energy(op, sum, sum) - energy(op, diff, diff))).epsilon(1e-10));
  CHECK(energy(op, u, u) == doctest::Approx(grid.h() * a.dot(op.matrix() * a)).epsilon(1e-12));
}

TEST_CASE("discrete maximum and comparison principles") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const double s = 0.1 + 0.8 * U(gen);
    const int N = 20 + static_cast<int>(60 * U(gen));
    const Grid1D grid{-1.0, 1.0, N};
    const DiscreteOperator op = assemble_operator(s, grid);
    Eigen::VectorXd f(N), bump(N);
    for (int i = 0; i < N; ++i) f[i] = U(gen) < 0.5 ? 0.0 : U(gen), bump[i] = U(gen);
    const auto u = solve_dirichlet(op, f, constant_exterior(U(gen)));
    CHECK(u.values.minCoeff() >= -1e-12);
    const auto w = solve_dirichlet(op, f + bump, constant_exterior(0.0));
    const auto w0 = solve_dirichlet(op, f, constant_exterior(0.0));
    CHECK((w.values - w0.values).minCoeff() >= -1e-12);
  }
}

TEST_CASE("obstacle below zero leaves the solution at zero") {
  const Grid1D grid{-1.0, 1.0, 100};
  const DiscreteOperator op = assemble_operator(0.5, grid);
  Eigen::VectorXd phi(100);
  for (int i = 0; i < 100; ++i) phi[i] = -0.1 - grid.node(i) * grid.node(i);
  const auto sol = solve_obstacle(op, phi, constant_exterior(0.0), 1e-12);
  CHECK(sol.contact_set.empty());
  CHECK(sol.v.values.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("obstacle solution satisfies the complementarity system") {
  for (double s : {0.3, 0.7}) {
    const Grid1D grid{-1.0, 1.0, 300};
    const DiscreteOperator op = assemble_operator(s, grid);
    Eigen::VectorXd phi(300);
    for (int i = 0; i < 300; ++i) phi[i] = 0.3 - std::pow(grid.node(i) - 0.2, 2);
    const auto sol = solve_obstacle(op, phi, constant_exterior(0.0), 1e-11);
    const Eigen::VectorXd Lv = op.apply(sol.v);
    CHECK(Lv.minCoeff() > -1e-9);
    CHECK((sol.v.values - phi).minCoeff() > -1e-11);
    CHECK(complementarity_residual(op, sol.v.values, phi, constant_exterior(0.0)) < 1e-11);
    CHECK_FALSE(sol.contact_set.empty());
    for (int i : sol.contact_set) CHECK(sol.v.values[i] - phi[i] < 1e-9);
  }
}

TEST_CASE("obstacle solver reports nonconvergence") {
  const Grid1D grid{-1.0, 1.0, 200};
  const DiscreteOperator op = assemble_operator(0.5, grid);
  Eigen::VectorXd phi(200);
  for (int i = 0; i < 200; ++i) phi[i] = 0.5 - grid.node(i) * grid.node(i);
  ObstacleOptions opts;
  opts.max_iterations = 1;
  opts.warmup_sweeps = 1;
  CHECK_THROWS_AS(solve_obstacle(op, phi, constant_exterior(0.0), 1e-30, opts), NonConvergenceError);
}

TEST_CASE("growth fit recovers a synthetic exponent") {
  const Grid1D grid{-1.0, 1.0, 1023};
  const int j0 = 700;
  const double xs = grid.node(j0);
  Eigen::VectorXd phi = Eigen::VectorXd::Zero(grid.N), v(grid.N);
  ObstacleSolution sol;
  for (int i = 0; i < grid.N; ++i) {
    const double x = grid.node(i);
    v[i] = x > xs ? std::pow(x - xs, 1.5) : 0.0;
    if (i <= j0) sol.contact_set.push_back(i);
  }
  sol.v = zero_exterior(grid, v);
  const GrowthFit fit = fit_growth_exponent(sol, phi, Side::right);
  CHECK(fit.exponent == doctest::Approx(1.5).epsilon(1e-10));
  CHECK(fit.r2 > 1.0 - 1e-12);
  CHECK(fit.free_boundary == doctest::Approx(xs));
  CHECK_THROWS_AS(fit_growth_exponent(sol, phi, Side::right, IndexRange{j0, j0 + 10}), DomainError);
}

TEST_CASE("second differences and CSV output") {
  const Grid1D grid{0.0, 1.0, 9};
  Eigen::VectorXd v(9);
  for (int i = 0; i < 9; ++i) v[i] = grid.node(i) * grid.node(i);
  const GridFunction1D u{grid, v, exterior_from_field(halfspace_power(1, 2.0, Point{1.0}, 0.0))};
  const Eigen::VectorXd d2 = second_differences(u);
  CHECK((d2.array() - 2.0).abs().maxCoeff() < 1e-9);
  std::ostringstream os;
  write_csv(os, u);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "x,value");
  int rows = 0;
  while (std::getline(is, line)) ++rows;
  CHECK(rows == 9);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(assemble_operator(0.01, Grid1D{-1.0, 1.0, 10}), ParameterError);
  CHECK_THROWS_AS(assemble_operator(0.5, Grid1D{1.0, -1.0, 10}), DomainError);
  CHECK_THROWS_AS(assemble_operator(0.5, Grid1D{-1.0, 1.0, 1}), DomainError);
  const DiscreteOperator op = assemble_operator(0.5, Grid1D{-1.0, 1.0, 10});
  CHECK_THROWS_AS(solve_dirichlet(op, Eigen::VectorXd::Zero(9), constant_exterior(0.0)), DomainError);
}

TEST_CASE("Dirichlet solve with half-space exterior data") {
  const double s = 0.5;
  const int N = 1024;
  const Grid1D grid{-1.0, 1.0, N};
  const auto field = shifted_halfspace(1, s, Point{1.0}, 1.0).field;
  const auto u = solve_dirichlet(assemble_operator(s, grid), Eigen::VectorXd::Zero(N), exterior_from_field(field));
  double err = 0.0;
  for (int i = 0; i < N; ++i) err = std::max(err, std::abs(u.values[i] - field(Point{grid.node(i)})));
  CHECK(err < 1e-2);
}
