#include "fracops/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "fracops/discrete.hpp"
#include "fracops/errors.hpp"
#include "fracops/evaluate.hpp"
#include "fracops/exact_solutions.hpp"
#include "fracops/heat_kernel.hpp"
#include "fracops/kernels.hpp"
#include "fracops/quadrature.hpp"
#include "fracops/special_math.hpp"
#include "fracops/wos.hpp"

namespace fracops {

namespace {

// Seed shared by every stochastic check.
constexpr std::uint64_t kSeed = 7;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", v);
  return buf;
}

CheckResult make(bool passed, double measured, double threshold, const std::string& detail) {
  CheckResult r;
  r.passed = passed;
  r.measured = measured;
  r.threshold = threshold;
  r.detail = detail;
  return r;
}

ScalarField negated(const ScalarField& u) {
  ScalarField w = u;
  w.name = "-" + u.name;
  w.eval = [f = u.eval](const Point& x) { return -f(x); };
  if (u.far_tail)
    w.far_tail = [f = u.far_tail](const Point& x, const Point& th, double R, double s) { return -f(x, th, R, s); };
  return w;
}

Eigen::VectorXd quadratic_obstacle(const Grid1D& grid) {
  Eigen::VectorXd phi(grid.N);
  for (int i = 0; i < grid.N; ++i) phi[i] = 0.5 - grid.node(i) * grid.node(i);
  return phi;
}

// Kolmogorov distribution tail P(sqrt(n) D > lambda), asymptotic series.
double kolmogorov_pvalue(double lambda) {
  if (lambda < 0.2) return 1.0;
  double p = 0.0;
  for (int k = 1; k <= 100; ++k) p += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * lambda * lambda);
  return std::clamp(p, 0.0, 1.0);
}

// 1. c_{n,1/2} against the normalizing constant of sqrt(-Delta).
CheckResult check_constants() {
  double worst = 0.0;
  for (int n = 1; n <= 3; ++n) {
    const double c = constants(n, 0.5).c_ns;
    worst = std::max(worst, std::abs(c - half_laplacian_constant(n)) / c);
  }
  return make(worst < 1e-12, worst, 1e-12, "max rel. difference over n = 1, 2, 3");
}

// 2. Quadrature of int (1 - cos y_1) |y|^{-n-2s} dy against 1/c_ns.
CheckResult check_symbol_normalization() {
  double worst = 0.0;
  std::ostringstream d;
  for (auto [n, s] : std::vector<std::pair<int, double>>{{1, 0.25}, {1, 0.5}, {1, 0.75}, {2, 0.5}}) {
    const Kernel K = Kernel::comparable(n, s, 1.0, 1.0, [n, s](const Point& y) { return std::pow(y.norm(), -n - 2.0 * s); });
    const double integral = fourier_symbol(K, Point::unit(n, 0), 1e-9);
    const double c = constants(n, s).c_ns;
    const double rel = std::abs(integral * c - 1.0);
    worst = std::max(worst, rel);
    d << "(n=" << n << ",s=" << s << ") rel " << num(rel) << "; ";
  }
  return make(worst < 1e-4, worst, 1e-4, d.str());
}

// 3. (-Delta)^s (1-x^2)^s_+ = q_{1,s} inside the unit interval.
CheckResult check_torsion() {
  double worst = 0.0;
  std::ostringstream d;
  for (double s : {0.3, 0.5, 0.7}) {
    const auto oracle = ball_torsion(1, s);
    const Kernel K = Kernel::fractional_laplacian(1, s);
    const double q = constants(1, s).q_ns;
    double w = 0.0;
    for (double x : {0.0, 0.3, -0.3, 0.6, -0.6})
      w = std::max(w, std::abs(apply_operator(K, oracle.field, Point{x}).value - q) / q);
    worst = std::max(worst, w);
    d << "s=" << s << " rel " << num(w) << "; ";
  }
  return make(worst < 1e-3, worst, 1e-3, d.str() + "q_{1,1/2} = " + std::to_string(constants(1, 0.5).q_ns));
}

// 4. (-Delta)^s (x+1)^s_+ = 0 on x > -1.
CheckResult check_halfspace() {
  double worst = 0.0;
  std::ostringstream d;
  for (double s : {0.3, 0.5, 0.7}) {
    const auto oracle = shifted_halfspace(1, s, Point{1.0}, 1.0);
    const Kernel K = Kernel::fractional_laplacian(1, s);
    const double q = constants(1, s).q_ns;
    double w = 0.0;
    for (double x : {-0.5, 0.0, 0.5}) w = std::max(w, std::abs(apply_operator(K, oracle.field, Point{x}).value) / q);
    worst = std::max(worst, w);
    d << "s=" << s << " |Lu|/q " << num(w) << "; ";
  }
  return make(worst < 1e-3, worst, 1e-3, d.str());
}

// 5. Total mass of the ball Poisson kernel and of the mean-value weight.
CheckResult check_normalizations() {
  double worst = 0.0;
  std::ostringstream d;
  for (double x : {0.0, 0.5}) {
    // z = +-1/w maps |z| > 1 onto w in (0, 1).
    auto side = [x](double sign) {
      auto f = [&](double w) {
        if (w <= 0.0 || w >= 1.0) return 0.0;
        return poisson_kernel_ball(1, 0.5, Point{x}, Point{sign / w}) / (w * w);
      };
      return quad::tanh_sinh(f, 0.0, 1.0, 1e-13).value;
    };
    const double mass = side(1.0) + side(-1.0);
    worst = std::max(worst, std::abs(mass - 1.0));
    d << "Poisson x=" << x << " mass-1 " << num(mass - 1.0) << "; ";
  }
  for (double s : {0.3, 0.7}) {
    for (int n = 1; n <= 3; ++n) {
      auto inner = [&](double t) { return mean_value_weight(t, n, s) * std::pow(t, n - 1); };
      auto outer = [&](double w) {
        if (w <= 0.0) return 0.0;
        return mean_value_weight(1.0 / w, n, s) * std::pow(w, -n - 1);
      };
      const double mass =
          sphere_area(n) * (quad::tanh_sinh(inner, 0.0, 1.0, 1e-13).value + quad::tanh_sinh(outer, 0.0, 1.0, 1e-13).value);
      worst = std::max(worst, std::abs(mass - 1.0));
      d << "omega s=" << s << " n=" << n << " mass-1 " << num(mass - 1.0) << "; ";
    }
  }
  return make(worst < 1e-4, worst, 1e-4, d.str());
}

// 6. Walk-on-spheres on (-1, 1) with g = (z+1)^s_+; exact solution (x+1)^s_+ gives u(0) = 1.
CheckResult check_wos() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst_se = 0.0;
  std::ostringstream d;
  for (double s : {0.3, 0.5, 0.7}) {
    const auto dom = make_interval(-1.0, 1.0);
    const auto g = exterior_from_field(shifted_halfspace(1, s, Point{1.0}, 1.0).field, {-1.0});
    WosConfig cfg;
    cfg.n_samples = 100000;
    cfg.master_seed = kSeed;
    const auto est = wos_solve(*dom, g, Point{0.0}, s, cfg);
    const bool mean_ok = std::abs(est.mean - 1.0) < 4.0 * est.std_error;
    const bool se_ok = est.std_error < 0.01;
    ok = ok && mean_ok && se_ok;
    worst_se = std::max(worst_se, est.std_error);
    d << "s=" << s << " mean " << est.mean << " stderr " << num(est.std_error) << (mean_ok ? "" : " [mean off]")
      << (se_ok ? "" : " [stderr >= 0.01]") << "; ";
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs < 60.0;
  d << "runtime " << secs << " s";
  return make(ok, worst_se, 0.01, d.str());
}

// 7. KS test of exit radii against the radial marginal of the exit density, integrated numerically.
CheckResult check_exit_law() {
  const int n_samples = 10000;
  bool ok = true;
  double worst_p = 1.0;
  std::ostringstream d;
  for (double s : {0.3, 0.5, 0.7}) {
    CounterRng rng(kSeed, 0);
    std::vector<double> rho(n_samples);
    for (double& r : rho) r = std::abs(sample_exit(rng, Point{0.0}, 1.0, 1, s)[0]);
    // Radial density of |z| for the unit ball in one dimension: 2 a_{1,s} / ((rho^2 - 1)^s rho).
    const double a = constants(1, s).a_ns;
    // With t = 1 + v^{1/(1-s)} the factor (t-1)^{-s} dt becomes dv / (1-s), leaving a smooth integrand.
    auto smooth = [&](double v) {
      const double t = 1.0 + std::pow(v, 1.0 / (1.0 - s));
      return 2.0 * a * std::pow(t + 1.0, -s) / (t * (1.0 - s));
    };
    auto density = [&](double t) {
      const double m = (t - 1.0) * (t + 1.0);
      return m > 0.0 ? 2.0 * a * std::pow(m, -s) / t : 0.0;
    };
    auto mass_between = [&](double t0, double t1) {
      return quad::gauss_kronrod(smooth, std::pow(t0 - 1.0, 1.0 - s), std::pow(t1 - 1.0, 1.0 - s), 1e-13).value;
    };
    std::vector<double> sorted = rho;
    std::sort(sorted.begin(), sorted.end());
    double F = 0.0, prev = 1.0, D = 0.0;
    for (int k = 0; k < n_samples; ++k) {
      if (sorted[k] > prev) F += quad::tanh_sinh(density, prev, sorted[k], 1e-12).value;
      prev = sorted[k];
      D = std::max({D, (k + 1.0) / n_samples - F, F - static_cast<double>(k) / n_samples});
    }
    const double p = kolmogorov_pvalue(std::sqrt(static_cast<double>(n_samples)) * D);
    ok = ok && p > 0.01;
    worst_p = std::min(worst_p, p);
    d << "s=" << s << " KS D " << num(D) << " p " << num(p) << "; ";
    if (s == 0.5) {
      const double oracle = 1.0 - mass_between(1.0, 2.0);
      const double frac = static_cast<double>(std::count_if(rho.begin(), rho.end(), [](double r) { return r > 2.0; })) / n_samples;
      const double sigma = std::sqrt((1.0 / 3.0) * (2.0 / 3.0) / n_samples);
      const bool point_ok = std::abs(frac - 1.0 / 3.0) < 3.0 * sigma && std::abs(oracle - 1.0 / 3.0) < 1e-9;
      ok = ok && point_ok;
      char ob[40];
      std::snprintf(ob, sizeof ob, "%.15f", oracle);
      d << "P(rho>2): empirical " << frac << ", quadrature " << ob << ", |diff|/sigma "
        << std::abs(frac - 1.0 / 3.0) / sigma << "; ";
    }
  }
  return make(ok, worst_p, 0.01, d.str() + "measured = smallest KS p-value");
}

double torsion_error(int N, double s) {
  const Grid1D grid{-1.0, 1.0, N};
  const auto op = assemble_operator(s, grid);
  const Eigen::VectorXd f = Eigen::VectorXd::Constant(N, constants(1, s).q_ns);
  const auto u = solve_dirichlet(op, f, constant_exterior(0.0));
  double err = 0.0;
  for (int i = 0; i < N; ++i) {
    const double x = grid.node(i);
    if (std::abs(x) <= 0.5) err = std::max(err, std::abs(u.values[i] - std::pow(1.0 - x * x, s)));
  }
  return err;
}

// 8. Refinement study of the Dirichlet solver against the torsion function.
CheckResult check_fd_convergence() {
  std::vector<double> errs;
  std::ostringstream d;
  for (int N : {256, 512, 1024}) {
    errs.push_back(torsion_error(N, 0.5));
    d << "N=" << N << " err " << num(errs.back()) << "; ";
  }
  const bool monotone = errs[1] <= 1.1 * errs[0] && errs[2] <= 1.1 * errs[1];
  d << "observed order " << std::log2(errs[1] / errs[2]);
  return make(monotone && errs[2] < 1e-2, errs[2], 1e-2, d.str());
}

// 9. Nonnegative data give nonnegative discrete solutions.
CheckResult check_max_principle() {
  std::mt19937_64 gen(kSeed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int N = 8 + static_cast<int>(U(gen) * 88);
    const double s = 0.1 + 0.8 * U(gen);
    const double a = U(gen) < 0.3 ? 0.0 : U(gen);
    const double b = U(gen) < 0.3 ? 0.0 : U(gen);
    const double c = U(gen) < 0.3 ? 0.0 : U(gen);
    ExteriorData g;
    g.name = "random";
    g.g = [=](const Point& z) {
      const double r = std::abs(z[0]);
      return a + b * (z[0] > -1.0 ? std::pow(z[0] + 1.0, s) : 0.0) + c * (r > 2.0 && r < 3.0 ? 1.0 : 0.0);
    };
    g.growth_bound = a + 2.0 * b + c;
    g.decay_exponent = s;
    g.breakpoints = {-3.0, -2.0, -1.0, 2.0, 3.0};
    Eigen::VectorXd f(N);
    for (int i = 0; i < N; ++i) f[i] = U(gen) < 0.3 ? 0.0 : U(gen);
    const auto op = assemble_operator(s, Grid1D{-1.0, 1.0, N});
    const auto u = solve_dirichlet(op, f, g);
    worst = std::min(worst, u.values.minCoeff());
  }
  return make(worst >= -1e-12, worst, -1e-12, "smallest solution value over 200 random nonnegative instances");
}

// 10. Complementarity of the quadratic-obstacle problem and monotonicity in the obstacle.
CheckResult check_obstacle() {
  std::ostringstream d;
  const Grid1D grid{-1.0, 1.0, 2048};
  const auto op = assemble_operator(0.5, grid);
  const Eigen::VectorXd phi = quadratic_obstacle(grid);
  const auto sol = solve_obstacle(op, phi, constant_exterior(0.0), 1e-10);
  const double dominance = (sol.v.values - phi).minCoeff();
  bool ok = sol.residual < 1e-8 && dominance >= -1e-14 && !sol.contact_set.empty();
  d << "N=2048 residual " << num(sol.residual) << ", min(v-phi) " << num(dominance) << ", contact nodes "
    << sol.contact_set.size() << ", iterations " << sol.iterations << "; ";

  std::mt19937_64 gen(kSeed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  const Grid1D small{-1.0, 1.0, 256};
  double worst = 0.0;
  for (int pair = 0; pair < 20; ++pair) {
    const double s = 0.2 + 0.6 * U(gen);
    const auto sop = assemble_operator(s, small);
    const double a0 = U(gen) - 0.3, a1 = U(gen), k = 1.0 + 3.0 * U(gen), ph = 6.3 * U(gen);
    const double bc = 2.0 * U(gen) - 1.0, br = 0.1 + 0.4 * U(gen), bh = U(gen);
    Eigen::VectorXd p1(small.N), p2(small.N);
    for (int i = 0; i < small.N; ++i) {
      const double x = small.node(i);
      p1[i] = a0 - a1 * x * x + 0.2 * std::sin(k * x + ph);
      const double y = (x - bc) / br;
      p2[i] = p1[i] + (std::abs(y) < 1.0 ? bh * (1.0 - y * y) : 0.0) + 0.05 * U(gen);
    }
    const auto v1 = solve_obstacle(sop, p1, constant_exterior(0.0), 1e-12);
    const auto v2 = solve_obstacle(sop, p2, constant_exterior(0.0), 1e-12);
    worst = std::max(worst, (v1.v.values - v2.v.values).maxCoeff());
  }
  ok = ok && worst <= 1e-10;
  d << "monotonicity: max(v1 - v2) over 20 pairs " << num(worst);
  return make(ok, sol.residual, 1e-8, d.str());
}

// 11. Growth exponent of v - phi at the free boundary.
CheckResult check_exponent() {
  const auto start = std::chrono::steady_clock::now();
  bool ok = true;
  double worst = 0.0;
  std::ostringstream d;
  for (double s : {0.3, 0.5}) {
    const Grid1D grid{-1.0, 1.0, 4096};
    const auto op = assemble_operator(s, grid);
    const Eigen::VectorXd phi = quadratic_obstacle(grid);
    const auto sol = solve_obstacle(op, phi, constant_exterior(0.0), 1e-10);
    for (Side side : {Side::left, Side::right}) {
      const auto fit = fit_growth_exponent(sol, phi, side);
      const double dev = std::abs(fit.exponent - (1.0 + s));
      ok = ok && dev <= 0.15 && fit.r2 > 0.99;
      worst = std::max(worst, dev);
      d << "s=" << s << (side == Side::left ? " left" : " right") << " exponent " << fit.exponent << " r2 " << fit.r2
        << " x* " << fit.free_boundary << "; ";
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  ok = ok && secs < 120.0;
  d << "runtime " << secs << " s";
  return make(ok, worst, 0.15, d.str());
}

// 12. Second differences of the obstacle solution on |x| <= 1/2 against -max|phi''| - eps_N, eps_N = h.
CheckResult check_semiconvexity() {
  bool ok = true;
  double worst = 0.0;
  std::ostringstream d;
  std::vector<double> eps;
  for (int N : {1024, 2048}) {
    const Grid1D grid{-1.0, 1.0, N};
    const auto op = assemble_operator(0.5, grid);
    const Eigen::VectorXd phi = quadratic_obstacle(grid);
    const auto sol = solve_obstacle(op, phi, constant_exterior(0.0), 1e-10);
    const Eigen::VectorXd d2 = second_differences(sol.v);
    double lowest = std::numeric_limits<double>::infinity();
    for (int i = 0; i < N; ++i)
      if (std::abs(grid.node(i)) <= 0.5) lowest = std::min(lowest, d2[i]);
    const double eps_n = grid.h();
    const double deficit = -2.0 - lowest;
    ok = ok && deficit <= eps_n;
    worst = std::max(worst, deficit / eps_n);
    eps.push_back(eps_n);
    d << "N=" << N << " min second difference " << lowest << ", deficit " << num(deficit) << ", eps_N " << num(eps_n)
      << "; ";
  }
  const double ratio = eps[0] / eps[1];
  ok = ok && std::abs(ratio - 2.0) <= 0.4;
  d << "eps ratio " << ratio << "; measured = max deficit / eps_N";
  return make(ok, worst, 1.0, d.str());
}

// 13. Algebra of the extremal operators on random smooth compactly supported fields.
CheckResult check_extremal() {
  std::mt19937_64 gen(kSeed);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst = 0.0;  // largest violation relative to the allowed slack
  int failures = 0;
  const double svals[] = {0.3, 0.5, 0.7};
  for (int trial = 0; trial < 50; ++trial) {
    const double s = svals[trial % 3];
    ScalarField u = bump(Point{2.0 * U(gen) - 1.0}, 0.3 + 0.7 * U(gen), 2.0 * U(gen) - 1.0);
    for (int k = 0; k < 2; ++k)
      u = linear_combination(1.0, u, 1.0, bump(Point{2.0 * U(gen) - 1.0}, 0.3 + 0.7 * U(gen), 2.0 * U(gen) - 1.0));
    const Point x{1.6 * U(gen) - 0.8};
    const double c = constants(1, s).c_ns;
    const double lam = 0.5 * c, Lam = 2.0 * c;
    const Kernel K = trial % 2 == 0
                         ? Kernel::fractional_laplacian(1, s)
                         : Kernel::comparable(1, s, lam, Lam, [c, s](const Point& y) {
                             const double r = y.norm();
                             return c * (1.0 + 0.5 * std::sin(std::log(r))) * std::pow(r, -1.0 - 2.0 * s);
                           });
    const auto Lu = apply_operator(K, u, x);
    const auto Mp = apply_extremal(lam, Lam, Extremal::plus, s, u, x);
    const auto Mm = apply_extremal(lam, Lam, Extremal::minus, s, u, x);
    const auto Mp_neg = apply_extremal(lam, Lam, Extremal::plus, s, negated(u), x);
    const auto M1 = apply_extremal(1.0, 1.0, Extremal::plus, s, u, x);
    const auto Lf = apply_operator(Kernel::fractional_laplacian(1, s), u, x);
    const double floor = 1e-9 * (1.0 + std::abs(Lu.value));
    auto track = [&](double violation, double slack) {
      if (violation > slack) ++failures;
      worst = std::max(worst, violation / slack);
    };
    track(std::abs(Mp_neg.value + Mm.value), Mp_neg.err_est + Mm.err_est + floor);
    track(Mm.value - (-Lu.value), Mm.err_est + Lu.err_est + floor);
    track(-Lu.value - Mp.value, Mp.err_est + Lu.err_est + floor);
    track(std::abs(M1.value + Lf.value / c), M1.err_est + Lf.err_est / c + floor);
  }
  return make(failures == 0, worst, 1.0,
              "50 random bump sums, half with an oscillating comparable kernel; measured = worst violation / slack");
}

// 14. Heat kernel by Fourier inversion: closed form at s = 1/2, total mass, semigroup property.
CheckResult check_heat() {
  bool ok = true;
  std::ostringstream d;
  const HeatKernel1D half(0.5, 1.0);
  double sup = 0.0;
  for (int j = -5000; j <= 5000; ++j) {
    const double x = 1e-3 * j;
    const double exact = 1.0 / (std::numbers::pi * (1.0 + x * x));
    sup = std::max(sup, std::abs(half(x) - exact) / exact);
  }
  ok = ok && sup < 1e-3;
  d << "s=1/2 sup rel. err on |x|<=5 " << num(sup) << "; ";

  double worst_mass = 0.0, worst_semi = 0.0;
  for (double s : {0.3, 0.7}) {
    const HeatKernel1D p1(s, 1.0);
    // Trapezoid over one period of the periodized kernel equals its integral over the line.
    const double mass = p1.total_mass();
    const auto vals = p1.values();
    const std::size_t J = vals.size() / 2;
    worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
    d << "s=" << s << " mass-1 " << num(mass - 1.0) << "; ";

    // Semigroup: p(2) = p(1) * p(1), convolution on the grid of p(1).
    const HeatKernel1D p2(s, 2.0);
    for (double x : {0.0, 0.5, 1.0, 2.0, 5.0}) {
      double conv = 0.0;
      const double h = p1.spacing();
      const auto M = static_cast<long>(J / 2);
      for (long j = -M; j <= M; ++j) conv += p1(x - j * h) * vals[static_cast<std::size_t>(std::labs(j))];
      conv *= h;
      const double target = p2(x);
      worst_semi = std::max(worst_semi, std::abs(conv - target) / target);
    }
  }
  ok = ok && worst_mass < 1e-6 && worst_semi < 1e-3;
  d << "semigroup max rel. err " << num(worst_semi);
  return make(ok, std::max(sup, worst_semi), 1e-3, d.str());
}

struct Entry {
  const char* name;
  std::function<CheckResult()> run;
};

const std::vector<Entry>& entries() {
  static const std::vector<Entry> list = {
      {"constant cross-check", check_constants},
      {"symbol normalization", check_symbol_normalization},
      {"torsion identity", check_torsion},
      {"half-space harmonicity", check_halfspace},
      {"Poisson and mean-value normalization", check_normalizations},
      {"walk-on-spheres correctness", check_wos},
      {"exit-law validation", check_exit_law},
      {"finite-difference convergence", check_fd_convergence},
      {"discrete maximum principle", check_max_principle},
      {"obstacle complementarity", check_obstacle},
      {"free-boundary exponent", check_exponent},
      {"discrete semiconvexity", check_semiconvexity},
      {"extremal-operator algebra", check_extremal},
      {"heat kernel", check_heat},
  };
  return list;
}

}  // namespace

int check_count() { return static_cast<int>(entries().size()); }

std::string check_name(int id) {
  if (id < 1 || id > check_count()) throw DomainError("no acceptance check with id " + std::to_string(id));
  return entries()[id - 1].name;
}

CheckResult run_check(int id) {
  const std::string name = check_name(id);
  const auto start = std::chrono::steady_clock::now();
  CheckResult r;
  try {
    r = entries()[id - 1].run();
  } catch (const std::exception& e) {
    r = make(false, std::numeric_limits<double>::quiet_NaN(), 0.0, std::string("exception: ") + e.what());
  }
  r.id = id;
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<CheckResult> run_checks(const std::vector<int>& ids) {
  std::vector<int> todo = ids;
  if (todo.empty())
    for (int i = 1; i <= check_count(); ++i) todo.push_back(i);
  std::sort(todo.begin(), todo.end());
  std::vector<CheckResult> out;
  for (int id : todo) out.push_back(run_check(id));
  return out;
}

}  // namespace fracops
