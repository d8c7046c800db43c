#include "fracops/discrete.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "fracops/errors.hpp"
#include "fracops/parallel.hpp"
#include "fracops/quadrature.hpp"
#include "fracops/special_math.hpp"

namespace fracops {

namespace {

// Hat weights on [k, k+1] against t^{-1-2s}: alpha for the left node, beta for the right one.
// Gauss-Legendre avoids the cancellation of the closed-form antiderivatives at large k.
void hat_weights(double s, int count, std::vector<double>& alpha, std::vector<double>& beta) {
  alpha.assign(count + 1, 0.0);
  beta.assign(count + 1, 0.0);
  const auto& rule = quad::gauss_legendre(16);
  for (int k = 1; k <= count; ++k) {
    double a = 0.0, b = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double f = 0.5 * (rule.nodes[q] + 1.0);
      const double w = 0.5 * rule.weights[q] * std::pow(k + f, -1.0 - 2.0 * s);
      a += (1.0 - f) * w;
      b += f * w;
    }
    alpha[k] = a;
    beta[k] = b;
  }
}

// int_d^inf g(x + sign y) y^{-1-2s} dy = (d^{-2s} / 2s) int_0^1 g(x + sign d w^{-1/2s}) dw.
double exterior_integral(const ExteriorData& g, double x, double sign, double d, double s) {
  const double inv = 1.0 / (2.0 * s);
  std::vector<double> cuts;
  for (double zb : g.breakpoints) {
    const double y = sign * (zb - x);
    if (y > d) cuts.push_back(std::pow(d / y, 2.0 * s));
  }
  auto f = [&](double w) {
    if (w <= 0.0) return 0.0;
    return g(Point{x + sign * d * std::pow(w, -inv)});
  };
  return std::pow(d, -2.0 * s) * inv * quad::tanh_sinh_pieces(f, 0.0, 1.0, cuts, 1e-12).value;
}

void require_same_grid(const DiscreteOperator& op, const GridFunction1D& u) {
  if (!(op.grid() == u.grid) || u.values.size() != u.grid.N)
    throw DomainError("grid function does not match the operator grid");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Eigen::VectorXd Grid1D::nodes() const {
  Eigen::VectorXd x(N);
  for (int j = 0; j < N; ++j) x[j] = node(j);
  return x;
}

void Grid1D::validate() const {
  if (N < 2) throw DomainError("grid needs at least two interior nodes");
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b)) throw DomainError("grid needs finite a < b");
}

DiscreteOperator::DiscreteOperator(double s, const Grid1D& grid) : s_(s), grid_(grid) {
  grid.validate();
  if (!(s >= 0.05 && s <= 0.95))
    throw ParameterError("discrete operator supports s in [0.05, 0.95], got " + std::to_string(s));
  const int N = grid.N;
  const double h = grid.h();
  scale_ = constants(1, s).c_ns * std::pow(h, -2.0 * s);
  std::vector<double> alpha;
  hat_weights(s, N + 1, alpha, right_piece_);
  const double near = 1.0 / (2.0 - 2.0 * s);
  offdiag_.assign(N + 1, 0.0);
  for (int m = 1; m <= N; ++m) offdiag_[m] = alpha[m] + (m >= 2 ? right_piece_[m - 1] : 0.0) + (m == 1 ? near : 0.0);
  const double diag = scale_ * (2.0 * near + 2.0 / (2.0 * s));
  A_.resize(N, N);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t jj) {
    const int j = static_cast<int>(jj);
    for (int i = 0; i < N; ++i) A_(i, j) = i == j ? diag : -scale_ * offdiag_[std::abs(i - j)];
  });
}

Eigen::VectorXd DiscreteOperator::exterior_load(const ExteriorData& g) const {
  const int N = grid_.N;
  const double h = grid_.h();
  const double c = constants(1, s_).c_ns;
  const double near = 1.0 / (2.0 - 2.0 * s_);
  const double ga = g(Point{grid_.a});
  const double gb = g(Point{grid_.b});
  Eigen::VectorXd load(N);
  parallel_for(static_cast<std::size_t>(N), [&](std::size_t ii) {
    const int i = static_cast<int>(ii);
    const double x = grid_.node(i);
    const int mr = N - i;  // offset of b
    const int ml = i + 1;  // offset of a
    auto boundary_weight = [&](int m) { return (m >= 2 ? right_piece_[m - 1] : 0.0) + (m == 1 ? near : 0.0); };
    double v = scale_ * (gb * boundary_weight(mr) + ga * boundary_weight(ml));
    v += c * (exterior_integral(g, x, +1.0, mr * h, s_) + exterior_integral(g, x, -1.0, ml * h, s_));
    load[i] = -v;
  });
  return load;
}

Eigen::VectorXd DiscreteOperator::apply(const Eigen::VectorXd& u, const ExteriorData& g) const {
  if (u.size() != grid_.N) throw DomainError("vector length does not match the grid");
  return A_ * u + exterior_load(g);
}

const Eigen::LLT<Eigen::MatrixXd>& DiscreteOperator::factorization() const {
  std::lock_guard lock(factor_->mutex);
  if (!factor_->llt) {
    auto llt = std::make_unique<Eigen::LLT<Eigen::MatrixXd>>(A_);
    if (llt->info() != Eigen::Success) throw NumericalError("discrete operator is not positive definite", 0.0);
    factor_->llt = std::move(llt);
  }
  return *factor_->llt;
}

DiscreteOperator assemble_operator(double s, const Grid1D& grid) { return DiscreteOperator(s, grid); }

GridFunction1D solve_dirichlet(const DiscreteOperator& op, const Eigen::VectorXd& f, const ExteriorData& g) {
  if (f.size() != op.grid().N) throw DomainError("right-hand side length does not match the grid");
  const Eigen::VectorXd rhs = f - op.exterior_load(g);
  GridFunction1D u{op.grid(), op.factorization().solve(rhs), g};
  if (!u.values.allFinite()) throw NumericalError("Dirichlet solve produced non-finite values", 0.0);
  return u;
}

double energy(const DiscreteOperator& op, const GridFunction1D& u, const GridFunction1D& v) {
  require_same_grid(op, u);
  require_same_grid(op, v);
  const Eigen::VectorXd lu = op.exterior_load(u.exterior);
  const Eigen::VectorXd lv = op.exterior_load(v.exterior);
  const Eigen::VectorXd luv = op.exterior_load(product(u.exterior, v.exterior));
  const double bulk = u.values.dot(op.matrix() * v.values);
  return op.grid().h() * (bulk + u.values.dot(lv) + v.values.dot(lu) - luv.sum());
}

double complementarity_residual(const DiscreteOperator& op, const Eigen::VectorXd& v, const Eigen::VectorXd& phi,
                                const ExteriorData& g) {
  const Eigen::VectorXd r = op.apply(v, g);
  double res = 0.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) res = std::max(res, std::abs(std::min(r[i], v[i] - phi[i])));
  return res;
}

ObstacleSolution solve_obstacle(const DiscreteOperator& op, const Eigen::VectorXd& phi, const ExteriorData& g,
                                double tol, const ObstacleOptions& opts) {
  const int N = op.grid().N;
  if (phi.size() != N) throw DomainError("obstacle length does not match the grid");
  if (!phi.allFinite()) throw DomainError("obstacle must be finite");
  if (!(tol > 0.0)) throw DomainError("obstacle tolerance must be positive");
  if (!(opts.omega > 0.0 && opts.omega < 2.0)) throw DomainError("relaxation parameter must lie in (0,2)");
  const Eigen::MatrixXd& A = op.matrix();
  const Eigen::VectorXd load = op.exterior_load(g);

  Eigen::VectorXd v = phi;
  auto residual = [&] {
    const Eigen::VectorXd r = A * v + load;
    double res = 0.0;
    for (int i = 0; i < N; ++i) res = std::max(res, std::abs(std::min(r[i], v[i] - phi[i])));
    return res;
  };
  auto sweep = [&] {
    for (int i = 0; i < N; ++i) {
      const double r = A.col(i).dot(v) + load[i];
      v[i] = std::max(phi[i], v[i] - opts.omega * r / A(i, i));
    }
  };

  int iterations = 0;
  for (; iterations < opts.warmup_sweeps && iterations < opts.max_iterations; ++iterations) sweep();

  // Primal-dual active set: contact where lambda + c (phi - v) > 0 with lambda = A v + load.
  const double c = A(0, 0);
  std::vector<char> active(N, 0), previous;
  for (; iterations < opts.max_iterations; ++iterations) {
    const Eigen::VectorXd lambda = A * v + load;
    for (int i = 0; i < N; ++i) active[i] = lambda[i] + c * (phi[i] - v[i]) > 0.0;
    if (active == previous) break;
    previous = active;
    std::vector<int> free_idx, contact_idx;
    for (int i = 0; i < N; ++i) (active[i] ? contact_idx : free_idx).push_back(i);
    for (int i : contact_idx) v[i] = phi[i];
    if (free_idx.empty()) continue;
    const auto nf = static_cast<Eigen::Index>(free_idx.size());
    Eigen::MatrixXd Aff(nf, nf);
    Eigen::VectorXd rhs(nf);
    for (Eigen::Index q = 0; q < nf; ++q) {
      const int i = free_idx[q];
      double r = -load[i];
      for (int j : contact_idx) r -= A(i, j) * phi[j];
      rhs[q] = r;
      for (Eigen::Index p = 0; p < nf; ++p) Aff(p, q) = A(free_idx[p], i);
    }
    Eigen::LLT<Eigen::MatrixXd> llt(Aff);
    if (llt.info() != Eigen::Success) throw NumericalError("obstacle: free block is not positive definite", 0.0);
    const Eigen::VectorXd vf = llt.solve(rhs);
    for (Eigen::Index q = 0; q < nf; ++q) v[free_idx[q]] = vf[q];
  }

  double res = residual();
  while (res > tol && iterations < opts.max_iterations) {
    sweep();
    ++iterations;
    res = residual();
  }
  if (res > tol) throw NonConvergenceError("obstacle solver did not converge", res, iterations);
  for (int i = 0; i < N; ++i) v[i] = std::max(v[i], phi[i]);

  ObstacleSolution sol;
  sol.v = GridFunction1D{op.grid(), v, g};
  for (int i = 0; i < N; ++i)
    if (v[i] - phi[i] <= tol) sol.contact_set.push_back(i);
  sol.residual = residual();
  sol.iterations = iterations;
  return sol;
}

GrowthFit fit_growth_exponent(const ObstacleSolution& sol, const Eigen::VectorXd& phi, Side side,
                              std::optional<IndexRange> window) {
  const Grid1D& grid = sol.v.grid;
  const int N = grid.N;
  const double h = grid.h();
  if (phi.size() != N || sol.v.values.size() != N) throw DomainError("growth fit: length mismatch");
  if (sol.contact_set.empty()) throw DomainError("growth fit: contact set is empty");
  const Eigen::VectorXd gap = sol.v.values - phi;
  const int dir = side == Side::right ? 1 : -1;
  const int last = side == Side::right ? *std::max_element(sol.contact_set.begin(), sol.contact_set.end())
                                       : *std::min_element(sol.contact_set.begin(), sol.contact_set.end());
  const int next = last + dir;
  if (next < 0 || next >= N) throw DomainError("growth fit: no free boundary on this side");

  // Zero of the linear interpolant of v - phi between the last contact node and its neighbour.
  const double e0 = gap[last];
  const double e1 = gap[next];
  double frac = 0.0;
  if (e0 < 0.0 && e1 > e0) frac = -e0 / (e1 - e0);
  const double x_star = grid.node(last) + dir * frac * h;

  IndexRange win;
  if (window) {
    win = *window;
  } else {
    const int lo = 3, hi = std::max(lo + 5, N / 16);
    win = side == Side::right ? IndexRange{last + lo, last + hi} : IndexRange{last - hi, last - lo};
  }
  win.first = std::max(win.first, 0);
  win.last = std::min(win.last, N - 1);

  std::vector<double> X, Y;
  for (int j = win.first; j <= win.last; ++j) {
    const double d = std::abs(grid.node(j) - x_star);
    if (d <= 2.0 * h * (1.0 + 1e-12))
      throw DomainError("growth fit: window includes nodes within 2h of the free boundary");
    if (dir * (grid.node(j) - x_star) <= 0.0 || !(gap[j] > 0.0)) continue;
    X.push_back(std::log(d));
    Y.push_back(std::log(gap[j]));
  }
  if (X.size() < 6) throw DomainError("growth fit: window has fewer than 6 usable points");

  const double n = static_cast<double>(X.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < X.size(); ++k) mx += X[k], my += Y[k];
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t k = 0; k < X.size(); ++k) {
    sxx += (X[k] - mx) * (X[k] - mx);
    sxy += (X[k] - mx) * (Y[k] - my);
    syy += (Y[k] - my) * (Y[k] - my);
  }
  GrowthFit fit;
  fit.exponent = sxy / sxx;
  fit.r2 = syy > 0.0 ? sxy * sxy / (sxx * syy) : 1.0;
  fit.free_boundary = x_star;
  fit.points = static_cast<int>(X.size());
  return fit;
}

Eigen::VectorXd second_differences(const GridFunction1D& u) {
  const int N = u.grid.N;
  const double h = u.grid.h();
  const double ga = u.exterior(Point{u.grid.a});
  const double gb = u.exterior(Point{u.grid.b});
  Eigen::VectorXd d(N);
  for (int i = 0; i < N; ++i) {
    const double left = i > 0 ? u.values[i - 1] : ga;
    const double right = i + 1 < N ? u.values[i + 1] : gb;
    d[i] = (left + right - 2.0 * u.values[i]) / (h * h);
  }
  return d;
}

void write_csv(std::ostream& out, const GridFunction1D& u) {
  out << "x,value\n";
  for (int i = 0; i < u.grid.N; ++i) out << fmt(u.grid.node(i)) << ',' << fmt(u.values[i]) << '\n';
}

}  // namespace fracops
