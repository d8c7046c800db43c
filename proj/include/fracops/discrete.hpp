#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <vector>

#include <Eigen/Dense>

#include "fracops/fields.hpp"

namespace fracops {

/// Uniform grid of N interior nodes on (a, b): x_j = a + (j + 1) h, j = 0..N-1, h = (b - a) / (N + 1).
struct Grid1D {
  double a = -1.0;
  double b = 1.0;
  int N = 2;

  double h() const { return (b - a) / (N + 1); }
  double node(int j) const { return a + (j + 1) * h(); }
  Eigen::VectorXd nodes() const;
  bool operator==(const Grid1D& o) const { return a == o.a && b == o.b && N == o.N; }
  void validate() const;
};

/// Interior values on a grid together with the exterior datum outside (a, b).
struct GridFunction1D {
  Grid1D grid;
  Eigen::VectorXd values;
  ExteriorData exterior;
};

/// Discretization of (-Delta)^s on a 1D grid with exterior data:
///   (L u)_i = (A u)_i + exterior_load(g)_i.
///
/// On [0, h] the second difference is treated as quadratic in y; beyond h the field is the
/// piecewise-linear interpolant of the nodal values (boundary nodes carry g(a), g(b)), and past
/// the interval the exterior datum g is integrated exactly. A is a symmetric Toeplitz M-matrix.
class DiscreteOperator {
 public:
  DiscreteOperator(double s, const Grid1D& grid);

  double s() const { return s_; }
  const Grid1D& grid() const { return grid_; }
  const Eigen::MatrixXd& matrix() const { return A_; }

  /// Contribution of g to L u at the interior nodes; linear and order-reversing in g.
  Eigen::VectorXd exterior_load(const ExteriorData& g) const;
  /// A u + exterior_load(g).
  Eigen::VectorXd apply(const Eigen::VectorXd& u, const ExteriorData& g) const;
  Eigen::VectorXd apply(const GridFunction1D& u) const { return apply(u.values, u.exterior); }

  /// Cholesky factor of A, computed on first use.
  const Eigen::LLT<Eigen::MatrixXd>& factorization() const;

 private:
  double s_;
  Grid1D grid_;
  double scale_ = 0.0;              // c_1s h^{-2s}
  std::vector<double> offdiag_;     // offdiag_[m] = -A(i, i+m) / scale_, m >= 1
  std::vector<double> right_piece_; // right_piece_[m] = beta_m (hat weight of the right end of [m, m+1])
  Eigen::MatrixXd A_;
  struct LazyFactor {
    std::mutex mutex;
    std::unique_ptr<Eigen::LLT<Eigen::MatrixXd>> llt;
  };
  std::shared_ptr<LazyFactor> factor_ = std::make_shared<LazyFactor>();
};

/// Accepts s in [0.05, 0.95] and N >= 2; throws ParameterError / DomainError otherwise.
DiscreteOperator assemble_operator(double s, const Grid1D& grid);

/// Solves A u = f - exterior_load(g).
GridFunction1D solve_dirichlet(const DiscreteOperator& op, const Eigen::VectorXd& f, const ExteriorData& g);

/// Discrete nonlocal energy h [u^T A v + u^T l(g_v) + v^T l(g_u) - 1^T l(g_u g_v)], where l is the
/// exterior load. Symmetric, nonnegative on the diagonal, and zero on constants.
double energy(const DiscreteOperator& op, const GridFunction1D& u, const GridFunction1D& v);

struct ObstacleOptions {
  double omega = 1.8;
  int max_iterations = 200;
  /// Relaxation sweeps before the active-set phase.
  int warmup_sweeps = 30;
};

struct ObstacleSolution {
  GridFunction1D v;
  std::vector<int> contact_set;
  /// max_i |min((A v + load)_i, v_i - phi_i)|.
  double residual = 0.0;
  int iterations = 0;
};

/// Solves min{ A v + load(g), v - phi } = 0, the discrete obstacle problem.
ObstacleSolution solve_obstacle(const DiscreteOperator& op, const Eigen::VectorXd& phi, const ExteriorData& g,
                                double tol, const ObstacleOptions& opts = {});

double complementarity_residual(const DiscreteOperator& op, const Eigen::VectorXd& v, const Eigen::VectorXd& phi,
                                const ExteriorData& g);

enum class Side { left, right };

struct IndexRange {
  int first = 0;
  int last = 0;  // inclusive
};

struct GrowthFit {
  double exponent = 0.0;
  double r2 = 0.0;
  double free_boundary = 0.0;
  int points = 0;
};

/// Least-squares slope of log(v - phi) against log|x - x*| over the window, where x* is the free
/// boundary on the given side of the contact set. The default window spans node offsets
/// 3 .. N/16 from the last contact node.
GrowthFit fit_growth_exponent(const ObstacleSolution& sol, const Eigen::VectorXd& phi, Side side,
                              std::optional<IndexRange> window = std::nullopt);

/// (u_{i+1} + u_{i-1} - 2 u_i) / h^2 at interior nodes, with g(a), g(b) beyond the ends.
Eigen::VectorXd second_differences(const GridFunction1D& u);

/// CSV with header "x,value".
void write_csv(std::ostream& out, const GridFunction1D& u);

}  // namespace fracops
