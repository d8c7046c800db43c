#pragma once

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "fracops/point.hpp"

namespace fracops {

enum class KernelVariant { fractional_laplacian, stable, comparable };

/// Point mass of a stable spectral measure; weights already include the stable normalization.
struct SpectralAtom {
  Point direction;
  double weight = 0.0;
};

using Density = std::function<double(const Point&)>;

/// Symmetric Levy kernel of order 2s in R^n.
///
/// FractionalLaplacian: K(y) = c_ns |y|^{-n-2s}.
/// Stable: K determined by a finite symmetric atomic measure on the unit sphere.
/// Comparable: absolutely continuous K with lambda |y|^{-n-2s} <= K(y) <= Lambda |y|^{-n-2s}.
///
/// Immutable; copies share the density.
class Kernel {
 public:
  static Kernel fractional_laplacian(int n, double s);
  /// Atoms must be unit vectors with positive weights, closed under theta -> -theta.
  static Kernel stable(int n, double s, std::vector<SpectralAtom> atoms);
  /// Unit-weight atoms at +-e_1, ..., +-e_n; symbol |xi_1|^{2s} + ... + |xi_n|^{2s}.
  static Kernel axis_stable(int n, double s);
  /// Symmetry and the two-sided bounds are checked on `validation_samples` sampled points.
  static Kernel comparable(int n, double s, double lambda, double Lambda, Density density,
                           int validation_samples = 512);

  KernelVariant variant() const { return variant_; }
  int dim() const { return n_; }
  double order() const { return s_; }
  /// Comparability constants against |y|^{-n-2s}. For the fractional Laplacian both equal c_ns;
  /// for stable kernels they are not defined and both are zero.
  double lambda() const { return lambda_; }
  double Lambda() const { return Lambda_; }
  const std::vector<SpectralAtom>& atoms() const { return atoms_; }
  bool has_density() const { return variant_ != KernelVariant::stable; }

  /// K(y) for y != 0. Throws SingularityError at y = 0, UnsupportedError for atomic kernels.
  double density(const Point& y) const;

  std::string describe() const;

 private:
  Kernel() = default;

  KernelVariant variant_ = KernelVariant::fractional_laplacian;
  int n_ = 1;
  double s_ = 0.5;
  double lambda_ = 0.0;
  double Lambda_ = 0.0;
  std::vector<SpectralAtom> atoms_;
  std::shared_ptr<const Density> density_;
};

double kernel_density(const Kernel& kernel, const Point& y);

/// A(xi) = int (1 - cos(y . xi)) K(dy).
///
/// Closed form for the fractional Laplacian and stable kernels; comparable kernels use dyadic
/// radial quadrature times an angular rule, refined until two levels agree to `rel_tol`.
double fourier_symbol(const Kernel& kernel, const Point& xi, double rel_tol = 1e-7);

struct EllipticityCertificate {
  double lambda_hat = 0.0;
  double Lambda_hat = 0.0;
};

/// Empirical extrema of A(xi)/|xi|^{2s} over `samples` directions and |xi| = 2^-4, ..., 2^4.
EllipticityCertificate ellipticity_certificate(const Kernel& kernel, int samples);

/// Builds a kernel from a flat record:
///   kernel = fraclap | stable | stable_axis | comparable
///   n, s
///   atoms = "x,y:w;x,y:w;..."                 (stable)
///   lambda, Lambda, density = power | oscillating, scale, amplitude   (comparable)
/// The comparable densities are scale * (1 + amplitude * sin(log|y|)) * c_ns |y|^{-n-2s}.
Kernel parse_kernel(const std::map<std::string, std::string>& record);

}  // namespace fracops
