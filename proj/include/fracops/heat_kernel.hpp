#pragma once

#include <span>
#include <vector>

namespace fracops {

struct HeatGridOptions {
  /// Spectral truncation: exp(-t Xi^{2s}) below this value.
  double truncation = 1e-12;
  /// Bound on the periodization (aliasing) error.
  double aliasing = 1e-8;
  /// x-grid spacing relative to the natural length t^{1/(2s)}.
  double max_relative_spacing = 1.0 / 64.0;
  std::size_t max_points = std::size_t{1} << 24;
};

/// One-dimensional heat kernel of (-Delta)^s at a fixed time, obtained by the trapezoid rule
/// on a uniform frequency grid: p(x) = (dxi/pi) sum' exp(-t (k dxi)^{2s}) cos(k dxi x).
/// The full x-grid is produced by a type-I discrete cosine transform.
class HeatKernel1D {
 public:
  HeatKernel1D(double s, double t, const HeatGridOptions& opts = {});

  double s() const { return s_; }
  double t() const { return t_; }
  double frequency_step() const { return dxi_; }
  std::size_t size() const { return values_.size(); }
  double spacing() const { return dx_; }
  /// Half-period of the grid; values near it carry the aliasing error.
  double half_period() const { return dx_ * static_cast<double>(values_.size() - 1); }
  /// Grid values p(j dx), j = 0..size()-1.
  std::span<const double> values() const { return values_; }

  /// Cubic interpolation of the grid for |x| within half the half-period; direct cosine sum beyond.
  double operator()(double x) const;
  /// Direct evaluation of the trapezoid sum at x.
  double direct(double x) const;
  /// Trapezoid integral of the grid over one period.
  double total_mass() const;

 private:
  double s_, t_;
  double dxi_ = 0.0;
  double dx_ = 0.0;
  std::vector<double> values_;
};

}  // namespace fracops
