#include "fracops/heat_kernel.hpp"

#include <cmath>
#include <mutex>
#include <numbers>

#include <fftw3.h>
#include <boost/math/special_functions/zeta.hpp>

#include "fracops/errors.hpp"
#include "fracops/special_math.hpp"

namespace fracops {

namespace {

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

HeatKernel1D::HeatKernel1D(double s, double t, const HeatGridOptions& opts) : s_(s), t_(t) {
  check_order(1, s);
  if (!(t > 0.0)) throw DomainError("heat kernel: time must be positive");
  const double pi = std::numbers::pi;
  const double xi_max = std::pow(-std::log(opts.truncation) / t, 1.0 / (2.0 * s));
  // Periodization error <= 2 t c_1s zeta(1+2s) (L/2)^{-1-2s} from the tail p ~ t c_1s |x|^{-1-2s}.
  const double c1 = constants(1, s).c_ns;
  const double half_period =
      std::pow(2.0 * t * c1 * boost::math::zeta(1.0 + 2.0 * s) / opts.aliasing, 1.0 / (1.0 + 2.0 * s));
  dxi_ = pi / half_period;
  const double dx_target = opts.max_relative_spacing * std::pow(t, 1.0 / (2.0 * s));
  const double intervals = std::ceil(std::max(xi_max, pi / dx_target) / dxi_);
  if (intervals + 1.0 > static_cast<double>(opts.max_points))
    throw NumericalError("heat kernel: frequency grid underresolved (needs " +
                             std::to_string(intervals + 1.0) + " points)",
                         intervals + 1.0);
  const std::size_t m = static_cast<std::size_t>(intervals) + 1;
  dx_ = pi / (static_cast<double>(m - 1) * dxi_);

  std::vector<double> spectrum(m);
  for (std::size_t k = 0; k < m; ++k) spectrum[k] = std::exp(-t * std::pow(k * dxi_, 2.0 * s));
  values_.assign(m, 0.0);
  fftw_plan plan;
  {
    std::lock_guard lock(fftw_planner_mutex());
    plan = fftw_plan_r2r_1d(static_cast<int>(m), spectrum.data(), values_.data(), FFTW_REDFT00, FFTW_ESTIMATE);
  }
  fftw_execute(plan);
  {
    std::lock_guard lock(fftw_planner_mutex());
    fftw_destroy_plan(plan);
  }
  const double scale = dxi_ / (2.0 * pi);
  for (double& v : values_) v *= scale;
}

double HeatKernel1D::direct(double x) const {
  const double xi_cut = std::pow(-std::log(1e-17) / t_, 1.0 / (2.0 * s_));
  const std::size_t m = values_.size();
  double acc = 0.5;
  for (std::size_t k = 1; k < m && k * dxi_ <= xi_cut; ++k)
    acc += std::exp(-t_ * std::pow(k * dxi_, 2.0 * s_)) * std::cos(k * dxi_ * x);
  return acc * dxi_ / std::numbers::pi;
}

double HeatKernel1D::operator()(double x) const {
  const double ax = std::abs(x);
  if (ax > 0.5 * half_period()) return direct(x);
  const double pos = ax / dx_;
  const auto j = static_cast<std::ptrdiff_t>(std::floor(pos));
  const double f = pos - static_cast<double>(j);
  auto at = [&](std::ptrdiff_t i) { return values_[static_cast<std::size_t>(std::abs(i))]; };
  const double pm = at(j - 1), p0 = at(j), p1 = at(j + 1), p2 = at(j + 2);
  return p0 + 0.5 * f * (p1 - pm + f * (2.0 * pm - 5.0 * p0 + 4.0 * p1 - p2 + f * (3.0 * (p0 - p1) + p2 - pm)));
}

double HeatKernel1D::total_mass() const {
  double acc = values_.front() + values_.back();
  for (std::size_t j = 1; j + 1 < values_.size(); ++j) acc += 2.0 * values_[j];
  return acc * dx_;
}

}  // namespace fracops
