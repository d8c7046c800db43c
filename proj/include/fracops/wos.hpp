#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "fracops/fields.hpp"
#include "fracops/point.hpp"

namespace fracops {

/// Open set in R^n with a conservative distance to its complement.
class Domain {
 public:
  virtual ~Domain() = default;
  virtual int dim() const = 0;
  virtual bool contains(const Point& x) const = 0;
  /// Lower bound on dist(x, complement); positive iff contains(x).
  virtual double dist_to_complement(const Point& x) const = 0;
  /// Upper bound on the diameter (infinite for unbounded domains).
  virtual double diameter_bound() const = 0;
  /// A point outside the domain close to x, used when a walk is cut off.
  virtual Point nearest_exterior(const Point& x) const = 0;
  virtual std::string describe() const = 0;
};

using DomainPtr = std::shared_ptr<const Domain>;

DomainPtr make_ball(const Point& center, double radius);
DomainPtr make_interval(double a, double b);
DomainPtr make_box(const Point& lo, const Point& hi);
/// {x : x . e > offset}.
DomainPtr make_halfspace(const Point& e, double offset);
DomainPtr make_union(std::vector<DomainPtr> parts);
DomainPtr make_intersection(std::vector<DomainPtr> parts);

/// Counter-based generator: the k-th output of a stream is a hash of (key, k), so streams are
/// independent of scheduling. Meets the UniformRandomBitGenerator requirements.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  CounterRng(std::uint64_t master_seed, std::uint64_t stream);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()();
  /// Uniform on the open interval (0, 1).
  double uniform();

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

/// Exit point of the isotropic 2s-stable process started at `center` from the ball B_r(center).
Point sample_exit(CounterRng& rng, const Point& center, double r, int n, double s);

/// Radial part rho = |z - center| / r > 1 of an exit sample.
double sample_exit_radius(CounterRng& rng, double s);

struct WosConfig {
  double radius_safety = 1.0;
  int max_steps = 10000;
  std::uint64_t master_seed = 1;
  std::int64_t n_samples = 10000;
  int n_streams = 64;

  void validate() const;
};

struct WosEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t n_samples = 0;
  double mean_steps = 0.0;
  std::int64_t max_steps_hit = 0;
  /// More than 1% of the walks were cut off at max_steps.
  bool bias_warning = false;
};

/// Monte Carlo estimate of u(x) for (-Delta)^s u = 0 in the domain, u = g outside.
WosEstimate wos_solve(const Domain& domain, const ExteriorData& g, const Point& x, double s,
                      const WosConfig& cfg = {});

}  // namespace fracops
