#include "fracops/wos.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "fracops/errors.hpp"
#include "fracops/parallel.hpp"
#include "fracops/special_math.hpp"

namespace fracops {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Pushes the boundary point b (reached from inside along dir) until it leaves the domain.
Point push_outside(const Domain& dom, Point b, const Point& dir) {
  double step = 1e-12 * std::max(1.0, b.norm());
  for (int i = 0; i < 200 && dom.contains(b); ++i) {
    b += step * dir;
    step *= 2.0;
  }
  if (dom.contains(b)) throw NumericalError("could not leave the domain from " + b.to_string(), step);
  return b;
}

class Ball final : public Domain {
 public:
  Ball(Point c, double r) : c_(c), r_(r) {}
  int dim() const override { return c_.dim(); }
  bool contains(const Point& x) const override { return (x - c_).norm() < r_; }
  double dist_to_complement(const Point& x) const override { return std::max(0.0, r_ - (x - c_).norm()); }
  double diameter_bound() const override { return 2.0 * r_; }
  Point nearest_exterior(const Point& x) const override {
    Point d = x - c_;
    const double len = d.norm();
    d = len > 0.0 ? (1.0 / len) * d : Point::unit(dim(), 0);
    return push_outside(*this, c_ + r_ * d, d);
  }
  std::string describe() const override { return "ball(center=" + c_.to_string() + ",r=" + std::to_string(r_) + ")"; }

 private:
  Point c_;
  double r_;
};

class Box final : public Domain {
 public:
  Box(Point lo, Point hi) : lo_(lo), hi_(hi) {}
  int dim() const override { return lo_.dim(); }
  bool contains(const Point& x) const override { return dist_to_complement(x) > 0.0; }
  double dist_to_complement(const Point& x) const override {
    double d = kInf;
    for (int i = 0; i < dim(); ++i) d = std::min({d, x[i] - lo_[i], hi_[i] - x[i]});
    return std::max(0.0, d);
  }
  double diameter_bound() const override { return (hi_ - lo_).norm(); }
  Point nearest_exterior(const Point& x) const override {
    int axis = 0;
    bool upper = false;
    double best = kInf;
    for (int i = 0; i < dim(); ++i) {
      if (x[i] - lo_[i] < best) best = x[i] - lo_[i], axis = i, upper = false;
      if (hi_[i] - x[i] < best) best = hi_[i] - x[i], axis = i, upper = true;
    }
    Point b = x;
    b[axis] = upper ? hi_[axis] : lo_[axis];
    Point dir = Point::unit(dim(), axis);
    if (!upper) dir = -dir;
    return push_outside(*this, b, dir);
  }
  std::string describe() const override {
    return dim() == 1 ? "interval(" + std::to_string(lo_[0]) + "," + std::to_string(hi_[0]) + ")"
                      : "box(" + lo_.to_string() + "," + hi_.to_string() + ")";
  }

 private:
  Point lo_, hi_;
};

class HalfSpace final : public Domain {
 public:
  HalfSpace(Point e, double offset) : e_(e), offset_(offset) {}
  int dim() const override { return e_.dim(); }
  bool contains(const Point& x) const override { return x.dot(e_) > offset_; }
  double dist_to_complement(const Point& x) const override { return std::max(0.0, x.dot(e_) - offset_); }
  double diameter_bound() const override { return kInf; }
  Point nearest_exterior(const Point& x) const override {
    return push_outside(*this, x - (x.dot(e_) - offset_) * e_, -e_);
  }
  std::string describe() const override {
    return "halfspace(e=" + e_.to_string() + ",offset=" + std::to_string(offset_) + ")";
  }

 private:
  Point e_;
  double offset_;
};

class Union final : public Domain {
 public:
  explicit Union(std::vector<DomainPtr> parts) : parts_(std::move(parts)) {}
  int dim() const override { return parts_.front()->dim(); }
  bool contains(const Point& x) const override {
    return std::any_of(parts_.begin(), parts_.end(), [&](const DomainPtr& p) { return p->contains(x); });
  }
  // The complement is the intersection of the complements, so any part's distance is a lower bound.
  double dist_to_complement(const Point& x) const override {
    double d = 0.0;
    for (const auto& p : parts_) d = std::max(d, p->dist_to_complement(x));
    return d;
  }
  double diameter_bound() const override {
    double d = 0.0;
    for (const auto& p : parts_) d += p->diameter_bound();
    return d;
  }
  Point nearest_exterior(const Point& x) const override {
    Point cur = x;
    for (int round = 0; round < 16; ++round) {
      const Point* best = nullptr;
      std::vector<Point> cands;
      for (const auto& p : parts_)
        if (p->contains(cur)) cands.push_back(p->nearest_exterior(cur));
      if (cands.empty()) return cur;
      double best_d = kInf;
      for (const auto& c : cands)
        if (!contains(c) && (c - x).norm() < best_d) best_d = (c - x).norm(), best = &c;
      if (best) return *best;
      cur = cands.front();
    }
    throw NumericalError("union: no exterior point found near " + x.to_string(), 0.0);
  }
  std::string describe() const override {
    std::string out = "union(";
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + parts_[i]->describe();
    return out + ")";
  }

 private:
  std::vector<DomainPtr> parts_;
};

class Intersection final : public Domain {
 public:
  explicit Intersection(std::vector<DomainPtr> parts) : parts_(std::move(parts)) {}
  int dim() const override { return parts_.front()->dim(); }
  bool contains(const Point& x) const override {
    return std::all_of(parts_.begin(), parts_.end(), [&](const DomainPtr& p) { return p->contains(x); });
  }
  double dist_to_complement(const Point& x) const override {
    double d = kInf;
    for (const auto& p : parts_) d = std::min(d, p->dist_to_complement(x));
    return d;
  }
  double diameter_bound() const override {
    double d = kInf;
    for (const auto& p : parts_) d = std::min(d, p->diameter_bound());
    return d;
  }
  Point nearest_exterior(const Point& x) const override {
    Point best = x;
    double best_d = kInf;
    for (const auto& p : parts_) {
      const Point c = p->contains(x) ? p->nearest_exterior(x) : x;
      if ((c - x).norm() < best_d) best_d = (c - x).norm(), best = c;
    }
    return best;
  }
  std::string describe() const override {
    std::string out = "intersection(";
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? "," : "") + parts_[i]->describe();
    return out + ")";
  }

 private:
  std::vector<DomainPtr> parts_;
};

void check_parts(const std::vector<DomainPtr>& parts) {
  if (parts.empty()) throw DomainError("set operation needs at least one domain");
  for (const auto& p : parts)
    if (!p || p->dim() != parts.front()->dim()) throw DomainError("set operation: dimension mismatch");
}

struct StreamStats {
  std::int64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;
  double steps = 0.0;
  std::int64_t cut_off = 0;
};

}  // namespace

DomainPtr make_ball(const Point& center, double radius) {
  if (!(radius > 0.0)) throw DomainError("ball: radius must be positive");
  return std::make_shared<Ball>(center, radius);
}

DomainPtr make_interval(double a, double b) {
  if (!(a < b)) throw DomainError("interval: need a < b");
  return std::make_shared<Box>(Point{a}, Point{b});
}

DomainPtr make_box(const Point& lo, const Point& hi) {
  if (lo.dim() != hi.dim()) throw DomainError("box: dimension mismatch");
  for (int i = 0; i < lo.dim(); ++i)
    if (!(lo[i] < hi[i])) throw DomainError("box: need lo < hi in every coordinate");
  return std::make_shared<Box>(lo, hi);
}

DomainPtr make_halfspace(const Point& e, double offset) {
  if (std::abs(e.norm() - 1.0) > 1e-12) throw DomainError("halfspace: normal must be a unit vector");
  return std::make_shared<HalfSpace>(e, offset);
}

DomainPtr make_union(std::vector<DomainPtr> parts) {
  check_parts(parts);
  return std::make_shared<Union>(std::move(parts));
}

DomainPtr make_intersection(std::vector<DomainPtr> parts) {
  check_parts(parts);
  return std::make_shared<Intersection>(std::move(parts));
}

CounterRng::CounterRng(std::uint64_t master_seed, std::uint64_t stream)
    : key_(mix64(master_seed ^ mix64(stream + 0x632BE59BD9B4E019ull))) {}

CounterRng::result_type CounterRng::operator()() { return mix64(key_ + mix64(counter_++)); }

double CounterRng::uniform() { return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53; }

double sample_exit_radius(CounterRng& rng, double s) {
  // 1 - rho^{-2} ~ Beta(1-s, s); sampling Y = rho^{-2} ~ Beta(s, 1-s) directly avoids cancellation.
  double y = beta_inverse(s, 1.0 - s, rng.uniform());
  if (!(y > 0.0)) y = std::numeric_limits<double>::denorm_min();
  return 1.0 / std::sqrt(y);
}

Point sample_exit(CounterRng& rng, const Point& center, double r, int n, double s) {
  check_order(n, s);
  if (!(r > 0.0)) throw DomainError("sample_exit: radius must be positive");
  const double rho = sample_exit_radius(rng, s);
  Point theta(n);
  const double two_pi = 2.0 * std::numbers::pi;
  if (n == 1) {
    theta[0] = rng.uniform() < 0.5 ? -1.0 : 1.0;
  } else if (n == 2) {
    const double phi = two_pi * rng.uniform();
    theta = Point{std::cos(phi), std::sin(phi)};
  } else {
    const double z = 2.0 * rng.uniform() - 1.0;
    const double phi = two_pi * rng.uniform();
    const double w = std::sqrt(std::max(0.0, 1.0 - z * z));
    theta = Point{w * std::cos(phi), w * std::sin(phi), z};
  }
  return center + (rho * r) * theta;
}

void WosConfig::validate() const {
  if (!(radius_safety > 0.0 && radius_safety <= 1.0)) throw DomainError("wos: radius_safety must lie in (0,1]");
  if (max_steps < 1 || n_samples < 1 || n_streams < 1)
    throw DomainError("wos: max_steps, n_samples and n_streams must be positive");
}

WosEstimate wos_solve(const Domain& domain, const ExteriorData& g, const Point& x, double s, const WosConfig& cfg) {
  cfg.validate();
  const int n = domain.dim();
  check_order(n, s);
  if (x.dim() != n) throw DomainError("wos: starting point has the wrong dimension");
  if (!domain.contains(x)) throw DomainError("wos: starting point " + x.to_string() + " is not inside the domain");
  if (!(g.decay_exponent < 2.0 * s)) throw DomainError("wos: exterior data grows too fast (need exponent < 2s)");

  const auto streams = static_cast<std::size_t>(cfg.n_streams);
  std::vector<StreamStats> stats(streams);
  parallel_for(streams, [&](std::size_t k) {
    const std::int64_t base = cfg.n_samples / cfg.n_streams;
    const std::int64_t count = base + (static_cast<std::int64_t>(k) < cfg.n_samples % cfg.n_streams ? 1 : 0);
    CounterRng rng(cfg.master_seed, k);
    StreamStats st;
    for (std::int64_t i = 0; i < count; ++i) {
      Point cur = x;
      int steps = 0;
      double value = 0.0;
      for (;;) {
        if (steps >= cfg.max_steps) {
          value = g(domain.nearest_exterior(cur));
          ++st.cut_off;
          break;
        }
        const double r = cfg.radius_safety * domain.dist_to_complement(cur);
        cur = sample_exit(rng, cur, r, n, s);
        ++steps;
        if (!domain.contains(cur)) {
          value = g(cur);
          break;
        }
      }
      ++st.count;
      const double delta = value - st.mean;
      st.mean += delta / static_cast<double>(st.count);
      st.m2 += delta * (value - st.mean);
      st.steps += steps;
    }
    stats[k] = st;
  });

  // Ordered pairwise merge; the delta form keeps a constant datum exact.
  StreamStats tot;
  for (const auto& st : stats) {
    if (st.count == 0) continue;
    const auto na = static_cast<double>(tot.count);
    const auto nb = static_cast<double>(st.count);
    const double delta = st.mean - tot.mean;
    tot.mean += delta * nb / (na + nb);
    tot.m2 += st.m2 + delta * delta * na * nb / (na + nb);
    tot.count += st.count;
    tot.steps += st.steps;
    tot.cut_off += st.cut_off;
  }

  WosEstimate est;
  est.n_samples = tot.count;
  est.mean = tot.mean;
  const auto N = static_cast<double>(tot.count);
  est.std_error = tot.count > 1 ? std::sqrt(std::max(0.0, tot.m2 / (N - 1.0)) / N) : 0.0;
  est.mean_steps = tot.steps / N;
  est.max_steps_hit = tot.cut_off;
  est.bias_warning = static_cast<double>(tot.cut_off) > 0.01 * N;
  return est;
}

}  // namespace fracops
