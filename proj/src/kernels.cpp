#include "fracops/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>
#include <sstream>

#include "fracops/errors.hpp"
#include "fracops/quadrature.hpp"
#include "fracops/special_math.hpp"

namespace fracops {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Deterministic sample points for the validation of comparable densities.
std::vector<Point> validation_points(int n, int count) {
  std::vector<Point> pts;
  pts.reserve(count);
  const double golden = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i < count; ++i) {
    const double r = std::pow(2.0, -8.0 + 16.0 * std::fmod(i * golden, 1.0));
    Point p(n);
    if (n == 1) {
      p[0] = (i % 2 ? -r : r);
    } else if (n == 2) {
      const double a = kTwoPi * std::fmod(i * 0.7548776662466927, 1.0);
      p = r * Point{std::cos(a), std::sin(a)};
    } else {
      const double z = 1.0 - 2.0 * std::fmod(i * 0.5698402909980532 + 0.5 / count, 1.0);
      const double a = kTwoPi * std::fmod(i * golden, 1.0);
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      p = r * Point{rho * std::cos(a), rho * std::sin(a), z};
    }
    pts.push_back(p);
  }
  return pts;
}

// J = int_0^inf (1 - cos(r t)) k(r) dr with f(x) = k(x/t)/t, at truncation X = 2 pi P.
double radial_symbol_at(const std::function<double(double)>& f, double s, int periods) {
  // Near zero: dyadic pieces of [0, 2 pi].
  double near = 0.0;
  double eps = kTwoPi;
  auto g = [&](double x) {
    const double h = std::sin(0.5 * x);
    return 2.0 * h * h * f(x);
  };
  for (int j = 0; j < 28; ++j) {
    near += quad::gauss_fixed(g, 0.5 * eps, eps, 16).value;
    eps *= 0.5;
  }
  // Remainder on [0, eps] extrapolated from the local power law f ~ x^{-1-2s}.
  near += f(eps) * eps * eps * eps / (2.0 * (2.0 - 2.0 * s));

  double mid = 0.0;
  for (int m = 1; m < periods; ++m)
    mid += quad::gauss_kronrod(g, kTwoPi * m, kTwoPi * (m + 1), 1e-12, 12).value;

  const double X = kTwoPi * periods;
  // int_X^inf f: x = X w^{-1/(2s)} maps to (0, 1].
  const double inv = 1.0 / (2.0 * s);
  auto tail_f = [&](double w) {
    if (w <= 0.0) return 0.0;
    const double x = X * std::pow(w, -inv);
    return f(x) * x * inv / w;
  };
  const double mean_tail = quad::gauss_kronrod(tail_f, 0.0, 1.0, 1e-12, 15).value;
  // int_X^inf cos(x) f(x) dx = -f'(X) + O(f'''(X)) since sin X = 0 and cos X = 1.
  const double d = X / 64.0;
  const double fprime = (f(X - 2 * d) - 8 * f(X - d) + 8 * f(X + d) - f(X + 2 * d)) / (12.0 * d);
  return near + mid + mean_tail + fprime;
}

double radial_symbol(const Kernel& K, const Point& theta, double t, double rel_tol) {
  const int n = K.dim();
  const double s = K.order();
  auto f = [&](double x) {
    const double r = x / t;
    return K.density(r * theta) * std::pow(r, n - 1) / t;
  };
  int periods = 16;
  double prev = radial_symbol_at(f, s, periods);
  while (periods < 4096) {
    periods *= 2;
    const double cur = radial_symbol_at(f, s, periods);
    if (std::abs(cur - prev) <= rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw NumericalError("fourier_symbol: radial quadrature did not converge", std::abs(prev));
}

double comparable_symbol(const Kernel& K, const Point& xi, int order, double rel_tol) {
  double total = 0.0;
  for (const auto& d : quad::aligned_hemisphere_rule(xi, order)) {
    const double t = std::abs(d.theta.dot(xi));
    if (t == 0.0) continue;
    total += d.weight * radial_symbol(K, d.theta, t, rel_tol);
  }
  return 2.0 * total;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep))
    if (!cur.empty()) out.push_back(cur);
  return out;
}

double get_number(const std::map<std::string, std::string>& rec, const std::string& key,
                  std::optional<double> fallback = std::nullopt) {
  auto it = rec.find(key);
  if (it == rec.end()) {
    if (fallback) return *fallback;
    throw DomainError("kernel record: missing key '" + key + "'");
  }
  try {
    std::size_t pos = 0;
    const double v = std::stod(it->second, &pos);
    if (pos != it->second.size()) throw std::invalid_argument(key);
    return v;
  } catch (const std::exception&) {
    throw DomainError("kernel record: key '" + key + "' is not a number: " + it->second);
  }
}

}  // namespace

Kernel Kernel::fractional_laplacian(int n, double s) {
  const auto c = constants(n, s);
  Kernel k;
  k.variant_ = KernelVariant::fractional_laplacian;
  k.n_ = n;
  k.s_ = s;
  k.lambda_ = k.Lambda_ = c.c_ns;
  return k;
}

Kernel Kernel::stable(int n, double s, std::vector<SpectralAtom> atoms) {
  check_order(n, s);
  if (atoms.empty()) throw DomainError("stable kernel: spectral measure is empty");
  for (const auto& a : atoms) {
    if (a.direction.dim() != n) throw DomainError("stable kernel: atom dimension mismatch");
    if (std::abs(a.direction.norm() - 1.0) > 1e-12)
      throw DomainError("stable kernel: atom direction is not a unit vector");
    if (!(a.weight > 0.0) || !std::isfinite(a.weight))
      throw DomainError("stable kernel: atom weights must be positive and finite");
  }
  for (const auto& a : atoms) {
    const bool paired = std::any_of(atoms.begin(), atoms.end(), [&](const SpectralAtom& b) {
      return (a.direction + b.direction).norm() < 1e-12 &&
             std::abs(a.weight - b.weight) <= 1e-12 * a.weight;
    });
    if (!paired) throw DomainError("stable kernel: spectral measure is not symmetric under theta -> -theta");
  }
  Kernel k;
  k.variant_ = KernelVariant::stable;
  k.n_ = n;
  k.s_ = s;
  k.atoms_ = std::move(atoms);
  return k;
}

Kernel Kernel::axis_stable(int n, double s) {
  std::vector<SpectralAtom> atoms;
  for (int i = 0; i < n; ++i) {
    atoms.push_back({Point::unit(n, i), 1.0});
    atoms.push_back({-Point::unit(n, i), 1.0});
  }
  return stable(n, s, std::move(atoms));
}

Kernel Kernel::comparable(int n, double s, double lambda, double Lambda, Density density,
                          int validation_samples) {
  check_order(n, s);
  if (!(lambda > 0.0) || !(Lambda >= lambda) || !std::isfinite(Lambda))
    throw DomainError("comparable kernel: need 0 < lambda <= Lambda < inf");
  if (!density) throw DomainError("comparable kernel: density is empty");
  for (const Point& y : validation_points(n, validation_samples)) {
    const double r = y.norm();
    const double ky = density(y), kmy = density(-y);
    const double base = std::pow(r, -n - 2.0 * s);
    if (std::abs(ky - kmy) > 1e-12 * std::max(std::abs(ky), base))
      throw DomainError("comparable kernel: density is not symmetric at " + y.to_string());
    if (ky < lambda * base * (1.0 - 1e-12) || ky > Lambda * base * (1.0 + 1e-12))
      throw DomainError("comparable kernel: density violates the comparability bounds at " +
                        y.to_string());
  }
  Kernel k;
  k.variant_ = KernelVariant::comparable;
  k.n_ = n;
  k.s_ = s;
  k.lambda_ = lambda;
  k.Lambda_ = Lambda;
  k.density_ = std::make_shared<const Density>(std::move(density));
  return k;
}

double Kernel::density(const Point& y) const {
  const double r = y.norm();
  if (r == 0.0) throw SingularityError("kernel density is singular at y = 0");
  switch (variant_) {
    case KernelVariant::fractional_laplacian:
      return lambda_ * std::pow(r, -n_ - 2.0 * s_);
    case KernelVariant::comparable:
      return (*density_)(y);
    case KernelVariant::stable:
      break;
  }
  throw UnsupportedError("stable kernel with atomic spectral measure has no density");
}

std::string Kernel::describe() const {
  std::ostringstream os;
  os.precision(17);
  switch (variant_) {
    case KernelVariant::fractional_laplacian:
      os << "fraclap(n=" << n_ << ",s=" << s_ << ")";
      break;
    case KernelVariant::stable:
      os << "stable(n=" << n_ << ",s=" << s_ << ",atoms=" << atoms_.size() << ")";
      break;
    case KernelVariant::comparable:
      os << "comparable(n=" << n_ << ",s=" << s_ << ",lambda=" << lambda_ << ",Lambda=" << Lambda_ << ")";
      break;
  }
  return os.str();
}

double kernel_density(const Kernel& kernel, const Point& y) { return kernel.density(y); }

double fourier_symbol(const Kernel& K, const Point& xi, double rel_tol) {
  if (xi.dim() != K.dim()) throw DomainError("fourier_symbol: dimension mismatch");
  const double s = K.order();
  const double norm = xi.norm();
  if (norm == 0.0) return 0.0;
  switch (K.variant()) {
    case KernelVariant::fractional_laplacian:
      return std::pow(norm, 2.0 * s);
    case KernelVariant::stable: {
      double sum = 0.0;
      for (const auto& a : K.atoms()) sum += a.weight * std::pow(std::abs(a.direction.dot(xi)), 2.0 * s);
      return 0.5 * sum;
    }
    case KernelVariant::comparable:
      break;
  }
  if (K.dim() == 1) return comparable_symbol(K, xi, 1, rel_tol);
  int order = 8;
  double prev = comparable_symbol(K, xi, order, rel_tol);
  while (order < 128) {
    order *= 2;
    const double cur = comparable_symbol(K, xi, order, rel_tol);
    if (std::abs(cur - prev) <= 10.0 * rel_tol * std::abs(cur)) return cur;
    prev = cur;
  }
  throw NumericalError("fourier_symbol: angular quadrature did not converge", std::abs(prev));
}

EllipticityCertificate ellipticity_certificate(const Kernel& K, int samples) {
  if (samples < 1) throw DomainError("ellipticity_certificate: samples must be positive");
  const int n = K.dim();
  const double s = K.order();
  std::vector<Point> dirs;
  if (n == 1) {
    dirs.push_back(Point{1.0});
  } else if (n == 2) {
    for (int k = 0; k < samples; ++k) {
      const double a = std::numbers::pi * k / samples;
      dirs.push_back(Point{std::cos(a), std::sin(a)});
    }
  } else {
    // Spiral points on the upper hemisphere; the symbol is even.
    const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < samples; ++k) {
      const double z = 1.0 - (k + 0.5) / samples;
      const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
      dirs.push_back(Point{rho * std::cos(golden_angle * k), rho * std::sin(golden_angle * k), z});
    }
  }
  EllipticityCertificate cert{std::numeric_limits<double>::infinity(), 0.0};
  for (const Point& d : dirs) {
    for (int e = -4; e <= 4; ++e) {
      const double mag = std::ldexp(1.0, e);
      const double ratio = fourier_symbol(K, mag * d) / std::pow(mag, 2.0 * s);
      cert.lambda_hat = std::min(cert.lambda_hat, ratio);
      cert.Lambda_hat = std::max(cert.Lambda_hat, ratio);
    }
  }
  return cert;
}

Kernel parse_kernel(const std::map<std::string, std::string>& rec) {
  const auto it = rec.find("kernel");
  const std::string variant = it == rec.end() ? "fraclap" : it->second;
  const int n = static_cast<int>(get_number(rec, "n", 1.0));
  const double s = get_number(rec, "s");
  if (variant == "fraclap") return Kernel::fractional_laplacian(n, s);
  if (variant == "stable_axis") return Kernel::axis_stable(n, s);
  if (variant == "stable") {
    auto at = rec.find("atoms");
    if (at == rec.end()) throw DomainError("kernel record: stable kernel needs 'atoms'");
    std::vector<SpectralAtom> atoms;
    for (const auto& item : split(at->second, ';')) {
      const auto parts = split(item, ':');
      if (parts.size() != 2) throw DomainError("kernel record: malformed atom '" + item + "'");
      const auto coords = split(parts[0], ',');
      if (static_cast<int>(coords.size()) != n) throw DomainError("kernel record: atom dimension mismatch");
      Point p(n);
      for (int i = 0; i < n; ++i) p[i] = std::stod(coords[i]);
      atoms.push_back({p, std::stod(parts[1])});
    }
    return Kernel::stable(n, s, std::move(atoms));
  }
  if (variant == "comparable") {
    const auto dt = rec.find("density");
    const std::string kind = dt == rec.end() ? "power" : dt->second;
    const double scale = get_number(rec, "scale", 1.0);
    const double amp = kind == "oscillating" ? get_number(rec, "amplitude", 0.5) : 0.0;
    if (kind != "power" && kind != "oscillating")
      throw DomainError("kernel record: unknown density '" + kind + "'");
    if (!(amp >= 0.0 && amp < 1.0)) throw DomainError("kernel record: amplitude must lie in [0,1)");
    const double c = constants(n, s).c_ns;
    const double lambda = get_number(rec, "lambda", scale * (1.0 - amp) * c);
    const double Lambda = get_number(rec, "Lambda", scale * (1.0 + amp) * c);
    Density density = [=](const Point& y) {
      const double r = y.norm();
      return scale * (1.0 + amp * std::sin(std::log(r))) * c * std::pow(r, -n - 2.0 * s);
    };
    return Kernel::comparable(n, s, lambda, Lambda, std::move(density));
  }
  throw DomainError("kernel record: unknown kernel variant '" + variant + "'");
}

}  // namespace fracops
