#pragma once

#include <array>
#include <cassert>
#include <cmath>
#include <initializer_list>
#include <string>

namespace fracops {

/// A point (or vector) in R^n for n in {1, 2, 3}.
class Point {
 public:
  static constexpr int kMaxDim = 3;

  Point() = default;
  explicit Point(int dim) : dim_(dim) { assert(dim >= 1 && dim <= kMaxDim); }
  Point(std::initializer_list<double> coords) : dim_(static_cast<int>(coords.size())) {
    assert(dim_ >= 1 && dim_ <= kMaxDim);
    int i = 0;
    for (double c : coords) c_[i++] = c;
  }

  static Point unit(int dim, int axis) {
    Point p(dim);
    p[axis] = 1.0;
    return p;
  }
  static Point scalar(double x) { return Point{x}; }

  int dim() const { return dim_; }
  double operator[](int i) const { return c_[i]; }
  double& operator[](int i) { return c_[i]; }

  Point& operator+=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] += o.c_[i];
    return *this;
  }
  Point& operator-=(const Point& o) {
    for (int i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  Point& operator*=(double a) {
    for (int i = 0; i < dim_; ++i) c_[i] *= a;
    return *this;
  }

  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }
  friend Point operator*(double a, Point p) { return p *= a; }
  friend Point operator*(Point p, double a) { return p *= a; }
  Point operator-() const { return -1.0 * *this; }

  double dot(const Point& o) const {
    double s = 0.0;
    for (int i = 0; i < dim_; ++i) s += c_[i] * o.c_[i];
    return s;
  }
  double norm2() const { return dot(*this); }
  double norm() const { return std::sqrt(norm2()); }

  std::string to_string() const;

 private:
  std::array<double, kMaxDim> c_{};
  int dim_ = 1;
};

}  // namespace fracops
