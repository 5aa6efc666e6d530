#include "hlslab/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "hlslab/errors.hpp"

namespace hlslab::geom {

Point::Point(std::initializer_list<double> coords) {
  if (coords.size() < 2 || coords.size() > kMaxDim)
    throw UnsupportedDimension("point dimension must be in [2, 8]");
  n_ = static_cast<int>(coords.size());
  int i = 0;
  for (double c : coords) c_[static_cast<std::size_t>(i++)] = c;
}

Point::Point(std::span<const double> coords) {
  if (coords.size() < 2 || coords.size() > kMaxDim)
    throw UnsupportedDimension("point dimension must be in [2, 8]");
  n_ = static_cast<int>(coords.size());
  for (int i = 0; i < n_; ++i) c_[static_cast<std::size_t>(i)] = coords[static_cast<std::size_t>(i)];
}

Point Point::zero(int n) {
  if (n < 2 || n > kMaxDim) throw UnsupportedDimension("point dimension must be in [2, 8]");
  Point p;
  p.n_ = n;
  return p;
}

Point operator+(const Point& a, const Point& b) {
  Point out = a;
  for (int i = 0; i < a.n_; ++i) out.c_[static_cast<std::size_t>(i)] += b.c_[static_cast<std::size_t>(i)];
  return out;
}

Point operator-(const Point& a, const Point& b) {
  Point out = a;
  for (int i = 0; i < a.n_; ++i) out.c_[static_cast<std::size_t>(i)] -= b.c_[static_cast<std::size_t>(i)];
  return out;
}

Point operator*(double s, const Point& a) {
  Point out = a;
  for (int i = 0; i < a.n_; ++i) out.c_[static_cast<std::size_t>(i)] *= s;
  return out;
}

double Point::dot(const Point& other) const {
  double s = 0;
  for (int i = 0; i < n_; ++i)
    s += c_[static_cast<std::size_t>(i)] * other.c_[static_cast<std::size_t>(i)];
  return s;
}

double Point::norm_squared() const { return dot(*this); }
double Point::norm() const { return std::sqrt(norm_squared()); }
double Point::distance(const Point& other) const { return (*this - other).norm(); }

Point ball_center(int n) {
  Point p = Point::zero(n);
  p[n - 1] = -1.0;
  return p;
}

Point conformal_pole(int n) {
  Point p = Point::zero(n);
  p[n - 1] = -2.0;
  return p;
}

Point conformal_to_halfspace(const Point& x) {
  const Point pole = conformal_pole(x.dim());
  const Point d = x - pole;
  const double q2 = d.norm_squared();
  if (q2 < kPoleThreshold * kPoleThreshold) throw SingularPoint("conformal map evaluated at its pole x^o");
  return (4.0 / q2) * d + pole;
}

Point conformal_to_ball(const Point& y) { return conformal_to_halfspace(y); }

double jacobian_weight(const Point& x, JacobianRole role) {
  const int n = x.dim();
  const double q = x.distance(conformal_pole(n));
  if (q < kPoleThreshold) throw SingularPoint("jacobian weight at the map pole x^o");
  const int expo = role == JacobianRole::Boundary ? 2 * (n - 1) : 2 * n;
  return std::pow(2.0 / q, expo);
}

Point reflect(const Point& x, double lambda) {
  Point out = x;
  out[0] = 2.0 * lambda - x[0];
  return out;
}

Point sphere_inversion(const Point& z, const Point& y0, double lambda) {
  const Point d = z - y0;
  const double q2 = d.norm_squared();
  if (q2 < kPoleThreshold * kPoleThreshold) throw SingularPoint("sphere inversion at its center");
  return (lambda * lambda / q2) * d + y0;
}

bool in_ball(const Point& x, double tol) {
  return x.distance(ball_center(x.dim())) < 1.0 + tol;
}

bool on_sphere(const Point& x, double tol) {
  return std::abs(x.distance(ball_center(x.dim())) - 1.0) <= tol;
}

bool in_halfspace(const Point& x) { return x[x.dim() - 1] > 0.0; }

bool on_boundary_halfspace(const Point& x, double tol) {
  return std::abs(x[x.dim() - 1]) <= tol;
}

double unit_sphere_area(int d) {
  if (d < 1) throw UnsupportedDimension("sphere area needs d >= 1");
  if (d == 1) return 2.0;  // S^0
  return 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
}

double unit_ball_volume(int d) { return unit_sphere_area(d) / d; }

}  // namespace hlslab::geom
