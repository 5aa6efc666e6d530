#pragma once

#include <array>
#include <cstddef>
#include <initializer_list>
#include <span>

namespace hlslab::geom {

inline constexpr int kMaxDim = 8;

/// Threshold below which a point is treated as sitting on the conformal pole.
inline constexpr double kPoleThreshold = 1e-12;

/// A point of R^n, 2 <= n <= kMaxDim. Plain coordinates; domain membership is
/// checked by predicates, not encoded in the type (the conformal map crosses
/// domains).
class Point {
 public:
  Point() = default;
  Point(std::initializer_list<double> coords);
  explicit Point(std::span<const double> coords);
  static Point zero(int n);

  int dim() const { return n_; }
  double operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
  double& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }
  std::span<const double> coords() const { return {c_.data(), static_cast<std::size_t>(n_)}; }

  friend Point operator+(const Point& a, const Point& b);
  friend Point operator-(const Point& a, const Point& b);
  friend Point operator*(double s, const Point& a);
  double dot(const Point& other) const;
  double norm() const;
  double norm_squared() const;
  double distance(const Point& other) const;

 private:
  std::array<double, kMaxDim> c_{};
  int n_ = 0;
};

enum class DomainKind { SphereBn, BallBn, BoundaryHalfSpace, HalfSpace };

struct Domain {
  DomainKind kind;
  int dim;
};

/// Ball center z^o = (0,...,0,-1).
Point ball_center(int n);

/// Conformal pole x^o = (0,...,0,-2); the map below inverts about it.
Point conformal_pole(int n);

/// x -> 4 (x - x^o) / |x - x^o|^2 + x^o. Involution; maps the closed unit
/// ball around z^o (minus the pole) onto the closed upper half space.
Point conformal_to_halfspace(const Point& x);

/// Same formula (the map is its own inverse); named direction for readability.
Point conformal_to_ball(const Point& y);

enum class JacobianRole { Boundary, Bulk };

/// Measure-change factor for pushing integrals through the conformal map:
/// (2/|x - x^o|)^{2(n-1)} for surface measure, (2/|x - x^o|)^{2n} for volume.
double jacobian_weight(const Point& x, JacobianRole role);

/// Reflection across the plane x_1 = lambda.
Point reflect(const Point& x, double lambda);

/// z -> lambda^2 (z - y0)/|z - y0|^2 + y0 for y0 on the boundary hyperplane.
/// Fixes the sphere |z - y0| = lambda; involution; preserves the half space.
Point sphere_inversion(const Point& z, const Point& y0, double lambda);

bool in_ball(const Point& x, double tol = 0.0);
bool on_sphere(const Point& x, double tol = 1e-10);
bool in_halfspace(const Point& x);
bool on_boundary_halfspace(const Point& x, double tol = 1e-10);

/// Surface area of the unit sphere S^{d-1} in R^d, via the Gamma function.
double unit_sphere_area(int d);
/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

}  // namespace hlslab::geom
