#include "oracles.hpp"

#include <vector>

#include "hlslab/quadrature.hpp"

namespace oracle {

using hlslab::geom::Point;

double integrate_1d(const std::function<double(double)>& f, double a, double b, int panels) {
  static const hlslab::quad::Rule1D gl = hlslab::quad::gauss_legendre(24);
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = a + (b - a) * k / panels, hi = a + (b - a) * (k + 1) / panels;
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.x.size(); ++i) total += half * gl.w[i] * f(c + half * gl.x[i]);
  }
  return total;
}

double xi_oracle_rev3(double alpha, double p, double t) {
  const double tp = t / (t - 1.0);
  const double I = integrate_1d(
      [&](double r) { return std::pow(closed_phi3(alpha, r), tp) * r * r; }, 0.0, 1.0);
  return std::pow(kFourPi, -1.0 / p) * std::pow(kFourPi * I, 1.0 / tp);
}

double xi_oracle_pois3(double alpha, double p, double t) {
  const double tp = t / (t - 1.0);
  const double I = integrate_1d(
      [&](double r) { return std::pow(closed_psi3(alpha, r), tp) * r * r; }, 0.0, 1.0 - 1e-10);
  return std::pow(kFourPi, -1.0 / p) * std::pow(kFourPi * I, 1.0 / tp);
}

double sphere_integral_graded(int n, const std::function<double(const Point&)>& fn,
                              const Point& axis_direction) {
  static const hlslab::quad::Rule1D gl = hlslab::quad::gauss_legendre(16);
  const Point zo = hlslab::geom::ball_center(n);

  // orthonormal frame with e[n-1] = axis, the rest by Gram-Schmidt
  std::vector<Point> e(static_cast<std::size_t>(n), Point::zero(n));
  {
    const double nr = axis_direction.norm();
    e[static_cast<std::size_t>(n - 1)] = (1.0 / nr) * axis_direction;
    int filled = 0;
    for (int c = 0; c < n && filled < n - 1; ++c) {
      Point w = Point::zero(n);
      w[c] = 1.0;
      w = w - w.dot(e[static_cast<std::size_t>(n - 1)]) * e[static_cast<std::size_t>(n - 1)];
      for (int j = 0; j < filled; ++j)
        w = w - w.dot(e[static_cast<std::size_t>(j)]) * e[static_cast<std::size_t>(j)];
      if (w.norm() > 1e-8) {
        e[static_cast<std::size_t>(filled)] = (1.0 / w.norm()) * w;
        ++filled;
      }
    }
  }

  // azimuthal directions on S^{n-2} of the tangent frame
  std::vector<Point> tang;
  std::vector<double> tw;
  if (n == 3) {
    const int M = 96;
    for (int b = 0; b < M; ++b) {
      const double ph = 2.0 * M_PI * (b + 0.5) / M;
      tang.push_back(std::cos(ph) * e[0] + std::sin(ph) * e[1]);
      tw.push_back(2.0 * M_PI / M);
    }
  } else {
    // n = 4: product rule on the tangent 2-sphere
    const int N = 24, M = 48;
    const auto leg = hlslab::quad::gauss_legendre(N);
    for (int i = 0; i < N; ++i) {
      const double u = leg.x[static_cast<std::size_t>(i)];
      const double s = std::sqrt(1.0 - u * u);
      for (int b = 0; b < M; ++b) {
        const double ph = 2.0 * M_PI * (b + 0.5) / M;
        tang.push_back(s * std::cos(ph) * e[0] + s * std::sin(ph) * e[1] + u * e[2]);
        tw.push_back(leg.w[static_cast<std::size_t>(i)] * 2.0 * M_PI / M);
      }
    }
  }

  // polar panels graded toward t = 0 (the axis) and toward t = pi
  auto panel_sum = [&](double lo, double hi) {
    double acc = 0.0;
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double t = c + half * gl.x[i];
      const double st = std::sin(t), ct = std::cos(t);
      double ring = 0.0;
      for (std::size_t b = 0; b < tang.size(); ++b) {
        const Point zeta = zo + st * tang[b] + ct * e[static_cast<std::size_t>(n - 1)];
        ring += tw[b] * fn(zeta);
      }
      acc += half * gl.w[i] * ring * std::pow(st, n - 2);
    }
    return acc;
  };

  double total = 0.0;
  const int depth = 46;
  double hi = 0.5 * M_PI;
  for (int k = 0; k < depth; ++k) {
    const double lo = (k + 1 == depth) ? 0.0 : hi * 0.5;
    total += panel_sum(lo, hi);
    hi = lo;
  }
  double lo2 = 0.5 * M_PI;
  for (int k = 0; k < depth; ++k) {
    const double hi2 = (k + 1 == depth) ? M_PI : M_PI - (M_PI - lo2) * 0.5;
    total += panel_sum(lo2, hi2);
    lo2 = hi2;
  }
  return total;
}

}  // namespace oracle
