// Test-side oracles, kept independent of the library's evaluation paths:
// closed forms for the n = 3 zonal integrals, a plain composite integrator,
// full-dimensional graded sphere quadrature, and the frozen regression
// decimals produced by these oracles at first build.
#pragma once

#include <cmath>
#include <functional>

#include "hlslab/geometry.hpp"

namespace oracle {

inline constexpr double kFourPi = 4.0 * M_PI;

// frozen regression values (30-digit radial oracles, first build)
inline constexpr double kXiRev_n3a4_p07_t08 = 0.2795551271753547360631337;
inline constexpr double kCe1_n3a4 = 0.4920885818683439588961361;
inline constexpr double kCe2_n3a2 = 8.474007282610681778563632;
inline constexpr double kXiPois_n3a2_p5_t125 = 10.08754797262855201525796;
inline constexpr double kQuotientOnes_rev_n3a4 = 0.5019926346892040245166449;

// n = 3 closed forms: int_{-1}^{1} (1+r^2-2ru)^{b/2} du has an elementary
// antiderivative, so the zonal sphere integrals collapse.
inline double closed_phi3(double alpha, double r) {
  const double b = alpha - 3.0;
  if (r < 1e-12) return kFourPi;
  return 2.0 * M_PI * (std::pow(1.0 + r, b + 2.0) - std::pow(1.0 - r, b + 2.0)) / (r * (b + 2.0));
}

inline double closed_psi3(double alpha, double r) {
  const double b = alpha - 5.0;
  if (r < 1e-12) return kFourPi;
  return (1.0 - r * r) * 2.0 * M_PI *
         (std::pow(1.0 + r, b + 2.0) - std::pow(1.0 - r, b + 2.0)) / (r * (b + 2.0));
}

// plain composite Gauss-Legendre(24) on [a, b]
double integrate_1d(const std::function<double(double)>& f, double a, double b, int panels = 64);

// (4 pi)^{-1/p} (4 pi int_0^1 prof(r)^{t'} r^2 dr)^{1/t'} with closed profiles
double xi_oracle_rev3(double alpha, double p, double t);
double xi_oracle_pois3(double alpha, double p, double t);

// int_{B^3} |x - x^o|^s dx: slicing through the pole gives
// 2 pi 2^{s+3} / ((s+3)(s+4)).
inline double ball_pole_integral3(double s) {
  return 2.0 * M_PI * std::pow(2.0, s + 3.0) / ((s + 3.0) * (s + 4.0));
}

// |f|_p^p for the boundary family (|y - y0|^2 + d^2)^{-beta} on R^{n-1}=R^2:
// pi / ((beta p - 1) d^{2(beta p - 1)}).
inline double bubble_norm_p3(double beta, double p, double d) {
  const double m = beta * p;
  return std::pow(M_PI / ((m - 1.0) * std::pow(d, 2.0 * (m - 1.0))), 1.0 / p);
}

// Full-dimensional quadrature of fn over the unit sphere around z^o (n = 3
// or 4), with composite polar panels graded toward the given axis direction
// so boundary-peaked integrands stay resolved. Genuinely (n-1)-dimensional:
// no zonal reduction of fn is used.
double sphere_integral_graded(int n, const std::function<double(const hlslab::geom::Point&)>& fn,
                              const hlslab::geom::Point& axis_direction);

}  // namespace oracle
