#pragma once

#include <functional>

#include "hlslab/operators.hpp"

namespace hlslab::extremals {

/// Parameters of the extremal families c (|y - y0bar|^2 + d^2)^{-beta}.
struct ExtremalParams {
  double c = 1.0;
  geom::Point y0bar;
  double d = 1.0;
};

struct ConstantResult {
  double value = 0;
  double error_estimate = 0;
  int quadrature_level = 0;
  ops::Exponents exponents;
};

/// Sharp subcritical constant xi_alpha (reversed regimes):
/// (n w_n)^{-1/p} ( n w_n int_0^1 Phi(r)^{t'} r^{n-1} dr )^{1/t'},
/// inner integral through the 1-D zonal reduction.
ConstantResult xi_alpha(const ops::Exponents& e);

/// Poisson-regime mirror: the constant-function quotient
/// (n w_n)^{-1/p} ( n w_n int_0^1 Psi(r)^{t'} r^{n-1} dr )^{1/t'}.
ConstantResult poisson_constant_quotient(const ops::Exponents& e);

/// Either of the above, dispatched on the regime.
ConstantResult subcritical_constant(const ops::Exponents& e);

/// The bare constant-quotient formula without regime validation. The sweep
/// uses it for early Poisson steps that sit outside the existence region
/// (1/p + 1/t < 1) yet still have a well-defined formula value.
ConstantResult constant_quotient_formula(const ops::Exponents& e);

/// Sharp critical constants; same radial pipeline at critical exponents.
ConstantResult c_e1(int n, double alpha);
ConstantResult c_e2(int n, double alpha);

/// Exponent beta of the family for the regime: (n+alpha-2)/2 reversed,
/// (n+alpha-4)/2 Poisson.
double extremal_beta(const ops::Exponents& e);

/// f(y) = c (|y - y0bar|^2 + d^2)^{-beta} on the boundary hyperplane.
std::function<double(const geom::Point&)> extremal_family(const ops::Exponents& e,
                                                          const ExtremalParams& params);

/// Pullback of a boundary-half-space function to the sphere with the
/// norm-preserving weight (2/|zeta - x^o|)^{2(n-1)/p}.
quad::GridFunction transport_boundary_function(const std::function<double(const geom::Point&)>& f,
                                               const ops::Exponents& e, quad::RulePtr sphere);

/// Inverse transport: boundary-half-space values of a sphere function.
std::function<double(const geom::Point&)> transport_to_halfspace(
    const std::function<double(const geom::Point&)>& sphere_f, const ops::Exponents& e);

struct ELResult {
  double residual = 0;    // min_mu |f^{p-1} - mu RHS|_2 / |f^{p-1}|_2
  double multiplier = 0;  // the fitted mu
};

/// Euler-Lagrange residual of f for the ball equation of the regime,
/// with the free constant multiplier fitted out. f must be strictly positive.
ELResult el_residual(const quad::GridFunction& f, const ops::Exponents& e, quad::RulePtr ball);

}  // namespace hlslab::extremals
