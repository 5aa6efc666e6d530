#include "hlslab/constants.hpp"

#include <cmath>

#include "hlslab/errors.hpp"
#include "hlslab/parallel.hpp"

namespace hlslab::extremals {

namespace {

// Outer radial integral int_0^1 prof(r)^{t'} r^{n-1} dr on a composite rule
// graded toward r = 1 (the profile may lose smoothness there), depth and
// point count growing with the refinement level.
double outer_radial(const ops::Exponents& e, int level) {
  const int n = e.n;
  const quad::Rule1D gl = quad::gauss_legendre(10 + 6 * level);
  const quad::Rule1D gl_layer = quad::gauss_legendre(12);
  const int layers = 8 + 4 * level;

  std::vector<double> edges{0.0, 0.5};
  for (int k = 1; k < layers; ++k) edges.push_back(1.0 - (1.0 - edges.back()) * 0.5);
  edges.push_back(1.0);

  auto prof = [&](double r) {
    if (e.reversed()) return kernels::zonal_profile(n, e.alpha - n, r);
    const double reval = std::min(r, 1.0 - 1e-8);
    return (1.0 - reval) * (1.0 + reval) * kernels::zonal_profile(n, -(n + 2.0 - e.alpha), reval);
  };

  std::vector<double> panel(edges.size() - 1, 0.0);
  parallel_for(panel.size(), [&](std::size_t k) {
    const double lo = edges[k], hi = edges[k + 1];
    const quad::Rule1D& rule = k == 0 ? gl : gl_layer;
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = c + half * rule.x[i];
      acc += rule.w[i] * std::pow(prof(r), e.t_conj) * std::pow(r, n - 1);
    }
    panel[k] = half * acc;
  });
  return pairwise_sum(panel);
}

ConstantResult radial_pipeline(const ops::Exponents& e) {
  const double area = geom::unit_sphere_area(e.n);  // n w_n
  auto xi_at = [&](int level) {
    const double I = outer_radial(e, level);
    return std::pow(area, -1.0 / e.p) * std::pow(area * I, 1.0 / e.t_conj);
  };
  ConstantResult out;
  out.exponents = e;
  const quad::RefineResult r = quad::refine_until(xi_at, 1e-12, 7, 1);
  out.value = r.value;
  out.error_estimate = r.error_estimate;
  out.quadrature_level = r.level;
  return out;
}

}  // namespace

ConstantResult xi_alpha(const ops::Exponents& e) {
  if (e.regime != ops::Regime::ReversedSubcritical)
    throw ValidationError("xi_alpha needs the reversed subcritical regime");
  ops::require_valid(e);
  return radial_pipeline(e);
}

ConstantResult poisson_constant_quotient(const ops::Exponents& e) {
  if (e.reversed()) throw ValidationError("poisson_constant_quotient needs a Poisson regime");
  ops::require_valid(e);
  return radial_pipeline(e);
}

ConstantResult subcritical_constant(const ops::Exponents& e) {
  return e.reversed() ? xi_alpha(e) : poisson_constant_quotient(e);
}

ConstantResult constant_quotient_formula(const ops::Exponents& e) {
  if (!(e.t != 1.0) || e.p == 0.0) throw ValidationError("constant quotient needs t != 1, p != 0");
  return radial_pipeline(e);
}

ConstantResult c_e1(int n, double alpha) {
  const auto e = ops::Exponents::reversed_critical(n, alpha);
  ops::require_valid(e);
  return radial_pipeline(e);
}

ConstantResult c_e2(int n, double alpha) {
  const auto e = ops::Exponents::poisson_critical(n, alpha);
  ops::require_valid(e);
  return radial_pipeline(e);
}

double extremal_beta(const ops::Exponents& e) {
  return e.reversed() ? 0.5 * (e.n + e.alpha - 2.0) : 0.5 * (e.n + e.alpha - 4.0);
}

std::function<double(const geom::Point&)> extremal_family(const ops::Exponents& e,
                                                          const ExtremalParams& params) {
  if (!e.critical()) throw ValidationError("extremal families exist at critical exponents");
  if (!(params.c > 0.0 && params.d > 0.0))
    throw ValidationError("extremal family needs c > 0 and d > 0");
  const double beta = extremal_beta(e);
  const ExtremalParams p = params;
  return [p, beta](const geom::Point& y) {
    double q2 = p.d * p.d;
    for (int c = 0; c < y.dim() - 1; ++c) {
      const double dy = y[c] - (c < p.y0bar.dim() ? p.y0bar[c] : 0.0);
      q2 += dy * dy;
    }
    return p.c * std::pow(q2, -beta);
  };
}

quad::GridFunction transport_boundary_function(const std::function<double(const geom::Point&)>& f,
                                               const ops::Exponents& e, quad::RulePtr sphere) {
  if (sphere->domain.kind != geom::DomainKind::SphereBn)
    throw ValidationError("transport_boundary_function expects the sphere rule");
  const int n = e.n;
  const geom::Point pole = geom::conformal_pole(n);
  const double wexp = 2.0 * (n - 1.0) / e.p;
  quad::GridFunction F;
  F.rule = sphere;
  F.values.resize(sphere->size());
  bool nonneg = true;
  for (std::size_t j = 0; j < sphere->size(); ++j) {
    const geom::Point zeta = sphere->point(j);
    const double q = zeta.distance(pole);
    if (q < geom::kPoleThreshold) throw SingularPoint("transport hit the conformal pole");
    geom::Point y = geom::conformal_to_halfspace(zeta);
    y[n - 1] = 0.0;
    F.values[j] = f(y) * std::pow(2.0 / q, wexp);
    nonneg = nonneg && F.values[j] >= 0.0;
  }
  F.nonnegative = nonneg;
  return F;
}

std::function<double(const geom::Point&)> transport_to_halfspace(
    const std::function<double(const geom::Point&)>& sphere_f, const ops::Exponents& e) {
  const int n = e.n;
  const double wexp = 2.0 * (n - 1.0) / e.p;
  return [sphere_f, n, wexp](const geom::Point& y) {
    const geom::Point pole = geom::conformal_pole(n);
    const geom::Point zeta = geom::conformal_to_ball(y);
    return sphere_f(zeta) * std::pow(2.0 / y.distance(pole), wexp);
  };
}

ELResult el_residual(const quad::GridFunction& f, const ops::Exponents& e, quad::RulePtr ball) {
  ops::require_valid(e);
  for (double v : f.values)
    if (!(v > 0.0)) throw ValidationError("el_residual needs strictly positive f");
  ops::ExtensionOperator op(std::move(ball), ops::extension_kernel(e));
  quad::GridFunction ef = op.extend(f);
  for (double& v : ef.values) v = std::pow(v, e.kappa);
  const quad::GridFunction rhs = op.trace(ef);

  const auto& w = f.rule->weights;
  double ab = 0.0, bb = 0.0, aa = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double A = std::pow(f.values[j], e.p - 1.0);
    const double B = rhs.values[j];
    ab += w[j] * A * B;
    bb += w[j] * B * B;
    aa += w[j] * A * A;
  }
  if (!(bb > 0.0) || !std::isfinite(bb)) throw NonFiniteValue("el_residual: degenerate RHS");
  const double mu = ab / bb;
  double rr = 0.0;
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double d = std::pow(f.values[j], e.p - 1.0) - mu * rhs.values[j];
    rr += w[j] * d * d;
  }
  return {std::sqrt(rr / aa), mu};
}

}  // namespace hlslab::extremals
