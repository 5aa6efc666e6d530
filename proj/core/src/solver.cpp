#include "hlslab/solver.hpp"

#include <algorithm>
#include <cmath>

#include "hlslab/errors.hpp"
#include "hlslab/operators.hpp"

namespace hlslab::solver {

namespace {

struct SplitMix {
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
};

void normalize_lp(quad::GridFunction& f, double p) {
  const double nf = ops::lp_functional(f, p);
  if (!(nf > 0.0) || !std::isfinite(nf)) throw PositivityLoss("iterate norm degenerated");
  for (double& v : f.values) v /= nf;
}

}  // namespace

SolveResult solve_subcritical(const ops::Exponents& e, const SolveConfig& cfg, int level) {
  ops::require_valid(e);
  if (e.critical()) throw ValidationError("solve_subcritical runs at subcritical exponents");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0)) throw ValidationError("damping must be in (0,1]");
  if (!(cfg.tol > 0.0) || cfg.max_iters < 1) throw ValidationError("bad tol/max_iters");

  // boundary-singular kernel (Poisson case) gets the graded radial rule
  const auto ball = e.reversed() ? quad::ball_rule(e.n, level)
                                 : quad::ball_rule(e.n, level, quad::GradingDescriptor{});
  ops::ExtensionOperator op(ball, ops::extension_kernel(e));

  quad::GridFunction f;
  if (cfg.init == InitKind::Constant) {
    f = quad::GridFunction::constant(ball->sphere, 1.0);
  } else {
    f = ops::random_lognormal(ball->sphere, cfg.seed);
  }
  normalize_lp(f, e.p);

  SolveResult res;
  res.b2_cap_plus = std::pow(geom::unit_sphere_area(e.n), 1.0 / e.p - 0.5);
  res.b2_cap_minus = std::pow(geom::unit_sphere_area(e.n), 0.5 - 1.0 / e.p);

  int floor_hits = 0;
  for (int it = 0; it < cfg.max_iters; ++it) {
    quad::GridFunction ef = op.extend(f);
    const double xi = ops::lp_functional(ef, e.t_conj);

    for (double& v : ef.values) v = std::pow(v, e.kappa);
    quad::GridFunction rhs = op.trace(ef);
    quad::GridFunction fn = f;
    bool floored = false;
    for (std::size_t j = 0; j < fn.size(); ++j) {
      double v = rhs.values[j];
      if (!(v > 0.0) || !std::isfinite(v)) {
        v = 1e-300;
        floored = true;
      }
      fn.values[j] = std::pow(v, e.theta);
    }
    floor_hits = floored ? floor_hits + 1 : 0;
    if (floor_hits > 10) throw PositivityLoss("fixed-point update lost positivity repeatedly");
    normalize_lp(fn, e.p);

    quad::GridFunction next = f;
    for (std::size_t j = 0; j < next.size(); ++j)
      next.values[j] = (1.0 - cfg.damping) * f.values[j] + cfg.damping * fn.values[j];
    normalize_lp(next, e.p);

    double change = 0.0, fmax = 0.0;
    for (std::size_t j = 0; j < next.size(); ++j) {
      change = std::max(change, std::abs(next.values[j] - f.values[j]));
      fmax = std::max(fmax, std::abs(f.values[j]));
    }
    change /= fmax;
    res.history.push_back({xi, change});
    f = std::move(next);
    res.iterations = it + 1;
    if (change <= cfg.tol) {
      res.converged = true;
      break;
    }
  }

  quad::GridFunction ef = op.extend(f);
  res.xi_estimate = ops::lp_functional(ef, e.t_conj);
  for (double& v : ef.values) v = std::pow(v, e.kappa);
  const quad::GridFunction rhs = op.trace(ef);
  {
    const auto& w = f.rule->weights;
    double ab = 0.0, bb = 0.0, aa = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double A = std::pow(f.values[j], e.p - 1.0);
      ab += w[j] * A * rhs.values[j];
      bb += w[j] * rhs.values[j] * rhs.values[j];
      aa += w[j] * A * A;
    }
    const double mu = ab / bb;
    double rr = 0.0;
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double d = std::pow(f.values[j], e.p - 1.0) - mu * rhs.values[j];
      rr += w[j] * d * d;
    }
    res.el_residual = std::sqrt(rr / aa);
  }
  res.symmetry_deficit = symmetry_deficit(f);
  res.l2_value = ops::lp_functional(f, 2.0);
  if (cfg.b2_cap) res.b2_cap_violated = res.l2_value > *cfg.b2_cap;
  res.f = std::move(f);
  return res;
}

double symmetry_deficit(const quad::GridFunction& f) {
  const auto& rule = *f.rule;
  if (rule.domain.kind != geom::DomainKind::SphereBn)
    throw ValidationError("symmetry_deficit expects a sphere function");
  double fmax = 0.0;
  for (double v : f.values) fmax = std::max(fmax, std::abs(v));
  if (fmax == 0.0) throw ValidationError("symmetry_deficit needs a nonzero function");

  const std::size_t M = rule.phi.size();
  const std::size_t npolar = rule.size() / M;
  auto value = [&](std::size_t pol, std::size_t b) { return f.values[pol * M + b]; };

  // exact grid symmetries about the z^o axis: azimuth rotations and the
  // reflections b -> c - 1 - b (mod M)
  std::vector<std::size_t> shifts{1, M / 4, M / 3, M / 2, (2 * M) / 3};
  SplitMix rng{0x5851f42d4c957f2dULL};
  for (int k = 0; k < 3; ++k) shifts.push_back(1 + rng.next() % (M - 1));
  double deficit = 0.0;
  for (std::size_t pol = 0; pol < npolar; ++pol) {
    for (std::size_t b = 0; b < M; ++b) {
      const double v = value(pol, b);
      for (std::size_t s : shifts)
        deficit = std::max(deficit, std::abs(v - value(pol, (b + s) % M)));
      // two reflection planes through the axis: phi -> -phi and its
      // quarter-turn conjugate
      deficit = std::max(deficit, std::abs(v - value(pol, (2 * M - 1 - b) % M)));
      deficit = std::max(deficit, std::abs(v - value(pol, (2 * M + M / 2 - 1 - b) % M)));
    }
  }
  return deficit / fmax;
}

SweepResult sweep_to_critical(int n, double alpha, kernels::KernelKind regime, int steps,
                              int level) {
  if (steps < 3) throw ValidationError("sweep_to_critical needs steps >= 3");
  const bool rev = regime == kernels::KernelKind::Reversed;
  const auto reg_sub =
      rev ? ops::Regime::ReversedSubcritical : ops::Regime::PoissonSubcritical;
  const double pc = ops::Exponents::critical_p(reg_sub, n, alpha);
  const double tc = ops::Exponents::critical_t(n, alpha);

  SweepResult out;
  for (int k = 1; k <= steps; ++k) {
    const double eps = std::ldexp(1.0, -k);
    const double p = rev ? pc * (1.0 - eps) : pc * (1.0 + eps);
    const double t = rev ? tc * (1.0 - eps) : tc * (1.0 + eps);
    const auto e = rev ? ops::Exponents::reversed_subcritical(n, alpha, p, t)
                       : ops::Exponents::poisson_subcritical(n, alpha, p, t);
    // the constant-quotient pipeline is a formula in (p, t); early Poisson
    // steps may sit outside the existence region and are still recorded
    const auto c = rev ? extremals::xi_alpha(e) : extremals::constant_quotient_formula(e);
    out.records.push_back({p, t, c.value, c.quadrature_level});
  }
  (void)level;

  // Richardson (Neville) extrapolation in eps = 2^{-k} from the last points
  const int use = std::min(4, steps);
  std::vector<double> eps(static_cast<std::size_t>(use)), val(static_cast<std::size_t>(use));
  for (int i = 0; i < use; ++i) {
    const int k = steps - use + 1 + i;
    eps[static_cast<std::size_t>(i)] = std::ldexp(1.0, -k);
    val[static_cast<std::size_t>(i)] = out.records[static_cast<std::size_t>(k - 1)].xi;
  }
  for (int j = 1; j < use; ++j)
    for (int i = use - 1; i >= j; --i)
      val[static_cast<std::size_t>(i)] =
          val[static_cast<std::size_t>(i)] +
          (val[static_cast<std::size_t>(i)] - val[static_cast<std::size_t>(i - 1)]) *
              eps[static_cast<std::size_t>(i)] /
              (eps[static_cast<std::size_t>(i - j)] - eps[static_cast<std::size_t>(i)]);
  out.extrapolated = val[static_cast<std::size_t>(use - 1)];
  return out;
}

double ms_kernel_positivity(int n, double alpha, const geom::Point& y0, double lambda,
                            int samples, std::uint64_t seed) {
  if (!(lambda > 0.0)) throw ValidationError("ms_kernel_positivity needs lambda > 0");
  if (!(n >= 3 && alpha >= 2.0 && alpha < n))
    throw ValidationError("moving-spheres kernel lives in the Poisson regime");
  const double s = n - alpha + 2.0;
  SplitMix rng{seed};
  auto normal = [&rng] {
    const double u1 = std::max(rng.uniform(), 1e-17), u2 = rng.uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  double worst = std::numeric_limits<double>::infinity();
  for (int it = 0; it < samples; ++it) {
    // xi in the half space outside B_lambda(y0), eta on the boundary outside
    geom::Point dir = geom::Point::zero(n);
    double norm2 = 0.0;
    for (int c = 0; c < n; ++c) {
      dir[c] = normal();
      norm2 += dir[c] * dir[c];
    }
    dir = (1.0 / std::sqrt(norm2)) * dir;
    dir[n - 1] = std::abs(dir[n - 1]);
    const double rho = lambda * (1.0 + 3.0 * rng.uniform());
    const geom::Point xi = y0 + rho * dir;

    geom::Point bdir = geom::Point::zero(n);
    norm2 = 0.0;
    for (int c = 0; c < n - 1; ++c) {
      bdir[c] = normal();
      norm2 += bdir[c] * bdir[c];
    }
    bdir = (1.0 / std::sqrt(norm2)) * bdir;
    const double sig = lambda * (1.0 + 3.0 * rng.uniform());
    const geom::Point eta = y0 + sig * bdir;

    const double xin = xi[n - 1];
    const double k1v = xin * std::pow(xi.distance(eta), -s);
    const geom::Point xinv = geom::sphere_inversion(xi, y0, lambda);
    const double k2v = std::pow(lambda / xi.distance(y0), s) * xin *
                       std::pow(xinv.distance(eta), -s);
    worst = std::min(worst, k1v - k2v);
  }
  return worst;
}

}  // namespace hlslab::solver
