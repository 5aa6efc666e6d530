#include "hlslab/quadrature.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "hlslab/errors.hpp"
#include "hlslab/parallel.hpp"

namespace hlslab::quad {

namespace {

// Golub-Welsch for the symmetric Jacobi weight (1-x^2)^a: the recurrence
// coefficients are diag 0, offdiag^2 b_k = 4k(k+a)^2(k+2a) /
// ((2k+2a)^2 (2k+2a+1)(2k+2a-1)), with b_1 = 1/(3+2a).
Rule1D golub_welsch_gegenbauer(int npts, double a) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(npts);
  Eigen::VectorXd sub(npts - 1 > 0 ? npts - 1 : 0);
  for (int k = 1; k < npts; ++k) {
    double bk;
    if (k == 1) {
      bk = 1.0 / (3.0 + 2.0 * a);
    } else {
      const double s = 2.0 * k + 2.0 * a;
      bk = 4.0 * k * (k + a) * (k + a) * (k + 2.0 * a) / (s * s * (s + 1.0) * (s - 1.0));
    }
    sub[k - 1] = std::sqrt(bk);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  const double mu0 = std::exp((2.0 * a + 1.0) * std::log(2.0) + 2.0 * std::lgamma(a + 1.0) -
                              std::lgamma(2.0 * a + 2.0));
  Rule1D rule;
  rule.x.resize(npts);
  rule.w.resize(npts);
  for (int i = 0; i < npts; ++i) {
    rule.x[static_cast<std::size_t>(i)] = es.eigenvalues()[i];
    const double v = es.eigenvectors()(0, i);
    rule.w[static_cast<std::size_t>(i)] = mu0 * v * v;
  }
  return rule;
}

void append_scaled(Rule1D& dst, const Rule1D& gl, double lo, double hi) {
  const double c = 0.5 * (lo + hi), h = 0.5 * (hi - lo);
  for (std::size_t i = 0; i < gl.x.size(); ++i) {
    dst.x.push_back(c + h * gl.x[i]);
    dst.w.push_back(h * gl.w[i]);
  }
}

void check_dim_level(int n, int level) {
  if (n < 2 || n > 6) throw UnsupportedDimension("quadrature rules support n in {2,...,6}");
  if (level < 1) throw ValidationError("quadrature level must be >= 1");
}

}  // namespace

Rule1D gauss_legendre(int npts) { return golub_welsch_gegenbauer(npts, 0.0); }

Rule1D gauss_gegenbauer(int npts, double a) {
  if (a <= -1.0) throw ValidationError("gegenbauer exponent must be > -1");
  return golub_welsch_gegenbauer(npts, a);
}

Rule1D mapped(const Rule1D& rule, double lo, double hi) {
  Rule1D out;
  out.x.reserve(rule.x.size());
  out.w.reserve(rule.w.size());
  append_scaled(out, rule, lo, hi);
  return out;
}

geom::Point QuadratureRule::point(std::size_t i) const { return geom::Point(node(i)); }

RulePtr sphere_rule(int n, int level) {
  check_dim_level(n, level);
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = {geom::DomainKind::SphereBn, n};
  rule->level = level;

  const int npolar = 6 * level;
  const int naz = 12 * level;
  rule->phi.resize(static_cast<std::size_t>(naz));
  for (int b = 0; b < naz; ++b)
    rule->phi[static_cast<std::size_t>(b)] = 2.0 * M_PI * (b + 0.5) / naz;
  rule->phi_weight = 2.0 * M_PI / naz;

  for (int j = 1; j <= n - 2; ++j)
    rule->polar.push_back(gauss_gegenbauer(npolar, 0.5 * (n - 2 - j)));

  // enumerate (polar multi-index, azimuth), azimuth fastest
  std::size_t count = static_cast<std::size_t>(naz);
  for (const auto& p : rule->polar) count *= p.x.size();
  rule->nodes.resize(count * static_cast<std::size_t>(n));
  rule->weights.resize(count);

  const geom::Point center = geom::ball_center(n);
  std::vector<std::size_t> idx(rule->polar.size(), 0);
  std::size_t k = 0;
  for (;;) {
    double sin_chain = 1.0, wpol = 1.0;
    std::vector<double> dir(static_cast<std::size_t>(n), 0.0);
    for (std::size_t j = 0; j < rule->polar.size(); ++j) {
      const double u = rule->polar[j].x[idx[j]];
      wpol *= rule->polar[j].w[idx[j]];
      dir[static_cast<std::size_t>(n - 1 - static_cast<int>(j))] = sin_chain * u;
      sin_chain *= std::sqrt(std::max(0.0, 1.0 - u * u));
    }
    for (int b = 0; b < naz; ++b) {
      const double ph = rule->phi[static_cast<std::size_t>(b)];
      dir[0] = sin_chain * std::cos(ph);
      dir[1] = sin_chain * std::sin(ph);
      for (int c = 0; c < n; ++c)
        rule->nodes[k * static_cast<std::size_t>(n) + static_cast<std::size_t>(c)] =
            dir[static_cast<std::size_t>(c)] + center[c];
      rule->weights[k] = wpol * rule->phi_weight;
      ++k;
    }
    // advance polar multi-index
    std::size_t j = rule->polar.size();
    for (;;) {
      if (j == 0) break;
      --j;
      if (++idx[j] < rule->polar[j].x.size()) break;
      idx[j] = 0;
      if (j == 0) {
        j = SIZE_MAX;
        break;
      }
    }
    if (rule->polar.empty() || j == SIZE_MAX) break;
  }
  return rule;
}

RulePtr ball_rule(int n, int level, std::optional<GradingDescriptor> grading) {
  check_dim_level(n, level);
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = {geom::DomainKind::BallBn, n};
  rule->level = level;
  rule->grading = grading;
  rule->sphere = sphere_rule(n, level);

  const int nr = 6 * level;
  Rule1D radial;
  if (!grading) {
    append_scaled(radial, gauss_legendre(nr), 0.0, 1.0);
  } else {
    const double ratio = grading->ratio;
    const int layers = grading->layers;
    if (!(ratio > 0.0 && ratio < 1.0) || layers < 1)
      throw ValidationError("grading needs ratio in (0,1) and layers >= 1");
    const int m = grading->points_per_layer > 0 ? grading->points_per_layer : std::max(3, nr / 8);
    const Rule1D gl_base = gauss_legendre(nr);
    const Rule1D gl_layer = gauss_legendre(m);
    double edge = 0.5;  // base panel [0, 1/2], then geometric panels toward 1
    append_scaled(radial, gl_base, 0.0, edge);
    for (int kk = 1; kk < layers; ++kk) {
      const double next = 1.0 - (1.0 - edge) * ratio;
      append_scaled(radial, gl_layer, edge, next);
      edge = next;
    }
    append_scaled(radial, gl_layer, edge, 1.0);
  }
  rule->r = radial.x;
  rule->wr.resize(radial.w.size());
  for (std::size_t i = 0; i < radial.w.size(); ++i)
    rule->wr[i] = radial.w[i] * std::pow(radial.x[i], n - 1);

  const auto& sp = *rule->sphere;
  const std::size_t ns = sp.size(), nrad = rule->r.size();
  rule->nodes.resize(nrad * ns * static_cast<std::size_t>(n));
  rule->weights.resize(nrad * ns);
  const geom::Point center = geom::ball_center(n);
  for (std::size_t i = 0; i < nrad; ++i) {
    const double ri = rule->r[i];
    for (std::size_t j = 0; j < ns; ++j) {
      const auto sn = sp.node(j);
      const std::size_t base = (i * ns + j) * static_cast<std::size_t>(n);
      for (int c = 0; c < n; ++c)
        rule->nodes[base + static_cast<std::size_t>(c)] =
            center[c] + ri * (sn[static_cast<std::size_t>(c)] - center[c]);
      rule->weights[i * ns + j] = rule->wr[i] * sp.weights[j];
    }
  }
  return rule;
}

RulePtr boundary_halfspace_rule(int n, int level) {
  auto sp = sphere_rule(n, level);
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = {geom::DomainKind::BoundaryHalfSpace, n};
  rule->level = level;
  rule->sphere = sp;
  rule->nodes.resize(sp->nodes.size());
  rule->weights.resize(sp->size());
  for (std::size_t j = 0; j < sp->size(); ++j) {
    const geom::Point y = geom::conformal_to_halfspace(sp->point(j));
    const std::size_t base = j * static_cast<std::size_t>(n);
    for (int c = 0; c < n - 1; ++c) rule->nodes[base + static_cast<std::size_t>(c)] = y[c];
    rule->nodes[base + static_cast<std::size_t>(n - 1)] = 0.0;  // clamp to the hyperplane
    rule->weights[j] =
        sp->weights[j] * geom::jacobian_weight(sp->point(j), geom::JacobianRole::Boundary);
  }
  return rule;
}

RulePtr halfspace_rule(int n, int level, std::optional<GradingDescriptor> grading) {
  auto ball = ball_rule(n, level, grading);
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = {geom::DomainKind::HalfSpace, n};
  rule->level = level;
  rule->nodes.resize(ball->nodes.size());
  rule->weights.resize(ball->size());
  for (std::size_t i = 0; i < ball->size(); ++i) {
    const geom::Point x = geom::conformal_to_halfspace(ball->point(i));
    const std::size_t base = i * static_cast<std::size_t>(n);
    for (int c = 0; c < n; ++c) rule->nodes[base + static_cast<std::size_t>(c)] = x[c];
    rule->weights[i] =
        ball->weights[i] * geom::jacobian_weight(ball->point(i), geom::JacobianRole::Bulk);
  }
  return rule;
}

RulePtr boundary_halfspace_rule_truncated(int n, int level, double R) {
  check_dim_level(n, level);
  auto rule = std::make_shared<QuadratureRule>();
  rule->domain = {geom::DomainKind::BoundaryHalfSpace, n};
  rule->level = level;

  // directions on S^{n-2} from a sphere rule one dimension down
  std::vector<std::vector<double>> dirs;
  std::vector<double> dw;
  if (n == 2) {
    dirs = {{1.0}, {-1.0}};
    dw = {1.0, 1.0};
  } else {
    auto sp = sphere_rule(n - 1, level);
    const geom::Point c = geom::ball_center(n - 1);
    for (std::size_t j = 0; j < sp->size(); ++j) {
      std::vector<double> d(static_cast<std::size_t>(n - 1));
      for (int k = 0; k < n - 1; ++k) d[static_cast<std::size_t>(k)] = sp->point(j)[k] - c[k];
      dirs.push_back(std::move(d));
      dw.push_back(sp->weights[j]);
    }
  }

  // radial panels geometric from R toward 0
  Rule1D radial;
  const Rule1D gl = gauss_legendre(6 * level);
  const int panels = 12 + 3 * level;
  double hi = R;
  for (int k = 0; k < panels; ++k) {
    const double lo = (k + 1 == panels) ? 0.0 : hi * 0.5;
    append_scaled(radial, gl, lo, hi);
    hi = lo;
  }

  rule->nodes.resize(radial.x.size() * dirs.size() * static_cast<std::size_t>(n));
  rule->weights.resize(radial.x.size() * dirs.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    const double rho = radial.x[i];
    const double wrho = radial.w[i] * std::pow(rho, n - 2);
    for (std::size_t j = 0; j < dirs.size(); ++j) {
      const std::size_t base = k * static_cast<std::size_t>(n);
      for (int c = 0; c < n - 1; ++c)
        rule->nodes[base + static_cast<std::size_t>(c)] = rho * dirs[j][static_cast<std::size_t>(c)];
      rule->nodes[base + static_cast<std::size_t>(n - 1)] = 0.0;
      rule->weights[k] = wrho * dw[j];
      ++k;
    }
  }
  return rule;
}

GridFunction GridFunction::constant(RulePtr rule, double value) {
  GridFunction f;
  f.rule = std::move(rule);
  f.values.assign(f.rule->size(), value);
  f.nonnegative = value >= 0.0;
  return f;
}

GridFunction GridFunction::sample(RulePtr rule, const std::function<double(const geom::Point&)>& fn,
                                  bool nonnegative) {
  GridFunction f;
  f.rule = std::move(rule);
  f.values.resize(f.rule->size());
  for (std::size_t i = 0; i < f.values.size(); ++i) f.values[i] = fn(f.rule->point(i));
  if (nonnegative) {
    for (double v : f.values)
      if (v < 0.0) throw NonnegativityRequired("sampled function is not nonnegative");
  }
  f.nonnegative = nonnegative;
  return f;
}

double integrate(const GridFunction& f) {
  std::vector<double> prod(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (!std::isfinite(f.values[i])) throw NonFiniteValue("integrate: non-finite value at node");
    prod[i] = f.rule->weights[i] * f.values[i];
  }
  return pairwise_sum(prod);
}

RefineResult refine_until(const std::function<double(int)>& functional, double rel_tol,
                          int max_level, int start_level) {
  if (rel_tol <= 0.0) throw ValidationError("refine_until needs rel_tol > 0");
  double prev = 0.0;
  bool have_prev = false;
  double best = 0.0, best_est = 0.0;
  for (int level = start_level; level <= max_level; ++level) {
    const double v = functional(level);
    if (!std::isfinite(v)) throw NonFiniteValue("refine_until: functional returned non-finite value");
    if (have_prev) {
      const double est = std::abs(v - prev);
      best = v;
      best_est = est;
      const double scale = std::max(std::abs(v), 1e-300);
      if (est <= rel_tol * scale) return {v, est, level};
    }
    prev = v;
    have_prev = true;
  }
  throw NoConvergence("refine_until: max level reached", best, best_est, max_level);
}

}  // namespace hlslab::quad
