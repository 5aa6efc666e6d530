#include "hlslab/operators.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>

#include "hlslab/errors.hpp"
#include "hlslab/parallel.hpp"

namespace hlslab::ops {

namespace {

// |x-y|^expo from the squared distance, with fast paths for the exponents
// the acceptance cases hammer.
inline double dist_pow(double d2, double expo) {
  if (expo == 1.0) return std::sqrt(d2);
  if (expo == -3.0) return 1.0 / (d2 * std::sqrt(d2));
  if (expo == 2.0) return d2;
  if (expo == -1.0) return 1.0 / std::sqrt(d2);
  if (expo == -2.0) return 1.0 / d2;
  return std::pow(d2, 0.5 * expo);
}

inline double kernel_value(const ZonalKernel& k, double r, double d2) {
  double v = k.scale * dist_pow(d2, k.expo);
  if (k.poisson_factor) v *= 1.0 - r * r;
  return v;
}

void check_sphere_function(const quad::GridFunction& f) {
  if (!f.rule || f.rule->domain.kind != geom::DomainKind::SphereBn)
    throw ValidationError("expected a GridFunction on the sphere rule");
  if (f.values.size() != f.rule->size()) throw ValidationError("GridFunction size mismatch");
}

void check_ball_function(const quad::GridFunction& g) {
  if (!g.rule || g.rule->domain.kind != geom::DomainKind::BallBn)
    throw ValidationError("expected a GridFunction on the ball rule");
  if (g.values.size() != g.rule->size()) throw ValidationError("GridFunction size mismatch");
}

}  // namespace

ZonalKernel extension_kernel(const Exponents& e) {
  if (e.reversed()) return {e.alpha - e.n, false, 1.0};
  return {-(e.n + 2.0 - e.alpha), true, 1.0};
}

struct ExtensionOperator::Impl {
  quad::RulePtr ball;
  ZonalKernel kernel;
  bool spectral = false;

  std::size_t nr = 0, ns = 0;
  std::vector<double> profile;  // zonal profile at each radius

  // spectral tables (n = 3)
  int npol = 0, naz = 0, lmax = 0;
  Eigen::MatrixXd lam;                 // nr x (lmax+1)
  std::vector<Eigen::MatrixXd> pbar;   // per m: (lmax+1-m) x npol
  Eigen::MatrixXd az_analyze;          // naz x (2*lmax+1), includes phi weight
  Eigen::MatrixXd az_synth;            // naz x (2*lmax+1), plain basis values
  Eigen::VectorXd wu;                  // polar weights

  void build_spectral();
  void analyze(const double* vals, std::vector<Eigen::VectorXd>& coeffs) const;
  void synth(const std::vector<Eigen::VectorXd>& coeffs, const double* lam_row,
             double* out) const;
  std::size_t coeff_count() const { return static_cast<std::size_t>(2 * lmax + 1); }
};

// Fully normalized associated Legendre values (int_{-1}^{1} Pbar^2 du = 1).
static Eigen::MatrixXd assoc_legendre(int lmax, int m, const Eigen::VectorXd& u) {
  const int rows = lmax + 1 - m;
  Eigen::MatrixXd P(rows, u.size());
  Eigen::ArrayXd s = (1.0 - u.array().square()).sqrt();
  Eigen::ArrayXd pmm = Eigen::ArrayXd::Constant(u.size(), 1.0 / std::sqrt(2.0));
  for (int k = 1; k <= m; ++k) pmm *= s * std::sqrt((2.0 * k + 1.0) / (2.0 * k));
  P.row(0) = pmm.matrix().transpose();
  if (rows > 1) P.row(1) = (u.array() * std::sqrt(2.0 * m + 3.0) * pmm).matrix().transpose();
  for (int l = m + 2; l <= lmax; ++l) {
    const double a = std::sqrt((4.0 * l * l - 1.0) / (static_cast<double>(l) * l - static_cast<double>(m) * m));
    const double b = std::sqrt((2.0 * l + 1.0) / (2.0 * l - 3.0) *
                               ((l - 1.0) * (l - 1.0) - static_cast<double>(m) * m) /
                               (static_cast<double>(l) * l - static_cast<double>(m) * m));
    P.row(l - m) = a * (u.array() * P.row(l - m - 1).transpose().array()).matrix().transpose() -
                   b * P.row(l - m - 2);
  }
  return P;
}

void ExtensionOperator::Impl::build_spectral() {
  const auto& sp = *ball->sphere;
  npol = static_cast<int>(sp.polar[0].x.size());
  naz = static_cast<int>(sp.phi.size());
  lmax = npol - 1;

  Eigen::VectorXd u(npol);
  wu.resize(npol);
  for (int i = 0; i < npol; ++i) {
    u[i] = sp.polar[0].x[static_cast<std::size_t>(i)];
    wu[i] = sp.polar[0].w[static_cast<std::size_t>(i)];
  }
  pbar.reserve(static_cast<std::size_t>(lmax) + 1);
  for (int m = 0; m <= lmax; ++m) pbar.push_back(assoc_legendre(lmax, m, u));

  // real azimuth basis: col 0 -> 1/sqrt(2pi); col m -> cos(m phi)/sqrt(pi);
  // col lmax+m -> sin(m phi)/sqrt(pi)
  az_analyze.resize(naz, 2 * lmax + 1);
  az_synth.resize(naz, 2 * lmax + 1);
  for (int b = 0; b < naz; ++b) {
    const double ph = sp.phi[static_cast<std::size_t>(b)];
    az_synth(b, 0) = 1.0 / std::sqrt(2.0 * M_PI);
    for (int m = 1; m <= lmax; ++m) {
      az_synth(b, m) = std::cos(m * ph) / std::sqrt(M_PI);
      az_synth(b, lmax + m) = std::sin(m * ph) / std::sqrt(M_PI);
    }
  }
  az_analyze = sp.phi_weight * az_synth;

  lam.resize(static_cast<Eigen::Index>(nr), lmax + 1);
  parallel_for(nr, [&](std::size_t i) {
    const auto row = kernels::funk_hecke_multipliers(lmax, kernel.expo, kernel.poisson_factor,
                                                     kernel.scale, ball->r[i]);
    for (int l = 0; l <= lmax; ++l) lam(static_cast<Eigen::Index>(i), l) = row[static_cast<std::size_t>(l)];
    // pin the degree-0 response to the zonal profile so both evaluation
    // paths send constants through the identical 1-D values
    lam(static_cast<Eigen::Index>(i), 0) = profile[i];
  });
}

void ExtensionOperator::Impl::analyze(const double* vals,
                                      std::vector<Eigen::VectorXd>& coeffs) const {
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> F(
      vals, npol, naz);
  Eigen::MatrixXd G = F * az_analyze;  // npol x (2 lmax + 1)
  coeffs.resize(coeff_count());
  for (int m = 0; m <= lmax; ++m) {
    const Eigen::VectorXd gw = wu.cwiseProduct(G.col(m));
    coeffs[static_cast<std::size_t>(m)] = pbar[static_cast<std::size_t>(m)] * gw;
    if (m >= 1) {
      const Eigen::VectorXd gws = wu.cwiseProduct(G.col(lmax + m));
      coeffs[static_cast<std::size_t>(lmax + m)] = pbar[static_cast<std::size_t>(m)] * gws;
    }
  }
}

void ExtensionOperator::Impl::synth(const std::vector<Eigen::VectorXd>& coeffs,
                                    const double* lam_row, double* out) const {
  Eigen::MatrixXd G(npol, 2 * lmax + 1);
  for (int m = 0; m <= lmax; ++m) {
    Eigen::VectorXd c = coeffs[static_cast<std::size_t>(m)];
    if (lam_row != nullptr)
      for (int l = m; l <= lmax; ++l) c[l - m] *= lam_row[l];
    G.col(m) = pbar[static_cast<std::size_t>(m)].transpose() * c;
    if (m >= 1) {
      Eigen::VectorXd cs = coeffs[static_cast<std::size_t>(lmax + m)];
      if (lam_row != nullptr)
        for (int l = m; l <= lmax; ++l) cs[l - m] *= lam_row[l];
      G.col(lmax + m) = pbar[static_cast<std::size_t>(m)].transpose() * cs;
    }
  }
  Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> F(out, npol,
                                                                                       naz);
  F = G * az_synth.transpose();
}

ExtensionOperator::ExtensionOperator(quad::RulePtr ball, ZonalKernel kernel, EvalPath path)
    : impl_(std::make_unique<Impl>()) {
  if (!ball || ball->domain.kind != geom::DomainKind::BallBn || !ball->sphere)
    throw ValidationError("ExtensionOperator needs a product ball rule");
  impl_->ball = std::move(ball);
  impl_->kernel = kernel;
  impl_->nr = impl_->ball->r.size();
  impl_->ns = impl_->ball->sphere->size();
  impl_->profile.resize(impl_->nr);
  const int n = impl_->ball->dim();
  parallel_for(impl_->nr, [&](std::size_t i) {
    double v = kernels::zonal_profile(n, kernel.expo, impl_->ball->r[i]) * kernel.scale;
    if (kernel.poisson_factor) v *= 1.0 - impl_->ball->r[i] * impl_->ball->r[i];
    impl_->profile[i] = v;
  });
  const bool want_spectral = path != EvalPath::Direct && n == 3;
  if (path == EvalPath::Spectral && n != 3)
    throw UnsupportedDimension("spectral evaluation path is n = 3 only");
  impl_->spectral = want_spectral;
  if (impl_->spectral) impl_->build_spectral();
}

ExtensionOperator::~ExtensionOperator() = default;
ExtensionOperator::ExtensionOperator(ExtensionOperator&&) noexcept = default;
ExtensionOperator& ExtensionOperator::operator=(ExtensionOperator&&) noexcept = default;

const quad::RulePtr& ExtensionOperator::ball() const { return impl_->ball; }
quad::RulePtr ExtensionOperator::sphere() const { return impl_->ball->sphere; }

quad::GridFunction ExtensionOperator::extend(const quad::GridFunction& f) const {
  check_sphere_function(f);
  if (f.rule->size() != impl_->ns || f.rule->level != impl_->ball->level)
    throw ValidationError("sphere rule of f does not match the ball rule");
  quad::GridFunction out;
  out.rule = impl_->ball;
  out.values.resize(impl_->nr * impl_->ns);
  out.nonnegative = f.nonnegative;

  const Impl& im = *impl_;
  if (im.spectral) {
    std::vector<Eigen::VectorXd> coeffs;
    im.analyze(f.values.data(), coeffs);
    parallel_for(im.nr, [&](std::size_t i) {
      Eigen::VectorXd lrow = im.lam.row(static_cast<Eigen::Index>(i));
      im.synth(coeffs, lrow.data(), out.values.data() + i * im.ns);
    });
    return out;
  }

  const auto& sp = *im.ball->sphere;
  const int n = im.ball->dim();
  parallel_for(im.nr * im.ns, [&](std::size_t idx) {
    const std::size_t i = idx / im.ns, j = idx % im.ns;
    const double* x = im.ball->nodes.data() + idx * static_cast<std::size_t>(n);
    const double r = im.ball->r[i];
    double acc = 0.0, wksum = 0.0;
    for (std::size_t k = 0; k < im.ns; ++k) {
      const double* y = sp.nodes.data() + k * static_cast<std::size_t>(n);
      double d2 = 0.0;
      for (int c = 0; c < n; ++c) {
        const double d = x[c] - y[c];
        d2 += d * d;
      }
      const double wk = sp.weights[k] * kernel_value(im.kernel, r, d2);
      acc += wk * f.values[k];
      wksum += wk;
    }
    // split: quadrature defect of the kernel row is charged to f at the
    // radial projection node, which keeps constants exact.
    out.values[idx] = acc + f.values[j] * (im.profile[i] - wksum);
  });
  return out;
}

quad::GridFunction ExtensionOperator::trace(const quad::GridFunction& g) const {
  check_ball_function(g);
  if (g.rule.get() != impl_->ball.get() &&
      (g.rule->size() != impl_->ball->size() || g.rule->level != impl_->ball->level))
    throw ValidationError("ball rule of g does not match the operator");
  quad::GridFunction out;
  out.rule = impl_->ball->sphere;
  out.values.assign(impl_->ns, 0.0);
  out.nonnegative = g.nonnegative;

  const Impl& im = *impl_;
  if (im.spectral) {
    std::vector<std::vector<Eigen::VectorXd>> per_shell(im.nr);
    parallel_for(im.nr, [&](std::size_t i) { im.analyze(g.values.data() + i * im.ns, per_shell[i]); });
    // weighted accumulation in fixed shell order
    std::vector<Eigen::VectorXd> acc = per_shell[0];
    for (std::size_t c = 0; c < acc.size(); ++c) {
      const int m = c <= static_cast<std::size_t>(im.lmax) ? static_cast<int>(c)
                                                           : static_cast<int>(c) - im.lmax;
      for (int l = m; l <= im.lmax; ++l) acc[c][l - m] *= im.ball->wr[0] * im.lam(0, l);
    }
    for (std::size_t i = 1; i < im.nr; ++i) {
      for (std::size_t c = 0; c < acc.size(); ++c) {
        const int m = c <= static_cast<std::size_t>(im.lmax) ? static_cast<int>(c)
                                                             : static_cast<int>(c) - im.lmax;
        for (int l = m; l <= im.lmax; ++l)
          acc[c][l - m] += im.ball->wr[i] * im.lam(static_cast<Eigen::Index>(i), l) *
                           per_shell[i][c][l - m];
      }
    }
    im.synth(acc, nullptr, out.values.data());
    return out;
  }

  const auto& sp = *im.ball->sphere;
  const int n = im.ball->dim();
  parallel_for(im.ns, [&](std::size_t j) {
    const double* y = sp.nodes.data() + j * static_cast<std::size_t>(n);
    double acc = 0.0;
    std::vector<double> rowsum(im.nr, 0.0);
    for (std::size_t i = 0; i < im.nr; ++i) {
      const double r = im.ball->r[i];
      double a = 0.0, s = 0.0;
      for (std::size_t k = 0; k < im.ns; ++k) {
        const double* x = im.ball->nodes.data() + (i * im.ns + k) * static_cast<std::size_t>(n);
        double d2 = 0.0;
        for (int c = 0; c < n; ++c) {
          const double d = x[c] - y[c];
          d2 += d * d;
        }
        const double kv = sp.weights[k] * kernel_value(im.kernel, r, d2);
        a += kv * g.values[i * im.ns + k];
        s += kv;
      }
      acc += im.ball->wr[i] * a;
      rowsum[i] = s;
    }
    double corr = 0.0;
    for (std::size_t i = 0; i < im.nr; ++i)
      corr += im.ball->wr[i] * g.values[i * im.ns + j] * (im.profile[i] - rowsum[i]);
    out.values[j] = acc + corr;
  });
  return out;
}

quad::GridFunction extend_ball(const quad::GridFunction& f, const Exponents& e,
                               quad::RulePtr ball) {
  require_valid(e);
  check_sphere_function(f);
  if (!f.nonnegative) throw NonnegativityRequired("extend_ball requires a nonnegative function");
  ExtensionOperator op(std::move(ball), extension_kernel(e));
  return op.extend(f);
}

quad::GridFunction boundary_trace_Q(const quad::GridFunction& g, const Exponents& e) {
  require_valid(e);
  if (e.reversed()) throw ValidationError("boundary_trace_Q is the Poisson-regime trace");
  check_ball_function(g);
  if (!g.nonnegative) throw NonnegativityRequired("boundary_trace_Q requires a nonnegative function");
  ExtensionOperator op(g.rule, extension_kernel(e));
  return op.trace(g);
}

double lp_functional(const quad::GridFunction& f, double p) {
  if (p == 0.0) throw ValidationError("lp_functional requires p != 0");
  bool clamped = false;
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double v = f.values[i];
    if (p < 1.0) {
      if (v < 0.0)
        throw NegativeValueUnderFractionalPower("lp_functional with p < 1 needs f >= 0");
      if (v == 0.0) {
        v = 1e-300;
        clamped = true;
      }
    }
    terms[i] = f.rule->weights[i] * std::pow(v, p);
  }
  if (clamped)
    std::fprintf(stderr, "hlslab: lp_functional clamped zero values to 1e-300 (p=%g)\n", p);
  const double s = pairwise_sum(terms);
  return std::pow(s, 1.0 / p);
}

namespace {

double quotient_impl(const quad::GridFunction& f, const quad::GridFunction& g,
                     const Exponents& e) {
  require_valid(e);
  check_sphere_function(f);
  check_ball_function(g);
  if (!f.nonnegative || !g.nonnegative)
    throw NonnegativityRequired("inequality quotients require nonnegative f, g");
  const double nf = lp_functional(f, e.p);
  const double ng = lp_functional(g, e.t);
  // clamped zeros under p < 1 leave a ~1e-300 residue; treat it as zero
  if (!(nf > 1e-200) || !(ng > 1e-200) || !std::isfinite(nf) || !std::isfinite(ng))
    throw ZeroDenominator("quotient denominators must be positive and finite");
  ExtensionOperator op(g.rule, extension_kernel(e));
  quad::GridFunction ef = op.extend(f);
  for (std::size_t i = 0; i < ef.size(); ++i) ef.values[i] *= g.values[i];
  return quad::integrate(ef) / (nf * ng);
}

}  // namespace

double quotient_reversed(const quad::GridFunction& f, const quad::GridFunction& g,
                         const Exponents& e) {
  if (!e.reversed()) throw ValidationError("quotient_reversed needs a reversed regime");
  return quotient_impl(f, g, e);
}

double quotient_poisson(const quad::GridFunction& f, const quad::GridFunction& g,
                        const Exponents& e) {
  if (e.reversed()) throw ValidationError("quotient_poisson needs a Poisson regime");
  return quotient_impl(f, g, e);
}

namespace {

// int_B |x - x^o|^s dx by the 1-D cap reduction: slicing by rho = |x - x^o|,
// the spherical cap has opening arccos(rho/2).
double ball_pole_integral(int n, double s) {
  static const quad::Rule1D gl = quad::gauss_legendre(24);
  static const quad::Rule1D gl_inner = quad::gauss_legendre(16);
  const int panels = 40;
  double total = 0.0;
  double hi = 2.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = (k + 1 == panels) ? 0.0 : hi * 0.5;
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double rho = c + half * gl.x[i];
      const double cap = std::acos(std::min(1.0, rho / 2.0));
      double inner = 0.0;  // int_0^cap sin^{n-2} psi dpsi
      for (std::size_t q = 0; q < gl_inner.x.size(); ++q) {
        const double psi = 0.5 * cap * (gl_inner.x[q] + 1.0);
        inner += 0.5 * cap * gl_inner.w[q] * std::pow(std::sin(psi), n - 2);
      }
      total += half * gl.w[i] * std::pow(rho, s + n - 1.0) * inner;
    }
    hi = lo;
  }
  return geom::unit_sphere_area(n - 1) * total;
}

// int_{dB} H(|z - y|)^s dy for a chordal profile H; graded toward t = 0.
double sphere_chord_integral(int n, const std::function<double(double)>& H, double s) {
  static const quad::Rule1D gl = quad::gauss_legendre(24);
  const int panels = 52;
  double total = 0.0;
  double hi = M_PI;
  for (int k = 0; k < panels; ++k) {
    const double lo = (k + 1 == panels) ? 0.0 : hi * 0.5;
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double t = c + half * gl.x[i];
      const double chord = 2.0 * std::sin(0.5 * t);
      total += half * gl.w[i] * std::pow(H(chord), s) * std::pow(std::sin(t), n - 2);
    }
    hi = lo;
  }
  return geom::unit_sphere_area(n - 1) * total;
}

ChainReport chain_impl(const quad::GridFunction& f, const quad::GridFunction& g, double a,
                       const Exponents& e, bool forward) {
  require_valid(e);
  check_sphere_function(f);
  check_ball_function(g);
  if (!f.nonnegative || !g.nonnegative)
    throw NonnegativityRequired("Young chains require nonnegative f, g");
  if (!(a > 0.0 && a < 1.0)) throw ValidationError("chain parameter a must be in (0,1)");

  const int n = e.n;
  const double kexp = forward ? -(e.n - e.alpha + 1.0) : e.alpha - e.n;
  const double kscale = forward ? 4.0 : 1.0;
  const ZonalKernel hker{kexp, false, kscale};

  ChainReport rep;
  // I = double integral of g f h
  {
    ExtensionOperator op(g.rule, hker);
    quad::GridFunction hf = op.extend(f);
    for (std::size_t i = 0; i < hf.size(); ++i) hf.values[i] *= g.values[i];
    rep.I = quad::integrate(hf);
  }

  // |f|_p^p and |g|_t^t as plain integrals
  auto power_integral = [](const quad::GridFunction& u, double q) {
    std::vector<double> terms(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
      double v = u.values[i];
      if (v == 0.0 && q < 1.0) v = 1e-300;
      terms[i] = u.rule->weights[i] * std::pow(v, q);
    }
    return pairwise_sum(terms);
  };
  const double fp = power_integral(f, e.p);
  const double gt = power_integral(g, e.t);

  // gamma_3
  const double inv_q = 2.0 - 1.0 / e.p - 1.0 / e.t;
  if (std::abs(inv_q) < 1e-14) {
    rep.factor_q = 1.0;  // q' = infinity, gamma_3 == 1
  } else {
    const double q = 1.0 / inv_q;
    const double qconj = q / (q - 1.0);
    rep.factor_q = std::pow(gt * fp, 1.0 / qconj);
  }

  // gamma_1: (int_B g^t(x) zonal_profile(kexp (1-a) p') dx)^{1/p'}
  {
    const double s = (1.0 - a) * e.p_conj;
    std::vector<double> prof(g.rule->r.size());
    for (std::size_t i = 0; i < prof.size(); ++i)
      prof[i] = std::pow(kscale, s) * kernels::zonal_profile(n, kexp * s, g.rule->r[i]);
    const std::size_t ns = g.rule->sphere->size();
    std::vector<double> terms(g.size());
    for (std::size_t i = 0; i < g.rule->r.size(); ++i)
      for (std::size_t j = 0; j < ns; ++j) {
        double v = g.values[i * ns + j];
        if (v == 0.0 && e.t < 1.0) v = 1e-300;
        terms[i * ns + j] = g.rule->weights[i * ns + j] * std::pow(v, e.t) * prof[i];
      }
    rep.factor_p = std::pow(pairwise_sum(terms), 1.0 / e.p_conj);
  }

  // gamma_2: (|f|_p^p * int_B h^{a t'}(x, x^o) dx)^{1/t'}
  const double pole_int = std::pow(kscale, a * e.t_conj) *
                          ball_pole_integral(n, kexp * a * e.t_conj);
  rep.factor_t = std::pow(fp * pole_int, 1.0 / e.t_conj);

  // rhs = |f|_p |g|_t |h(.,x^o)|_{a t'} |h_1(0,.)|_{(1-a) p'}
  auto h1 = [&](double chord) {
    if (forward) return chord > std::sqrt(2.0) ? 4.0 : 4.0 * std::pow(0.5 * chord, kexp);
    return chord > std::sqrt(2.0) ? 1.0 : std::pow(0.5 * chord, kexp);
  };
  const double s1n = (1.0 - a) * e.p_conj;
  const double h1_int = sphere_chord_integral(n, h1, s1n);
  const double h1_norm = std::pow(h1_int, 1.0 / s1n);
  const double h_norm = std::pow(pole_int, 1.0 / (a * e.t_conj));
  rep.rhs = std::pow(fp, 1.0 / e.p) * std::pow(gt, 1.0 / e.t) * h_norm * h1_norm;

  rep.product = rep.factor_q * rep.factor_p * rep.factor_t;
  rep.degenerate = !std::isfinite(rep.product) || rep.product == 0.0 || !std::isfinite(rep.I) ||
                   !std::isfinite(rep.rhs);
  if (forward) {
    rep.slack_chain = rep.product - rep.I;
    rep.slack_outer = rep.rhs - rep.product;
  } else {
    rep.slack_chain = rep.I - rep.product;
    rep.slack_outer = rep.product - rep.rhs;
  }
  return rep;
}

}  // namespace

ChainReport young_chain_reversed(const quad::GridFunction& f, const quad::GridFunction& g,
                                 double a, const Exponents& e) {
  if (e.regime != Regime::ReversedSubcritical)
    throw ValidationError("young_chain_reversed needs the reversed subcritical regime");
  return chain_impl(f, g, a, e, false);
}

ChainReport young_chain_forward(const quad::GridFunction& f, const quad::GridFunction& g,
                                double a, const Exponents& e) {
  if (e.regime != Regime::PoissonSubcritical)
    throw ValidationError("young_chain_forward needs the Poisson subcritical regime");
  return chain_impl(f, g, a, e, true);
}

namespace {

struct SplitMix {
  // splitmix64; keeps the random streams platform-independent
  std::uint64_t state;
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform() { return (next() >> 11) * 0x1.0p-53; }
  double normal() {
    const double u1 = std::max(uniform(), 1e-17), u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }
};

geom::Point random_direction(SplitMix& rng, int n) {
  geom::Point d = geom::Point::zero(n);
  double norm2 = 0.0;
  for (int c = 0; c < n; ++c) {
    d[c] = rng.normal();
    norm2 += d[c] * d[c];
  }
  return (1.0 / std::sqrt(norm2)) * d;
}

geom::Point random_ball_point(SplitMix& rng, int n) {
  const geom::Point dir = random_direction(rng, n);
  const double r = std::pow(rng.uniform(), 1.0 / n);
  return geom::ball_center(n) + r * dir;
}

geom::Point random_sphere_point(SplitMix& rng, int n) {
  return geom::ball_center(n) + random_direction(rng, n);
}

geom::Point radial_projection(const geom::Point& x) {
  const geom::Point c = geom::ball_center(x.dim());
  const geom::Point d = x - c;
  const double r = d.norm();
  if (r < 1e-15) {
    geom::Point north = c;
    north[x.dim() - 1] += 1.0;  // (z^o)^* = 0, the north pole
    return north;
  }
  return c + (1.0 / r) * d;
}

}  // namespace

double young_pointwise_reversed_min(const Exponents& e, int samples, std::uint64_t seed) {
  SplitMix rng{seed};
  const double kexp = e.alpha - e.n;
  double worst = std::numeric_limits<double>::infinity();
  for (int s = 0; s < samples; ++s) {
    const geom::Point x = random_ball_point(rng, e.n);
    const geom::Point y = random_sphere_point(rng, e.n);
    const geom::Point xs = radial_projection(x);
    const double h = std::pow(x.distance(y), kexp);
    const double chord = xs.distance(y);
    const double h1 = chord > std::sqrt(2.0) ? 1.0 : std::pow(0.5 * chord, kexp);
    worst = std::min(worst, h - h1);
  }
  return worst;
}

double young_pointwise_forward_min(const Exponents& e, int samples, std::uint64_t seed) {
  SplitMix rng{seed};
  const double s1 = e.n - e.alpha + 1.0;
  double worst = std::numeric_limits<double>::infinity();
  const geom::Point zo = geom::ball_center(e.n);
  for (int s = 0; s < samples; ++s) {
    const geom::Point x = random_ball_point(rng, e.n);
    const geom::Point y = random_sphere_point(rng, e.n);
    const geom::Point xs = radial_projection(x);
    const double d = x.distance(y);
    const double kernel = (1.0 - x.distance(zo) * x.distance(zo)) * std::pow(d, -(e.n + 2.0 - e.alpha));
    const double h = 4.0 * std::pow(d, -s1);
    const double chord = xs.distance(y);
    const double h1 = chord > std::sqrt(2.0) ? 4.0 : 4.0 * std::pow(0.5 * chord, -s1);
    worst = std::min(worst, std::min(h - kernel, h1 - h));
  }
  return worst;
}

HalfspaceExtension::HalfspaceExtension(std::function<double(const geom::Point&)> f,
                                       const Exponents& e, quad::RulePtr rule, HalfspacePath path,
                                       double truncation_radius)
    : f_(std::move(f)), e_(e), rule_(std::move(rule)), path_(path), radius_(truncation_radius) {
  require_valid(e);
  if (path_ == HalfspacePath::ConformalPullback) {
    if (rule_->domain.kind != geom::DomainKind::SphereBn)
      throw ValidationError("pullback path needs the sphere rule");
  } else if (rule_->domain.kind != geom::DomainKind::BoundaryHalfSpace) {
    throw ValidationError("direct path needs a truncated boundary rule");
  }
}

double HalfspaceExtension::operator()(const geom::Point& x) const {
  const int n = e_.n;
  const double kexp = e_.reversed() ? e_.alpha - n : -(n + 2.0 - e_.alpha);
  const double xn = x[n - 1];
  std::vector<double> terms(rule_->size());
  for (std::size_t j = 0; j < rule_->size(); ++j) {
    geom::Point y = geom::Point::zero(n);
    double w = rule_->weights[j];
    if (path_ == HalfspacePath::ConformalPullback) {
      const geom::Point zeta = rule_->point(j);
      y = geom::conformal_to_halfspace(zeta);
      y[n - 1] = 0.0;
      w *= geom::jacobian_weight(zeta, geom::JacobianRole::Boundary);
    } else {
      y = rule_->point(j);
      if (y.distance(geom::Point::zero(n)) > radius_) {
        terms[j] = 0.0;
        continue;
      }
    }
    const double base = dist_pow(x.distance(y) * x.distance(y), kexp);
    terms[j] = w * f_(y) * (e_.reversed() ? base : xn * base);
  }
  return pairwise_sum(terms);
}

quad::GridFunction random_lognormal(quad::RulePtr rule, std::uint64_t seed, int bumps,
                                    double amplitude) {
  if (rule->domain.kind != geom::DomainKind::SphereBn &&
      rule->domain.kind != geom::DomainKind::BallBn)
    throw ValidationError("random_lognormal expects a sphere or ball rule");
  const int n = rule->dim();
  SplitMix rng{seed ^ 0xa02b8c5717e3f9d1ULL};
  std::vector<geom::Point> centers;
  std::vector<double> widths, coeffs;
  for (int b = 0; b < bumps; ++b) {
    centers.push_back(random_direction(rng, n));
    widths.push_back(0.6 + 0.7 * rng.uniform());
    coeffs.push_back(amplitude * rng.normal());
  }
  const geom::Point zo = geom::ball_center(n);
  quad::GridFunction f;
  f.rule = rule;
  f.values.resize(rule->size());
  f.nonnegative = true;
  for (std::size_t i = 0; i < rule->size(); ++i) {
    const geom::Point rel = rule->point(i) - zo;
    double s = 0.0;
    for (int b = 0; b < bumps; ++b) {
      const double d2 = rel.distance(centers[static_cast<std::size_t>(b)]) *
                        rel.distance(centers[static_cast<std::size_t>(b)]);
      s += coeffs[static_cast<std::size_t>(b)] *
           std::exp(-d2 / (widths[static_cast<std::size_t>(b)] * widths[static_cast<std::size_t>(b)]));
    }
    f.values[i] = std::exp(s);
  }
  return f;
}

}  // namespace hlslab::ops
