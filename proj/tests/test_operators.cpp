#include <doctest.h>

#include <cmath>

#include "hlslab/errors.hpp"
#include "hlslab/kernels.hpp"
#include "hlslab/operators.hpp"
#include "hlslab/parallel.hpp"
#include "oracles.hpp"

using namespace hlslab;
using geom::Point;
using oracle::kFourPi;

TEST_SUITE_BEGIN("operators");

namespace {

quad::GridFunction radial_modulated(quad::RulePtr ball, std::uint64_t seed) {
  auto g = ops::random_lognormal(ball, seed);
  const std::size_t ns = ball->sphere->size();
  for (std::size_t i = 0; i < ball->r.size(); ++i)
    for (std::size_t j = 0; j < ns; ++j)
      g.values[i * ns + j] *= 1.0 + 0.5 * std::sin(2.0 + 3.0 * ball->r[i]);
  return g;
}

}  // namespace

TEST_CASE("extension of constants hits the zonal profiles") {
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, 3);
  auto one = quad::GridFunction::constant(ball->sphere, 1.0);
  auto ef = ops::extend_ball(one, e, ball);
  const std::size_t ns = ball->sphere->size();
  for (std::size_t i = 0; i < ball->r.size(); ++i) {
    const double want = kernels::phi_radial(3, 4.0, ball->r[i]);
    for (std::size_t j = 0; j < ns; ++j)
      CHECK(ef.values[i * ns + j] == doctest::Approx(want).epsilon(1e-8));
  }

  const auto ep = ops::Exponents::poisson_subcritical(3, 2.0, 5.0, 1.25);
  auto bp = quad::ball_rule(3, 3, quad::GradingDescriptor{});
  auto onep = quad::GridFunction::constant(bp->sphere, 1.0);
  auto pf = ops::extend_ball(onep, ep, bp);
  for (std::size_t i = 0; i < bp->r.size(); ++i) {
    const double want = kernels::psi_radial(3, 2.0, bp->r[i]);
    for (std::size_t j = 0; j < bp->sphere->size(); ++j)
      CHECK(pf.values[i * bp->sphere->size() + j] == doctest::Approx(want).epsilon(1e-8));
  }

  auto zero = quad::GridFunction::constant(ball->sphere, 0.0);
  auto ez = ops::extend_ball(zero, e, ball);
  for (double v : ez.values) CHECK(v == 0.0);
}

TEST_CASE("extension requires the nonnegativity flag") {
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, 2);
  auto f = quad::GridFunction::constant(ball->sphere, 1.0);
  f.nonnegative = false;
  CHECK_THROWS_AS((void)ops::extend_ball(f, e, ball), NonnegativityRequired);
}

TEST_CASE("linearity and positivity of the extension") {
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, 2);
  auto f1 = ops::random_lognormal(ball->sphere, 21);
  auto f2 = ops::random_lognormal(ball->sphere, 22);
  auto sum = f1;
  for (std::size_t j = 0; j < sum.size(); ++j) sum.values[j] += f2.values[j];
  auto e1 = ops::extend_ball(f1, e, ball);
  auto e2 = ops::extend_ball(f2, e, ball);
  auto es = ops::extend_ball(sum, e, ball);
  for (std::size_t i = 0; i < es.size(); ++i) {
    CHECK(es.values[i] == doctest::Approx(e1.values[i] + e2.values[i]).epsilon(1e-12));
    CHECK(e1.values[i] > 0.0);
  }
}

TEST_CASE("trace is the exact discrete adjoint") {
  for (bool poisson : {false, true}) {
    const auto e = poisson ? ops::Exponents::poisson_subcritical(3, 2.0, 5.0, 1.25)
                           : ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
    auto ball = poisson ? quad::ball_rule(3, 2, quad::GradingDescriptor{}) : quad::ball_rule(3, 2);
    ops::ExtensionOperator op(ball, ops::extension_kernel(e));
    for (int pair = 0; pair < 100; ++pair) {
      auto f = ops::random_lognormal(ball->sphere, 100 + static_cast<std::uint64_t>(pair));
      auto g = radial_modulated(ball, 200 + static_cast<std::uint64_t>(pair));
      auto ef = op.extend(f);
      double lhs = 0.0;
      for (std::size_t i = 0; i < ef.size(); ++i)
        lhs += ball->weights[i] * ef.values[i] * g.values[i];
      auto tg = op.trace(g);
      double rhs = 0.0;
      for (std::size_t j = 0; j < f.size(); ++j)
        rhs += ball->sphere->weights[j] * tg.values[j] * f.values[j];
      CHECK(std::abs(lhs - rhs) / std::abs(lhs) <= 1e-6);
    }
  }
}

TEST_CASE("spectral and direct evaluation paths agree") {
  // reversed kernel: both paths resolve a smooth random field
  const auto er = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, 2);
  ops::ExtensionOperator spec_r(ball, ops::extension_kernel(er), ops::EvalPath::Spectral);
  ops::ExtensionOperator dir_r(ball, ops::extension_kernel(er), ops::EvalPath::Direct);
  auto f = ops::random_lognormal(ball->sphere, 7);
  auto a = spec_r.extend(f);
  auto b = dir_r.extend(f);
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a.values[i] - b.values[i]) / std::abs(a.values[i]));
  CHECK(worst <= 1e-5);
  auto g = ops::random_lognormal(ball, 9);
  auto ta = spec_r.trace(g);
  auto tb = dir_r.trace(g);
  for (std::size_t j = 0; j < ta.size(); ++j)
    CHECK(std::abs(ta.values[j] - tb.values[j]) / std::abs(ta.values[j]) <= 1e-5);

  // Poisson kernel: the spectral path reproduces the exact degree-1
  // response 4 pi (1 + r u); the direct path cannot resolve the boundary
  // concentration at this level, which is why spectral is the default
  const auto ep = ops::Exponents::poisson_subcritical(3, 2.0, 5.0, 1.25);
  auto bp = quad::ball_rule(3, 2, quad::GradingDescriptor{});
  ops::ExtensionOperator spec_p(bp, ops::extension_kernel(ep), ops::EvalPath::Spectral);
  ops::ExtensionOperator dir_p(bp, ops::extension_kernel(ep), ops::EvalPath::Direct);
  const geom::Point zo = geom::ball_center(3);
  auto lin = quad::GridFunction::sample(bp->sphere, [&](const Point& z) {
    return 1.0 + (z[2] - zo[2]);
  }, true);
  auto pl = spec_p.extend(lin);
  const std::size_t ns = bp->sphere->size();
  for (std::size_t i = 0; i < bp->r.size(); ++i)
    for (std::size_t j = 0; j < ns; ++j) {
      const double u = bp->sphere->point(j)[2] - zo[2];
      const double want = kFourPi * (1.0 + bp->r[i] * u);
      CHECK(pl.values[i * ns + j] == doctest::Approx(want).epsilon(1e-10));
    }

  // and on constants both paths go through the identical zonal profile
  auto c = quad::GridFunction::constant(bp->sphere, 2.0);
  auto ca = spec_p.extend(c), cb = dir_p.extend(c);
  for (std::size_t i = 0; i < ca.size(); ++i)
    CHECK(ca.values[i] == doctest::Approx(cb.values[i]).epsilon(1e-11));
}

TEST_CASE("operator application is deterministic across worker counts") {
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, 2);
  auto f = ops::random_lognormal(ball->sphere, 3);
  set_worker_count(1);
  ops::ExtensionOperator op1(ball, ops::extension_kernel(e));
  auto a = op1.extend(f);
  set_worker_count(2);
  ops::ExtensionOperator op2(ball, ops::extension_kernel(e));
  auto b = op2.extend(f);
  set_worker_count(0);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a.values[i] == b.values[i]);
}

TEST_CASE("lp functional") {
  auto sp = quad::sphere_rule(3, 2);
  auto c = quad::GridFunction::constant(sp, 3.0);
  CHECK(ops::lp_functional(c, 0.7) == doctest::Approx(3.0 * std::pow(kFourPi, 1.0 / 0.7)));
  CHECK(ops::lp_functional(c, 2.0) == doctest::Approx(3.0 * std::sqrt(kFourPi)));
  auto ball = quad::ball_rule(3, 2);
  auto cb = quad::GridFunction::constant(ball, 1.0);
  CHECK(ops::lp_functional(cb, 2.0) == doctest::Approx(std::sqrt(kFourPi / 3.0)));
  // homogeneity
  auto f = ops::random_lognormal(sp, 5);
  const double n1 = ops::lp_functional(f, 0.4);
  for (double& v : f.values) v *= 2.5;
  CHECK(ops::lp_functional(f, 0.4) == doctest::Approx(2.5 * n1).epsilon(1e-12));
  // negative values under fractional powers are rejected
  f.values[0] = -1.0;
  CHECK_THROWS_AS((void)ops::lp_functional(f, 0.4), NegativeValueUnderFractionalPower);
  CHECK_THROWS_AS((void)ops::lp_functional(f, 0.0), ValidationError);
}

TEST_CASE("reversed quotient at constants matches the radial oracle") {
  const auto e = ops::Exponents::reversed_critical(3, 4.0);
  auto ball = quad::ball_rule(3, 3);
  auto f = quad::GridFunction::constant(ball->sphere, 1.0);
  auto g = quad::GridFunction::constant(ball, 1.0);
  const double q = ops::quotient_reversed(f, g, e);
  CHECK(q == doctest::Approx(oracle::kQuotientOnes_rev_n3a4).epsilon(1e-10));

  // degree-zero homogeneity
  for (double& v : f.values) v *= 3.0;
  for (double& v : g.values) v *= 0.25;
  CHECK(ops::quotient_reversed(f, g, e) == doctest::Approx(q).epsilon(1e-12));
}

TEST_CASE("optimal-g reduction attains the norm quotient") {
  const auto e = ops::Exponents::reversed_critical(3, 4.0);
  auto ball = quad::ball_rule(3, 3);
  auto f = quad::GridFunction::constant(ball->sphere, 1.0);
  auto ef = ops::extend_ball(f, e, ball);
  auto g = ef;
  for (double& v : g.values) v = std::pow(v, e.t_conj - 1.0);
  const double q = ops::quotient_reversed(f, g, e);
  const double norm_quotient = ops::lp_functional(ef, e.t_conj) / ops::lp_functional(f, e.p);
  CHECK(std::abs(q - norm_quotient) / norm_quotient <= 1e-6);
  CHECK(norm_quotient == doctest::Approx(oracle::kCe1_n3a4).epsilon(1e-8));
}

TEST_CASE("poisson quotient at constants equals the sharp constant") {
  const auto e = ops::Exponents::poisson_critical(3, 2.0);
  auto ball = quad::ball_rule(3, 3, quad::GradingDescriptor{});
  auto f = quad::GridFunction::constant(ball->sphere, 1.0);
  auto g = quad::GridFunction::constant(ball, 1.0);
  // Psi is constant at alpha = 2, so the constant pair is extremal here
  CHECK(ops::quotient_poisson(f, g, e) == doctest::Approx(oracle::kCe2_n3a2).epsilon(1e-9));
}

TEST_CASE("random poisson quotients stay below the sharp constant") {
  const auto e = ops::Exponents::poisson_critical(3, 2.0);
  auto ball = quad::ball_rule(3, 2, quad::GradingDescriptor{});
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    auto f = ops::random_lognormal(ball->sphere, 500 + static_cast<std::uint64_t>(s));
    auto g = radial_modulated(ball, 900 + static_cast<std::uint64_t>(s));
    worst = std::max(worst, ops::quotient_poisson(f, g, e) / oracle::kCe2_n3a2);
  }
  CHECK(worst <= 1.0 + 1e-4);
}

TEST_CASE("zero denominators are rejected") {
  const auto e = ops::Exponents::reversed_critical(3, 4.0);
  auto ball = quad::ball_rule(3, 1);
  auto f = quad::GridFunction::constant(ball->sphere, 0.0);
  auto g = quad::GridFunction::constant(ball, 1.0);
  CHECK_THROWS_AS((void)ops::quotient_reversed(f, g, e), ZeroDenominator);
}

TEST_CASE("reversed Young chain holds with positive slack") {
  const auto e = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  auto ball = quad::ball_rule(3, 3);
  auto f = quad::GridFunction::constant(ball->sphere, 1.0);
  auto g = quad::GridFunction::constant(ball, 1.0);
  const auto rep = ops::young_chain_reversed(f, g, 0.5, e);
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.slack_chain > 0.0);
  CHECK(rep.slack_outer > 0.0);
  CHECK(rep.I >= rep.product);
  CHECK(rep.product >= rep.rhs);

  auto fr = ops::random_lognormal(ball->sphere, 31);
  auto gr = radial_modulated(ball, 32);
  const auto rep2 = ops::young_chain_reversed(fr, gr, 0.5, e);
  CHECK(rep2.slack_chain > 0.0);
  CHECK(rep2.slack_outer > 0.0);
}

TEST_CASE("forward Young chain holds at the acceptance exponents") {
  const auto e = ops::Exponents::poisson_subcritical(3, 2.0, 5.0, 1.25);
  auto ball = quad::ball_rule(3, 3, quad::GradingDescriptor{});
  auto f = quad::GridFunction::constant(ball->sphere, 1.0);
  auto g = quad::GridFunction::constant(ball, 1.0);
  const double a = (3.0 - 2.0) / (2.0 * (3.0 - 2.0 + 1.0));
  const auto rep = ops::young_chain_forward(f, g, a, e);
  CHECK_FALSE(rep.degenerate);
  CHECK(rep.slack_chain >= 0.0);
  CHECK(rep.slack_outer >= 0.0);
  // q' = infinity here: gamma_3 collapses to 1
  CHECK(rep.factor_q == 1.0);

  auto z = quad::GridFunction::constant(ball->sphere, 0.0);
  const auto repz = ops::young_chain_forward(z, g, a, e);
  CHECK(repz.I == 0.0);
  CHECK(repz.degenerate);
}

TEST_CASE("pointwise kernel bounds hold on random samples") {
  const auto er = ops::Exponents::reversed_subcritical(3, 4.0, 0.7, 0.8);
  CHECK(ops::young_pointwise_reversed_min(er, 10000, 77) >= 0.0);
  const auto ep = ops::Exponents::poisson_subcritical(3, 2.0, 5.0, 1.25);
  CHECK(ops::young_pointwise_forward_min(ep, 10000, 78) >= 0.0);
}

TEST_CASE("chordal norm helper is rotation invariant") {
  // the chain evaluates |h_1(z, .)| through the 1-D chord reduction, which
  // is independent of z by construction; cross-check the reduction against
  // a raw grid quadrature at a loose tolerance (the integrand is weakly
  // singular at the base point)
  const double pconj = 0.7 / (0.7 - 1.0);
  const double s = 0.5 * pconj;  // (1-a) p' at a = 1/2
  auto h1 = [](double chord) {
    return chord > std::sqrt(2.0) ? 1.0 : std::pow(0.5 * chord, 1.0);
  };
  auto reduced = [&](const Point&) {
    static const quad::Rule1D gl = quad::gauss_legendre(24);
    double total = 0.0, hi = M_PI;
    for (int k = 0; k < 50; ++k) {
      const double lo = (k + 1 == 50) ? 0.0 : hi * 0.5;
      const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
      for (std::size_t i = 0; i < gl.x.size(); ++i) {
        const double t = c + half * gl.x[i];
        total += half * gl.w[i] * std::pow(h1(2.0 * std::sin(0.5 * t)), s) * std::sin(t);
      }
      hi = lo;
    }
    return 2.0 * M_PI * total;
  };
  const Point z1{0, 0, 0};
  Point z2{0.6, 0.0, -1.8};  // another sphere point
  CHECK(std::abs(reduced(z1) - reduced(z2)) <= 1e-8);

  auto sp = quad::sphere_rule(3, 5);
  double direct = 0.0;
  for (std::size_t j = 0; j < sp->size(); ++j) {
    const double chord = sp->point(j).distance(z1);
    if (chord < 1e-12) continue;
    direct += sp->weights[j] * std::pow(h1(chord), s);
  }
  // the raw grid sum converges only algebraically into the weak point
  // singularity; 5e-2 at this level, tightening slowly with refinement
  CHECK(std::abs(direct - reduced(z1)) / reduced(z1) <= 5e-2);
}

TEST_CASE("half-space extension: pullback against the truncated direct path") {
  const auto e = ops::Exponents::reversed_critical(3, 4.0);
  const auto fam = [](const Point& y) {
    return std::pow(y.norm_squared() + 1.0, -2.5);
  };
  ops::HalfspaceExtension pullback(fam, e, quad::sphere_rule(3, 4),
                                   ops::HalfspacePath::ConformalPullback);
  ops::HalfspaceExtension direct(fam, e, quad::boundary_halfspace_rule_truncated(3, 4, 1e3),
                                 ops::HalfspacePath::DirectTruncated);
  CHECK_FALSE(pullback.tail_truncation_warning());
  CHECK(direct.tail_truncation_warning());
  for (const Point& x : {Point{0, 0, 1}, Point{0.5, -0.3, 0.4}, Point{2, 1, 3}}) {
    const double a = pullback(x);
    const double b = direct(x);
    CHECK(std::abs(a - b) / std::abs(a) <= 1e-3);
  }

  // Poisson transported evaluation decreases along the vertical axis
  const auto ep = ops::Exponents::poisson_critical(3, 2.0);
  const auto famp = [](const Point& y) { return std::pow(y.norm_squared() + 1.0, -0.5); };
  ops::HalfspaceExtension pext(famp, ep, quad::sphere_rule(3, 4),
                               ops::HalfspacePath::ConformalPullback);
  double prev = pext(Point{0, 0, 1.0});
  for (double xn : {1.5, 2.0, 3.0, 5.0}) {
    const double cur = pext(Point{0, 0, xn});
    CHECK(cur < prev);
    prev = cur;
  }

  // zero data extends to zero
  ops::HalfspaceExtension zero([](const Point&) { return 0.0; }, e, quad::sphere_rule(3, 2),
                               ops::HalfspacePath::ConformalPullback);
  CHECK(zero(Point{0, 0, 1}) == 0.0);
}

TEST_CASE("random field is reproducible and positive") {
  auto sp = quad::sphere_rule(3, 2);
  auto a = ops::random_lognormal(sp, 99);
  auto b = ops::random_lognormal(sp, 99);
  for (std::size_t j = 0; j < a.size(); ++j) {
    CHECK(a.values[j] == b.values[j]);
    CHECK(a.values[j] > 0.0);
  }
  auto c = ops::random_lognormal(sp, 100);
  bool different = false;
  for (std::size_t j = 0; j < a.size(); ++j) different = different || a.values[j] != c.values[j];
  CHECK(different);
}

TEST_SUITE_END();
