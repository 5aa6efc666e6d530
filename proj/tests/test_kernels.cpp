#include <doctest.h>

#include <cmath>
#include <random>

#include "hlslab/errors.hpp"
#include "hlslab/kernels.hpp"
#include "hlslab/quadrature.hpp"
#include "oracles.hpp"

using namespace hlslab;
using geom::Point;
using kernels::KernelKind;
using kernels::KernelSpec;
using oracle::kFourPi;

TEST_SUITE_BEGIN("kernels");

TEST_CASE("spec validity guards") {
  CHECK_THROWS_AS(KernelSpec(KernelKind::Reversed, 3, 3.0), ValidationError);
  CHECK_THROWS_AS(KernelSpec(KernelKind::Reversed, 3, 2.5), ValidationError);
  CHECK_THROWS_AS(KernelSpec(KernelKind::PoissonType, 3, 3.0), ValidationError);
  CHECK_THROWS_AS(KernelSpec(KernelKind::PoissonType, 3, 1.5), ValidationError);
  CHECK_THROWS_AS(KernelSpec(KernelKind::PoissonType, 2, 2.0), ValidationError);
  CHECK_NOTHROW(KernelSpec(KernelKind::Reversed, 3, 4.0));
  CHECK_NOTHROW(KernelSpec(KernelKind::PoissonType, 4, 3.0));
}

TEST_CASE("k1 values") {
  KernelSpec s34(KernelKind::Reversed, 3, 4.0);
  CHECK(kernels::k1(s34, Point{0, 0, 0}, Point{2, 0, 0}) == doctest::Approx(2.0));
  CHECK(kernels::k1(s34, Point{1, 1, 1}, Point{1, 1, 1}) == 0.0);
  KernelSpec s35(KernelKind::Reversed, 3, 5.0);
  CHECK(kernels::k1(s35, Point{0, 0, 0}, Point{3, 0, 0}) == doctest::Approx(9.0));
}

TEST_CASE("k2 values") {
  KernelSpec s(KernelKind::PoissonType, 3, 2.0);
  CHECK(kernels::k2(s, Point{0, 0, 1}, Point{0, 0, 0}) == doctest::Approx(1.0));
  CHECK(kernels::k2(s, Point{0, 0, 2}, Point{0, 0, 0}) == doctest::Approx(0.25));
  KernelSpec s4(KernelKind::PoissonType, 4, 3.0);
  CHECK(kernels::k2(s4, Point{0, 0, 0, 1}, Point{0, 0, 0, 0}) == doctest::Approx(1.0));
  CHECK_THROWS_AS((void)kernels::k2(s, Point{0, 0, 1e-15}, Point{0, 0, 0}), SingularEvaluation);
}

TEST_CASE("derivative identity against centered differences") {
  KernelSpec s(KernelKind::PoissonType, 3, 2.0);
  CHECK(kernels::check_k2_derivative_identity(s, Point{0, 0, 1}, Point{0, 0, 0}, 1e-5) <= 1e-8);

  // second-order convergence: error ratio ~ 1e4 between h = 1e-3 and 1e-5
  // (measured where truncation still dominates the cancellation floor)
  const Point x{0, 0, 1}, y{0, 0, 0};
  const double e3 = kernels::check_k2_derivative_identity(s, x, y, 1e-3);
  const double e5 = kernels::check_k2_derivative_identity(s, x, y, 1e-5);
  CHECK(e3 / e5 == doctest::Approx(1e4).epsilon(0.05));

  // precondition boundary: close pair still reports a finite value
  const double h = 1e-5;
  const Point xc{0, 0, 10 * h};
  CHECK(std::isfinite(kernels::check_k2_derivative_identity(s, xc, Point{0, 0, 0}, h)));

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  double worst = 0.0;
  for (int it = 0; it < 100; ++it) {
    Point xr{U(rng), U(rng), 0.3 + std::abs(U(rng))};
    Point yr{U(rng), U(rng), 0.0};
    worst = std::max(worst, kernels::check_k2_derivative_identity(s, xr, yr, 1e-5));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("phi_radial closed form, alpha = 4") {
  CHECK(kernels::phi_radial(3, 4.0, 0.0) == doctest::Approx(kFourPi).epsilon(1e-12));
  CHECK(kernels::phi_radial(3, 4.0, 0.5) == doctest::Approx(13.0 * M_PI / 3.0).epsilon(1e-12));
  CHECK(kernels::phi_radial(3, 4.0, 1.0) == doctest::Approx(16.0 * M_PI / 3.0).epsilon(1e-12));
  double worst = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double r = i / 100.0;
    const double want = kFourPi + kFourPi / 3.0 * r * r;
    worst = std::max(worst, std::abs(kernels::phi_radial(3, 4.0, r) - want) / want);
  }
  CHECK(worst <= 1e-10);
  CHECK_THROWS_AS((void)kernels::phi_radial(3, 3.0, 0.5), ValidationError);
}

TEST_CASE("phi_radial monotone in r for alpha > n") {
  double prev = kernels::phi_radial(3, 4.5, 0.0);
  for (int i = 1; i <= 100; ++i) {
    const double cur = kernels::phi_radial(3, 4.5, i / 100.0);
    CHECK(cur > prev);
    prev = cur;
  }
}

TEST_CASE("psi_radial: harmonic case is constant") {
  CHECK(kernels::psi_radial(3, 2.0, 0.0) == doctest::Approx(kFourPi).epsilon(1e-12));
  for (int i = 0; i < 100; ++i) {
    const double r = i / 100.0;
    CHECK(kernels::psi_radial(3, 2.0, r) == doctest::Approx(kFourPi).epsilon(1e-10));
  }
  CHECK(kernels::psi_radial(3, 2.0, 1.0 - 1e-9) == doctest::Approx(kFourPi).epsilon(1e-6));
  CHECK_THROWS_AS((void)kernels::psi_radial(3, 2.0, 1.0), BoundarySingularity);
}

TEST_CASE("psi_radial n = 4 against full-dimension quadrature") {
  const double r = 0.5;
  const geom::Point zo = geom::ball_center(4);
  geom::Point xi = zo;
  xi[3] += r;  // radius r along the axis
  const double full = oracle::sphere_integral_graded(4, [&](const Point& zeta) {
    return std::pow(xi.distance(zeta), -3.0);
  }, Point{0, 0, 0, 1});
  const double want = (1.0 - r * r) * full;
  CHECK(kernels::psi_radial(4, 3.0, r) == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("rotational reduction matches full-dimension quadrature") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(-1.0, 1.0);
  const geom::Point zo = geom::ball_center(3);
  double worst = 0.0;
  for (int it = 0; it < 100; ++it) {
    Point dir{U(rng), U(rng), U(rng)};
    const double nr = dir.norm();
    if (nr < 1e-3) continue;
    const double r = std::pow(std::abs(U(rng)), 1.0 / 3.0);
    const Point xi = zo + (r / nr) * dir;
    const double full = oracle::sphere_integral_graded(
        3, [&](const Point& zeta) { return xi.distance(zeta); }, (1.0 / nr) * dir);
    const double red = kernels::phi_radial(3, 4.0, r);
    worst = std::max(worst, std::abs(full - red) / red);
  }
  CHECK(worst <= 1e-7);
}

TEST_CASE("Funk-Hecke multipliers: l = 0 is the zonal profile, Poisson closed form") {
  for (double r : {0.1, 0.5, 0.9, 0.995}) {
    auto lam = kernels::funk_hecke_multipliers(20, -3.0, true, 1.0, r);
    CHECK(lam[0] == doctest::Approx(kernels::psi_radial(3, 2.0, r)).epsilon(1e-10));
    // alpha = 2: lambda_l = 4 pi r^l
    for (int l = 0; l <= 20; ++l)
      CHECK(lam[static_cast<std::size_t>(l)] ==
            doctest::Approx(kFourPi * std::pow(r, l)).epsilon(1e-8).scale(1.0));
    auto lamr = kernels::funk_hecke_multipliers(8, 1.0, false, 1.0, r);
    CHECK(lamr[0] == doctest::Approx(kernels::phi_radial(3, 4.0, r)).epsilon(1e-12));
  }
}

TEST_SUITE_END();
