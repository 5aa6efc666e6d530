#include "hlslab/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "hlslab/errors.hpp"
#include "hlslab/quadrature.hpp"

namespace hlslab::kernels {

KernelSpec::KernelSpec(KernelKind kind_, int n_, double alpha_) : kind(kind_), n(n_), alpha(alpha_) {
  if (n < 2) throw ValidationError("kernel dimension must be >= 2");
  if (kind == KernelKind::Reversed && !(alpha > n))
    throw ValidationError("reversed kernel requires alpha > n");
  if (kind == KernelKind::PoissonType && !(n >= 3 && alpha >= 2.0 && alpha < n))
    throw ValidationError("Poisson-type kernel requires n >= 3 and 2 <= alpha < n");
}

double k1(const KernelSpec& spec, const geom::Point& x, const geom::Point& y) {
  const double d = x.distance(y);
  return std::pow(d, spec.alpha - spec.n);
}

double k2(const KernelSpec& spec, const geom::Point& x, const geom::Point& y) {
  if (spec.kind != KernelKind::PoissonType)
    throw ValidationError("k2 is defined for the Poisson-type kernel");
  const double d = x.distance(y);
  if (d < 1e-14) throw SingularEvaluation("k2 evaluated at coincident points");
  const double xn = x[x.dim() - 1];
  return xn * std::pow(d, -(spec.n + 2.0 - spec.alpha));
}

double check_k2_derivative_identity(const KernelSpec& spec, const geom::Point& x,
                                    const geom::Point& y, double h) {
  const int last = x.dim() - 1;
  geom::Point xp = x, xm = x;
  xp[last] += h;
  xm[last] -= h;
  const double dk1 = (k1(spec, xp, y) - k1(spec, xm, y)) / (2.0 * h);
  const double target = k2(spec, x, y);
  return std::abs(target + dk1 / (spec.n - spec.alpha)) / target;
}

namespace {

}  // namespace

double zonal_profile(int n, double expo, double r) {
  // Composite Gauss panels on [0, pi], geometric toward t = 0 where the
  // integrand peaks as r -> 1 (peak width ~ 1-r in t).
  if (n < 3) throw UnsupportedDimension("zonal profile needs n >= 3");
  static const quad::Rule1D gl = quad::gauss_legendre(24);
  const double delta = std::max(1.0 - r, 1e-12);
  const int panels = std::clamp(static_cast<int>(std::ceil(std::log2(M_PI / delta))) + 6, 12, 64);
  double hi = M_PI;
  double total = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double lo = (k + 1 == panels) ? 0.0 : hi * 0.5;
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    double acc = 0.0;
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double t = c + half * gl.x[i];
      const double sh = std::sin(0.5 * t);
      // stable form of 1 + r^2 - 2 r cos t; the naive one cancels at r -> 1
      const double d2 = (1.0 - r) * (1.0 - r) + 4.0 * r * sh * sh;
      acc += gl.w[i] * std::pow(d2, 0.5 * expo) * std::pow(std::sin(t), n - 2);
    }
    total += half * acc;
    hi = lo;
  }
  return geom::unit_sphere_area(n - 1) * total;
}

double phi_radial(int n, double alpha, double r) {
  if (!(alpha > n)) throw ValidationError("phi_radial requires alpha > n");
  if (r < 0.0 || r > 1.0) throw ValidationError("phi_radial requires r in [0,1]");
  return zonal_profile(n, alpha - n, r);
}

double psi_radial(int n, double alpha, double r) {
  if (!(n >= 3 && alpha >= 2.0 && alpha < n))
    throw ValidationError("psi_radial requires n >= 3 and 2 <= alpha < n");
  if (r >= 1.0) throw BoundarySingularity("psi_radial is singular at r = 1");
  if (r < 0.0) throw ValidationError("psi_radial requires r in [0,1)");
  const double reval = std::min(r, 1.0 - 1e-8);
  return (1.0 - reval) * (1.0 + reval) * zonal_profile(n, -(n + 2.0 - alpha), reval);
}

std::vector<double> funk_hecke_multipliers(int lmax, double expo, bool poisson_factor,
                                           double scale, double r) {
  // n = 3 only: lambda_l(r) = 2 pi int k(r,u) P_l(u) du. Panels in w = 1-u
  // geometric toward 0; the kernel's peak width in u is ~(1-r)^2.
  static const quad::Rule1D gl = quad::gauss_legendre(24);
  const double delta = std::max((1.0 - r) * (1.0 - r), 1e-15);
  const int panels = std::clamp(static_cast<int>(std::ceil(std::log2(2.0 / delta))) + 6, 14, 70);
  std::vector<double> lam(static_cast<std::size_t>(lmax) + 1, 0.0);
  std::vector<double> P(static_cast<std::size_t>(lmax) + 1);
  const double pref = scale * (poisson_factor ? (1.0 - r) * (1.0 + r) : 1.0);
  double hi = 2.0;
  for (int kpan = 0; kpan < panels; ++kpan) {
    const double lo = (kpan + 1 == panels) ? 0.0 : hi * 0.5;
    const double c = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t i = 0; i < gl.x.size(); ++i) {
      const double w = c + half * gl.x[i];  // w = 1 - u
      const double u = 1.0 - w;
      const double d2 = (1.0 - r) * (1.0 - r) + 2.0 * r * w;
      const double kval = half * gl.w[i] * pref * std::pow(d2, 0.5 * expo);
      P[0] = 1.0;
      if (lmax >= 1) P[1] = u;
      for (int l = 2; l <= lmax; ++l)
        P[static_cast<std::size_t>(l)] = ((2.0 * l - 1.0) * u * P[static_cast<std::size_t>(l - 1)] -
                                          (l - 1.0) * P[static_cast<std::size_t>(l - 2)]) /
                                         l;
      for (int l = 0; l <= lmax; ++l) lam[static_cast<std::size_t>(l)] += kval * P[static_cast<std::size_t>(l)];
    }
    hi = lo;
  }
  for (double& v : lam) v *= 2.0 * M_PI;
  return lam;
}

}  // namespace hlslab::kernels
