#pragma once

#include <vector>

#include "hlslab/geometry.hpp"

namespace hlslab::kernels {

enum class KernelKind { Reversed, PoissonType };

/// Validated kernel parameters. Reversed needs alpha > n; PoissonType needs
/// n >= 3 and 2 <= alpha < n. Construction throws ValidationError otherwise.
struct KernelSpec {
  KernelKind kind;
  int n;
  double alpha;
  KernelSpec(KernelKind kind, int n, double alpha);
};

/// K_1(x,y) = |x-y|^{alpha-n}.
double k1(const KernelSpec& spec, const geom::Point& x, const geom::Point& y);

/// K_2(x,y) = x_n / |x-y|^{n+2-alpha} for x in the half space, y on its
/// boundary. Throws SingularEvaluation when |x-y| is below machine scale.
double k2(const KernelSpec& spec, const geom::Point& x, const geom::Point& y);

/// Relative error of K_2 against -(1/(n-alpha)) d/dx_n K_1 by centered
/// differences with step h (K_1 evaluated at the same subcritical alpha).
double check_k2_derivative_identity(const KernelSpec& spec, const geom::Point& x,
                                    const geom::Point& y, double h);

/// |S^{n-2}| int_0^pi (1 + r^2 - 2 r cos t)^{expo/2} sin^{n-2} t dt.
/// The shared 1-D reduction behind every zonal sphere integral here;
/// evaluated by composite Gauss panels graded toward t = 0 so the peak at
/// r -> 1 stays resolved.
double zonal_profile(int n, double expo, double r);

/// Phi(r) = int_{dB^n} |xi - zeta|^{alpha-n} dzeta at |xi - z^o| = r; alpha > n.
double phi_radial(int n, double alpha, double r);

/// Psi(r) = (1-r^2) int_{dB^n} |xi - zeta|^{-(n-alpha+2)} dzeta, 2 <= alpha < n.
/// Throws BoundarySingularity at r = 1; evaluation is capped at 1 - 1e-8.
double psi_radial(int n, double alpha, double r);

/// Funk-Hecke multipliers for n = 3: lambda_l(r) = 2 pi int_{-1}^{1}
/// k(r,u) P_l(u) du, l = 0..lmax, where k(r,u) = scale * (1-r^2)^{pf} *
/// (1 + r^2 - 2 r u)^{expo/2}. lambda_0 equals the zonal profile.
std::vector<double> funk_hecke_multipliers(int lmax, double expo, bool poisson_factor,
                                           double scale, double r);

}  // namespace hlslab::kernels
