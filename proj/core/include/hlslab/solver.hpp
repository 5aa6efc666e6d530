#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlslab/constants.hpp"

namespace hlslab::solver {

enum class InitKind { Constant, RandomPositive };

struct SolveConfig {
  double damping = 0.5;       // in (0, 1]
  double tol = 1e-10;         // relative sup-norm change stopping metric
  int max_iters = 300;
  InitKind init = InitKind::RandomPositive;
  std::uint64_t seed = 0;
  std::optional<double> b2_cap;  // monitored, never projected
};

struct IterRecord {
  double xi;      // |extend f|_{t'} at unit |f|_p
  double change;  // relative sup-norm change of the iterate
};

struct SolveResult {
  quad::GridFunction f;
  double xi_estimate = 0;
  double el_residual = 0;
  int iterations = 0;
  double symmetry_deficit = 0;
  double l2_value = 0;
  bool b2_cap_violated = false;
  double b2_cap_plus = 0;   // w_{n-1}^{1/p-1/2}, the stated cap bound
  double b2_cap_minus = 0;  // w_{n-1}^{1/2-1/p} = |const|_2 at unit |.|_p
  bool converged = false;
  std::vector<IterRecord> history;
};

struct SweepRecord {
  double p = 0;
  double t = 0;
  double xi = 0;
  int level = 0;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  double extrapolated = 0;
};

/// Damped fixed-point iteration of the subcritical Euler-Lagrange equation
/// f <- normalize((trace((extend f)^kappa))^theta) with |f|_p = 1 kept at
/// every step. Converges to the constant extremal; returns diagnostics.
/// Throws PositivityLoss after repeated positivity-floor hits and returns
/// the last iterate inside NoConvergence when max_iters is reached.
SolveResult solve_subcritical(const ops::Exponents& e, const SolveConfig& cfg, int level);

/// Max over grid reflections and azimuthal rotations of |f - f о sigma| / max f.
/// 0 for constants; the numerical stand-in for the symmetry propositions.
double symmetry_deficit(const quad::GridFunction& f);

/// Geometric approach p_k = p_crit (1 -+ 2^{-k}) with Richardson-extrapolated
/// limit. xi per step via the 1-D subcritical-constant pipeline.
SweepResult sweep_to_critical(int n, double alpha, kernels::KernelKind regime, int steps,
                              int level = 6);

/// Moving-spheres comparison kernel
///   K(y0,l;xi,eta) = xi_n/|xi-eta|^{n-alpha+2}
///                    - (l/|xi-y0|)^{n-alpha+2} xi_n/|xi^{y0,l}-eta|^{n-alpha+2}
/// sampled at xi, eta outside the lambda-ball around y0. Returns the minimum.
double ms_kernel_positivity(int n, double alpha, const geom::Point& y0, double lambda,
                            int samples, std::uint64_t seed = 12345);

}  // namespace hlslab::solver
