#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlslab/kernels.hpp"

namespace hlslab::ops {

enum class Regime { ReversedSubcritical, ReversedCritical, PoissonSubcritical, PoissonCritical };

/// Full exponent bookkeeping for one inequality instance. Built by the
/// factories below; validate_exponents() checks the regime invariants.
struct Exponents {
  int n = 0;
  double alpha = 0;
  double p = 0, t = 0;
  double p_conj = 0, t_conj = 0;     // p' = p/(p-1), t' = t/(t-1)
  double kappa = 0;                  // t' - 1
  double theta = 0;                  // 1/(p-1)
  double s1 = 0, s2 = 0;             // transformed half-space system weights
  std::optional<double> s1_primed;   // reversed only: n+alpha-2 - 2(n-1)/p
  std::optional<double> s2_primed;   // reversed only: n+alpha   - 2n/t
  Regime regime = Regime::ReversedSubcritical;

  static double critical_p(Regime regime, int n, double alpha);
  static double critical_t(int n, double alpha);

  static Exponents reversed_critical(int n, double alpha);
  static Exponents reversed_subcritical(int n, double alpha, double p, double t);
  static Exponents poisson_critical(int n, double alpha);
  static Exponents poisson_subcritical(int n, double alpha, double p, double t);

  bool reversed() const {
    return regime == Regime::ReversedSubcritical || regime == Regime::ReversedCritical;
  }
  bool critical() const {
    return regime == Regime::ReversedCritical || regime == Regime::PoissonCritical;
  }
  kernels::KernelSpec kernel_spec() const;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
  /// Reversed regimes only: whether the general exponent-region inequality
  /// 1 - (n-1)/(n-alpha) (1 - 1/p) < n/(n-alpha) (1 - 1/t) holds.
  std::optional<bool> general_region_ok;
};

/// Checks the regime invariants; returns structured violations, never throws.
ValidationReport validate_exponents(const Exponents& e);

/// Throws ValidationError when validate_exponents reports violations.
void require_valid(const Exponents& e);

}  // namespace hlslab::ops
