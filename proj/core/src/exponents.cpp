#include "hlslab/exponents.hpp"

#include <cmath>
#include <sstream>

#include "hlslab/errors.hpp"

namespace hlslab::ops {

namespace {
constexpr double kTol = 1e-12;

double conj(double q) { return q / (q - 1.0); }

Exponents build(Regime regime, int n, double alpha, double p, double t) {
  Exponents e;
  e.n = n;
  e.alpha = alpha;
  e.p = p;
  e.t = t;
  e.p_conj = conj(p);
  e.t_conj = conj(t);
  e.kappa = e.t_conj - 1.0;
  e.theta = 1.0 / (p - 1.0);
  e.regime = regime;
  if (regime == Regime::ReversedSubcritical || regime == Regime::ReversedCritical) {
    e.s1 = n + alpha - 2.0 - (n - alpha) / (p - 1.0);
    e.s2 = (alpha - n) * e.t_conj + 2.0 * n;
    e.s1_primed = n + alpha - 2.0 - 2.0 * (n - 1.0) / p;
    e.s2_primed = n + alpha - 2.0 * n / t;
  } else {
    e.s1 = n + alpha - 4.0 - 2.0 * (n - 1.0) / p;
    e.s2 = n + alpha - 2.0 * n / t;
  }
  return e;
}
}  // namespace

double Exponents::critical_p(Regime regime, int n, double alpha) {
  const bool rev = regime == Regime::ReversedSubcritical || regime == Regime::ReversedCritical;
  return rev ? 2.0 * (n - 1.0) / (n + alpha - 2.0) : 2.0 * (n - 1.0) / (n + alpha - 4.0);
}

double Exponents::critical_t(int n, double alpha) { return 2.0 * n / (n + alpha); }

Exponents Exponents::reversed_critical(int n, double alpha) {
  return build(Regime::ReversedCritical, n, alpha, critical_p(Regime::ReversedCritical, n, alpha),
               critical_t(n, alpha));
}

Exponents Exponents::reversed_subcritical(int n, double alpha, double p, double t) {
  return build(Regime::ReversedSubcritical, n, alpha, p, t);
}

Exponents Exponents::poisson_critical(int n, double alpha) {
  return build(Regime::PoissonCritical, n, alpha, critical_p(Regime::PoissonCritical, n, alpha),
               critical_t(n, alpha));
}

Exponents Exponents::poisson_subcritical(int n, double alpha, double p, double t) {
  return build(Regime::PoissonSubcritical, n, alpha, p, t);
}

kernels::KernelSpec Exponents::kernel_spec() const {
  return kernels::KernelSpec(
      reversed() ? kernels::KernelKind::Reversed : kernels::KernelKind::PoissonType, n, alpha);
}

ValidationReport validate_exponents(const Exponents& e) {
  ValidationReport rep;
  auto fail = [&rep](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };

  if (e.n < 2) fail("dimension n must be >= 2");
  if (e.p != 0.0 && e.p != 1.0 && std::abs(1.0 / e.p + 1.0 / e.p_conj - 1.0) > kTol)
    fail("p and p' are not conjugate");
  if (e.t != 0.0 && e.t != 1.0 && std::abs(1.0 / e.t + 1.0 / e.t_conj - 1.0) > kTol)
    fail("t and t' are not conjugate");

  const double pc = Exponents::critical_p(e.regime, e.n, e.alpha);
  const double tc = Exponents::critical_t(e.n, e.alpha);

  switch (e.regime) {
    case Regime::ReversedCritical:
      if (!(e.alpha > e.n)) fail("reversed regime requires alpha > n");
      if (std::abs(e.p - pc) > kTol || std::abs(e.t - tc) > kTol)
        fail("critical exponents do not match 2(n-1)/(n+alpha-2), 2n/(n+alpha)");
      break;
    case Regime::ReversedSubcritical:
      if (!(e.alpha > e.n)) fail("reversed regime requires alpha > n");
      if (!(e.p > 0.0 && e.p < pc)) fail("subcritical requires 0 < p < 2(n-1)/(n+alpha-2)");
      if (!(e.t > 0.0 && e.t < tc)) fail("subcritical requires 0 < t < 2n/(n+alpha)");
      if (!(e.p_conj < 0.0 && e.t_conj < 0.0 && e.kappa < 0.0 && e.theta < 0.0))
        fail("reversed subcritical conjugates must be negative");
      if (!(e.s1 > 0.0 && e.s2 > 0.0)) fail("s1, s2 must be positive");
      break;
    case Regime::PoissonCritical:
      if (!(e.n >= 3 && e.alpha >= 2.0 && e.alpha < e.n))
        fail("Poisson regime requires n >= 3 and 2 <= alpha < n");
      if (std::abs(e.p - pc) > kTol || std::abs(e.t - tc) > kTol)
        fail("critical exponents do not match 2(n-1)/(n+alpha-4), 2n/(n+alpha)");
      break;
    case Regime::PoissonSubcritical:
      if (!(e.n >= 3 && e.alpha >= 2.0 && e.alpha < e.n))
        fail("Poisson regime requires n >= 3 and 2 <= alpha < n");
      if (!(e.p > pc)) fail("subcritical requires p > 2(n-1)/(n+alpha-4)");
      if (!(e.t > tc)) fail("subcritical requires t > 2n/(n+alpha)");
      // the Young-type bound needs only 1/p + 1/t >= 1; requiring it
      // strictly would exclude the boundary point kappa*theta = 1
      if (!(1.0 / e.p + 1.0 / e.t >= 1.0 - kTol)) fail("requires 1/p + 1/t >= 1");
      if (!(e.kappa > 0.0 && e.theta > 0.0)) fail("kappa, theta must be positive");
      if (!(e.s1 > 0.0 && e.s2 > 0.0)) fail("s1, s2 must be positive");
      break;
  }

  if (e.reversed() && e.alpha != static_cast<double>(e.n)) {
    const double lhs = 1.0 - (e.n - 1.0) / (e.n - e.alpha) * (1.0 - 1.0 / e.p);
    const double rhs = e.n / (e.n - e.alpha) * (1.0 - 1.0 / e.t);
    rep.general_region_ok = lhs < rhs;
  }
  return rep;
}

void require_valid(const Exponents& e) {
  const ValidationReport rep = validate_exponents(e);
  if (rep.ok) return;
  std::ostringstream os;
  os << "invalid exponents:";
  for (const auto& v : rep.violations) os << " " << v << ";";
  throw ValidationError(os.str());
}

}  // namespace hlslab::ops
