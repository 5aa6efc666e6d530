#pragma once

#include <cstdint>
#include <functional>
#include <memory>

#include "hlslab/exponents.hpp"
#include "hlslab/quadrature.hpp"

namespace hlslab::ops {

/// Zonal kernel k(r, u) = scale * (1-r^2)^{poisson_factor} *
/// (1 + r^2 - 2 r u)^{expo/2} between a ball point at radius r and a sphere
/// point at angle cosine u. Covers both inequality kernels and the Young
/// comparison kernels.
struct ZonalKernel {
  double expo = 0.0;
  bool poisson_factor = false;
  double scale = 1.0;
};

ZonalKernel extension_kernel(const Exponents& e);

enum class EvalPath { Auto, Spectral, Direct };

/// Extension (sphere -> ball) and boundary trace (ball -> sphere) for a
/// zonal kernel over a product ball rule. extend and trace are exact
/// discrete adjoints of each other and map constants through the 1-D zonal
/// profile exactly. For n = 3 the application is spectral (Funk-Hecke
/// multipliers per degree); otherwise direct summation with the zonal
/// profile split off.
class ExtensionOperator {
 public:
  ExtensionOperator(quad::RulePtr ball, ZonalKernel kernel, EvalPath path = EvalPath::Auto);
  ~ExtensionOperator();
  ExtensionOperator(ExtensionOperator&&) noexcept;
  ExtensionOperator& operator=(ExtensionOperator&&) noexcept;

  quad::GridFunction extend(const quad::GridFunction& f) const;
  quad::GridFunction trace(const quad::GridFunction& g) const;
  const quad::RulePtr& ball() const;
  quad::RulePtr sphere() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// E_alpha f (reversed) or P_alpha f (Poisson-type) on the ball rule.
quad::GridFunction extend_ball(const quad::GridFunction& f, const Exponents& e,
                               quad::RulePtr ball);

/// Q_alpha g, the adjoint boundary trace (Poisson regimes).
quad::GridFunction boundary_trace_Q(const quad::GridFunction& g, const Exponents& e);

/// (integral of f^p)^{1/p}; p may be negative or in (0,1), in which case f
/// must be nonnegative and zeros are clamped to 1e-300 (with a warning).
double lp_functional(const quad::GridFunction& f, double p);

/// D(f,g) / (|f|_p |g|_t) with D = double integral of g f k. Computed as
/// integral of g * extend(f) over the ball.
double quotient_reversed(const quad::GridFunction& f, const quad::GridFunction& g,
                         const Exponents& e);
double quotient_poisson(const quad::GridFunction& f, const quad::GridFunction& g,
                        const Exponents& e);

/// One two-link Young chain evaluation: I against the product of the three
/// Hoelder factors, and the product against the closed right-hand side.
/// Slacks are oriented so that >= 0 means the link holds (reversed chain:
/// I >= product >= rhs; forward chain: I <= product <= rhs).
struct ChainReport {
  double I = 0;               // double integral of g f h
  double factor_q = 0;        // |gamma_3|_{q'}  (1 when q' = infinity)
  double factor_p = 0;        // |gamma_1|_{p'}
  double factor_t = 0;        // |gamma_2|_{t'}
  double product = 0;         // factor_q * factor_p * factor_t
  double rhs = 0;             // |f|_p |g|_t |h(.,x^o)|_{at'} |h_1(0,.)|_{(1-a)p'}
  double slack_chain = 0;     // first link, signed toward validity
  double slack_outer = 0;     // second link, signed toward validity
  bool degenerate = false;    // an intermediate factor was 0 or infinite
};

/// Reversed two-link chain at h = |x-y|^{alpha-n} with the chordal
/// comparison profile h_1 (sqrt(2) split). a = 1/2 is the standard choice.
ChainReport young_chain_reversed(const quad::GridFunction& f, const quad::GridFunction& g,
                                 double a, const Exponents& e);

/// Forward chain with h = 4|x-y|^{-(n-alpha+1)} and the matching chordal
/// h_1 (carrying the same factor 4, without which the pointwise domination
/// fails); a defaults to (n-alpha)/(2(n-alpha+1)).
ChainReport young_chain_forward(const quad::GridFunction& f, const quad::GridFunction& g,
                                double a, const Exponents& e);

/// Pointwise h >= h_1(x*, y) (reversed) or kernel <= h (forward) sampling
/// helpers used by the verification suites. Return the minimum slack seen.
double young_pointwise_reversed_min(const Exponents& e, int samples, std::uint64_t seed);
double young_pointwise_forward_min(const Exponents& e, int samples, std::uint64_t seed);

enum class HalfspacePath { ConformalPullback, DirectTruncated };

/// Evaluator for the half-space extensions (E~ / P~). The pullback path
/// transports the boundary integral to the sphere rule; the truncated
/// direct path exists as a labeled cross-check only.
class HalfspaceExtension {
 public:
  HalfspaceExtension(std::function<double(const geom::Point&)> f, const Exponents& e,
                     quad::RulePtr sphere_or_boundary, HalfspacePath path,
                     double truncation_radius = 1e3);
  double operator()(const geom::Point& x) const;
  bool tail_truncation_warning() const { return path_ == HalfspacePath::DirectTruncated; }
  HalfspacePath path() const { return path_; }

 private:
  std::function<double(const geom::Point&)> f_;
  Exponents e_;
  quad::RulePtr rule_;
  HalfspacePath path_;
  double radius_;
};

/// Log-normal random test field exp(sum c_k bump_k) over a rule's nodes;
/// strictly positive, smooth at the given bump widths, reproducible by seed.
quad::GridFunction random_lognormal(quad::RulePtr rule, std::uint64_t seed, int bumps = 6,
                                    double amplitude = 0.6);

}  // namespace hlslab::ops
