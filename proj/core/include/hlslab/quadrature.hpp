#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "hlslab/geometry.hpp"

namespace hlslab::quad {

/// One-dimensional nodes/weights.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
};

/// Gauss-Legendre on [-1, 1].
Rule1D gauss_legendre(int npts);

/// Gauss-Gegenbauer: weight (1 - x^2)^a on [-1, 1], a > -1.
Rule1D gauss_gegenbauer(int npts, double a);

/// Maps a [-1,1] rule to [lo, hi].
Rule1D mapped(const Rule1D& rule, double lo, double hi);

/// Geometric boundary grading for ball rules. Panels of ratio `ratio`
/// stacked toward r = 1, `layers` of them, `points_per_layer` Gauss points
/// each (0 = pick from the base count).
struct GradingDescriptor {
  double ratio = 0.5;
  int layers = 8;
  int points_per_layer = 0;
};

/// Product rule on one of the four domains. Nodes are stored flat
/// (size() x dim); sphere/ball rules keep their product structure so the
/// operators can exploit it. Weight sums reproduce the domain measure for
/// the compact domains.
struct QuadratureRule {
  geom::Domain domain;
  int level = 0;
  std::vector<double> nodes;    // flat, size()*dim
  std::vector<double> weights;  // size()
  std::optional<GradingDescriptor> grading;

  // sphere structure (SphereBn): polar rules in u = cos(theta), azimuth grid
  std::vector<Rule1D> polar;          // n-2 rules
  std::vector<double> phi;            // azimuth angles
  double phi_weight = 0.0;

  // ball structure (BallBn): radial nodes (weights include r^{n-1} factor)
  // tensored with the sphere rule below.
  std::shared_ptr<const QuadratureRule> sphere;
  std::vector<double> r;
  std::vector<double> wr;

  std::size_t size() const { return weights.size(); }
  int dim() const { return domain.dim; }
  geom::Point point(std::size_t i) const;
  std::span<const double> node(std::size_t i) const {
    return {nodes.data() + i * static_cast<std::size_t>(domain.dim),
            static_cast<std::size_t>(domain.dim)};
  }
};

using RulePtr = std::shared_ptr<const QuadratureRule>;

/// Product rule on the unit sphere around z^o: Gauss-Gegenbauer in each
/// polar cosine, uniform azimuth. 6*level polar points per angle,
/// 12*level azimuth points. n in {2,...,6}.
RulePtr sphere_rule(int n, int level);

/// Radial Gauss rule (against weight r^{n-1}) tensored with sphere_rule,
/// centered at z^o. With grading, geometric panels toward r = 1.
RulePtr ball_rule(int n, int level, std::optional<GradingDescriptor> grading = {});

/// Image of a sphere rule under the conformal map: nodes on the boundary
/// hyperplane, weights carrying the boundary Jacobian factor. Cross-check
/// companion to the transported evaluation path.
RulePtr boundary_halfspace_rule(int n, int level);

/// Image of a ball rule under the conformal map (bulk Jacobian weights).
RulePtr halfspace_rule(int n, int level, std::optional<GradingDescriptor> grading = {});

/// Direct truncated polar rule on the boundary hyperplane, radius cutoff R.
/// Cross-check only; the headline results always go through the ball.
RulePtr boundary_halfspace_rule_truncated(int n, int level, double R = 1e3);

/// Sampled function over a rule. `nonnegative` must be set for the
/// operations the inequalities state for nonnegative functions.
struct GridFunction {
  RulePtr rule;
  std::vector<double> values;
  bool nonnegative = false;

  static GridFunction constant(RulePtr rule, double value);
  static GridFunction sample(RulePtr rule, const std::function<double(const geom::Point&)>& f,
                             bool nonnegative = false);
  std::size_t size() const { return values.size(); }
};

/// Sum of weights * values with a fixed pairwise reduction order.
double integrate(const GridFunction& f);

struct RefineResult {
  double value;
  double error_estimate;
  int level;
};

/// Evaluates `functional(level)` at successive levels until the relative
/// change drops below rel_tol. Throws NoConvergence (carrying the best
/// value) if max_level is reached.
RefineResult refine_until(const std::function<double(int)>& functional, double rel_tol,
                          int max_level, int start_level = 1);

}  // namespace hlslab::quad
