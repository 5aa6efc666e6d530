#pragma once

#include <stdexcept>
#include <string>

namespace hlslab {

struct SingularPoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedDimension : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonFiniteValue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct SingularEvaluation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BoundarySingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ZeroDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NegativeValueUnderFractionalPower : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonnegativityRequired : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct PositivityLoss : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Refinement ran out of levels. Carries the best value seen so far.
struct NoConvergence : std::runtime_error {
  double best_value;
  double error_estimate;
  int level;
  NoConvergence(const std::string& what, double best, double estimate, int lvl)
      : std::runtime_error(what), best_value(best), error_estimate(estimate), level(lvl) {}
};

}  // namespace hlslab
