#pragma once

#include <stdexcept>
#include <vector>

#include "bext/angle.hpp"
#include "bext/lift_expr.hpp"

namespace bext {

// The lift's endpoint gap F(2pi) - F(0) is not an integer multiple of 2pi,
// so the expression does not descend to a circle self-map.
class NonIntegerWindingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Circle self-map described by a lift F: [0, 2pi] -> R together with its
// winding degree d = (F(2pi) - F(0)) / 2pi.
struct LiftedCircleMap {
  LiftExpr lift;
  int degree = 0;
};

// Validates the lift over [0, 2pi] and extracts the degree. Throws
// NonIntegerWindingError when the endpoint gap is not an integer turn and
// propagates EvalError when the expression fails anywhere on the interval.
LiftedCircleMap make_circle_map(LiftExpr lift);

// Applies the map to a circle point: canonicalize, lift, canonicalize.
Angle eval_map(const LiftedCircleMap& map, Angle theta);

struct FixedPointSet {
  enum class Kind { kDiscrete, kAllFixed, kEmpty };
  Kind kind = Kind::kEmpty;
  std::vector<Angle> points;  // kDiscrete only: ascending, deduplicated

  bool empty() const { return kind == Kind::kEmpty; }
  bool all_fixed() const { return kind == Kind::kAllFixed; }
};

// Solves F(theta) - theta = 2 pi k over the canonical window. Roots are
// located by sign changes on the analysis grid and refined by bisection;
// every reported point has residual within tol of a full turn multiple.
FixedPointSet fixed_points(const LiftedCircleMap& map, double tol);

// Uniform view of a circle self-map: exact pointwise evaluation plus a
// continuous lift with a branch that is consistent across calls.
class CircleSelfMap {
 public:
  virtual ~CircleSelfMap() = default;
  virtual Angle eval(Angle theta) const = 0;
  virtual double lift_value(double theta) const = 0;  // theta in [0, 2pi)
  virtual int degree() const = 0;
};

class LiftMapView final : public CircleSelfMap {
 public:
  explicit LiftMapView(LiftedCircleMap map) : map_(std::move(map)) {}

  Angle eval(Angle theta) const override { return eval_map(map_, theta); }
  double lift_value(double theta) const override { return map_.lift(theta); }
  int degree() const override { return map_.degree; }

 private:
  LiftedCircleMap map_;
};

}  // namespace bext
