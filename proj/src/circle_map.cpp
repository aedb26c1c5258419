#include "bext/circle_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "bext/tolerances.hpp"

namespace bext {
namespace {

double lift_or_context(const LiftExpr& lift, double t) {
  try {
    return lift(t);
  } catch (const EvalError& e) {
    throw EvalError(std::string(e.what()) + " while evaluating lift at t=" + std::to_string(t));
  }
}

// Bisection on g(theta) = F(theta) - theta - 2 pi k over a bracketing
// interval. The map is continuous, so the root persists under halving.
double bisect_root(const LiftExpr& lift, double offset, double lo, double hi, double tol) {
  double glo = lift_or_context(lift, lo) - lo - offset;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    double gmid = lift_or_context(lift, mid) - mid - offset;
    if (std::abs(gmid) <= tol && hi - lo <= kTol.root_width) return mid;
    if ((glo <= 0.0) == (gmid <= 0.0)) {
      lo = mid;
      glo = gmid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

LiftedCircleMap make_circle_map(LiftExpr lift) {
  const int n = kTol.analysis_grid;
  for (int i = 0; i <= n; ++i) {
    lift_or_context(lift, kTwoPi * i / n);
  }
  double gap = lift_or_context(lift, kTwoPi) - lift_or_context(lift, 0.0);
  double turns = gap / kTwoPi;
  double rounded = std::round(turns);
  if (std::abs(gap - rounded * kTwoPi) > kTol.winding_integrality) {
    throw NonIntegerWindingError("lift '" + lift.source() + "' winds " + std::to_string(turns) +
                                 " turns, not an integer");
  }
  return LiftedCircleMap{std::move(lift), static_cast<int>(rounded)};
}

Angle eval_map(const LiftedCircleMap& map, Angle theta) {
  return Angle(map.lift(theta.radians()));
}

FixedPointSet fixed_points(const LiftedCircleMap& map, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("fixed_points: tol must be positive");
  const int n = kTol.analysis_grid;
  std::vector<double> theta(n + 1), s(n + 1);
  double max_abs = 0.0;
  double max_mod = 0.0;
  for (int i = 0; i <= n; ++i) {
    theta[i] = kTwoPi * i / n;
    s[i] = lift_or_context(map.lift, theta[i]) - theta[i];
    max_abs = std::max(max_abs, std::abs(s[i]));
    max_mod = std::max(max_mod, mod_2pi_distance(s[i]));
  }

  if (max_mod <= tol) return FixedPointSet{FixedPointSet::Kind::kAllFixed, {}};

  std::vector<double> roots;
  int k_span = static_cast<int>(std::floor((max_abs + kTwoPi) / kTwoPi));
  for (int k = -k_span; k <= k_span; ++k) {
    double offset = kTwoPi * k;
    for (int i = 0; i <= n; ++i) {
      double g = s[i] - offset;
      if (std::abs(g) <= tol) {
        roots.push_back(theta[i]);
      } else if (i < n) {
        double gn = s[i + 1] - offset;
        if (std::abs(gn) > tol && (g < 0.0) != (gn < 0.0)) {
          roots.push_back(bisect_root(map.lift, offset, theta[i], theta[i + 1], tol));
        }
      }
    }
  }

  for (double& r : roots) r = canonicalize_angle(r);
  std::sort(roots.begin(), roots.end());

  std::vector<Angle> points;
  for (double r : roots) {
    if (!points.empty() && r - points.back().radians() <= 10.0 * tol) continue;
    points.push_back(Angle(r));
  }
  while (points.size() >= 2 &&
         points.front().radians() + kTwoPi - points.back().radians() <= 10.0 * tol) {
    points.pop_back();
  }

  if (points.empty()) return FixedPointSet{FixedPointSet::Kind::kEmpty, {}};
  return FixedPointSet{FixedPointSet::Kind::kDiscrete, std::move(points)};
}

}  // namespace bext
