#include "bext/extend.hpp"

#include <cmath>
#include <string>

#include "bext/tolerances.hpp"

namespace bext {

DiscExtension::DiscExtension(std::shared_ptr<const CircleSelfMap> map, Angle fixed_point,
                             Strategy strategy)
    : map_(std::move(map)), fixed_point_(fixed_point), strategy_(strategy) {
  if (circle_distance(map_->eval(fixed_point_), fixed_point_) > kTol.fixed_point_tol) {
    throw HypothesisError("claimed fixed point moves under the boundary map");
  }
  if (strategy_ == Strategy::kCollapse0) {
    if (map_->degree() != 0) {
      throw StrategyError("collapse toward the fixed point needs degree 0, map has degree " +
                          std::to_string(map_->degree()));
    }
    double p = fixed_point_.radians();
    double raw = map_->lift_value(p);
    lift_offset_ = kTwoPi * std::round((p - raw) / kTwoPi);
  }
}

Angle DiscExtension::boundary_angle(double t, Angle phi) const {
  t = std::clamp(t, 0.0, 1.0);
  if (strategy_ == Strategy::kRotation) {
    if (t == 0.0) return fixed_point_;
    return map_->eval(Angle(phi.radians() + schedule_.at(t)));
  }
  double p = fixed_point_.radians();
  double lifted = map_->lift_value(phi.radians()) + lift_offset_;
  return Angle(p + t * (lifted - p));
}

PlanarPoint DiscExtension::operator()(PlanarPoint z) const {
  double r = norm(z);
  if (r < 1e-12) return unit_vector(boundary_angle(0.0, Angle(0.0)));
  Angle out = boundary_angle(std::min(r, 1.0), Angle(std::atan2(z.y, z.x)));
  return unit_vector(out);
}

Angle extend_disc_rotation(const CircleSelfMap& map, Angle fixed_point, double t, Angle phi) {
  if (t <= 0.0) return fixed_point;
  return map.eval(Angle(phi.radians() + RotationSchedule{}.at(t)));
}

Angle extend_disc_collapse0(const CircleSelfMap& map, Angle fixed_point, double t, Angle phi) {
  if (map.degree() != 0) {
    throw StrategyError("collapse toward the fixed point needs degree 0");
  }
  double p = fixed_point.radians();
  double raw = map.lift_value(p);
  double offset = kTwoPi * std::round((p - raw) / kTwoPi);
  double lifted = map.lift_value(phi.radians()) + offset;
  return Angle(p + std::clamp(t, 0.0, 1.0) * (lifted - p));
}

ConjugatedCircleMap::ConjugatedCircleMap(BoundaryParam param, LiftedCircleMap map)
    : param_(std::move(param)), map_(std::move(map)) {
  const int n = kConjugationTable;
  lift_table_.resize(static_cast<std::size_t>(n) + 1);
  double prev = 0.0;
  for (int i = 0; i <= n; ++i) {
    double phi = kTwoPi * i / n;
    double value = eval(Angle(phi)).radians();
    if (i == 0) {
      lift_table_[0] = value;
    } else {
      lift_table_[static_cast<std::size_t>(i)] = prev + wrap_to_pi(value - prev);
    }
    prev = lift_table_[static_cast<std::size_t>(i)];
  }
  double turns = (lift_table_.back() - lift_table_.front()) / kTwoPi;
  degree_ = static_cast<int>(std::round(turns));
  if (std::abs(turns - degree_) > 1e-6 || degree_ != map_.degree) {
    throw GeometryError("conjugation did not preserve the winding degree");
  }
}

Angle ConjugatedCircleMap::eval(Angle phi) const {
  Angle theta = param_.ray_angle_of_circle(phi);
  Angle image = eval_map(map_, theta);
  return param_.circle_angle_of_ray(image);
}

double ConjugatedCircleMap::lift_value(double phi) const {
  const int n = kConjugationTable;
  double exact = eval(Angle(phi)).radians();
  double pos = canonicalize_angle(phi) / kTwoPi * n;
  int i = std::min(static_cast<int>(pos), n - 1);
  double frac = pos - i;
  double approx = lift_table_[static_cast<std::size_t>(i)] +
                  frac * (lift_table_[static_cast<std::size_t>(i) + 1] -
                          lift_table_[static_cast<std::size_t>(i)]);
  return exact + kTwoPi * std::round((approx - exact) / kTwoPi);
}

ConjugatedCircleMap conjugate_boundary_map(BoundaryParam param, LiftedCircleMap map) {
  return ConjugatedCircleMap(std::move(param), std::move(map));
}

DomainExtension::DomainExtension(BoundaryParam param, DiscExtension inner)
    : param_(std::move(param)), inner_(std::move(inner)) {}

PlanarPoint DomainExtension::operator()(PlanarPoint q) const {
  PlanarPoint o = param_.domain().anchor();
  PlanarPoint d = q - o;
  double r = norm(d);
  Angle alpha;
  if (r < 1e-12) {
    alpha = inner_.boundary_angle(0.0, Angle(0.0));
  } else {
    Angle theta(std::atan2(d.y, d.x));
    PlanarPoint b = param_.boundary_point(theta);
    double span = distance(b, o);
    double t = span > 0.0 ? std::clamp(r / span, 0.0, 1.0) : 0.0;
    Angle phi = param_.circle_angle_of_ray(theta);
    alpha = inner_.boundary_angle(t, phi);
  }
  return param_.from_circle(alpha);
}

DomainExtension extend_domain(const PlanarDomain& domain, const LiftedCircleMap& map,
                              Strategy strategy, std::uint64_t seed) {
  FixedPointSet fps = fixed_points(map, kTol.fixed_point_tol);
  if (fps.empty()) {
    throw HypothesisError("boundary map '" + map.lift.source() + "' has no fixed point");
  }
  Angle p = fps.all_fixed() ? Angle(0.0) : fps.points.front();

  Circle circle = circumscribed_circle(domain, seed);
  BoundaryParam param(domain, circle);
  auto conjugated = std::make_shared<ConjugatedCircleMap>(param, map);
  Angle p_circle = param.circle_angle_of_ray(p);
  DiscExtension inner(conjugated, p_circle, strategy);
  return DomainExtension(std::move(param), std::move(inner));
}

PlanarPoint witness_identity_extension(PlanarPoint v, PlanarPoint z) {
  double vn = norm(v);
  if (!(vn > 0.0) || vn > 1.0 + kTol.containment_slack) {
    throw GeometryError("witness direction must satisfy 0 < |v| <= 1");
  }
  double zn = norm(z);
  if (zn > 1.0 + kTol.containment_slack) {
    throw GeometryError("witness input must lie in the closed unit disc");
  }
  return z + (1.0 - std::min(zn, 1.0)) * v;
}

}  // namespace bext
