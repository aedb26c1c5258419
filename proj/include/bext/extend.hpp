#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "bext/circle_map.hpp"
#include "bext/geom2d.hpp"

namespace bext {

// The boundary map has an empty fixed-point set, so neither construction
// applies.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The requested strategy does not apply to this map (collapse toward the
// fixed point needs winding degree zero).
class StrategyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Strategy { kRotation, kCollapse0 };

// Interpolating turn i(t) = 2 pi t, i(0) = 0, i(1) = 2 pi.
struct RotationSchedule {
  double at(double t) const { return kTwoPi * t; }
};

// Extension of a circle self-map over the closed unit disc, valued in the
// circle. In polar coordinates (t, phi) with t the radial fraction:
//   rotation:  G(t, phi) = f(phi + i(t)), G(center) = p
//   collapse0: G(t, phi) = p + t (F(phi) - p) along the lift normalised so
//              that F(p) = p; requires degree zero
// Both agree with f on the boundary and send the center to the fixed point.
class DiscExtension {
 public:
  DiscExtension(std::shared_ptr<const CircleSelfMap> map, Angle fixed_point, Strategy strategy);

  Angle boundary_angle(double t, Angle phi) const;
  PlanarPoint operator()(PlanarPoint z) const;  // |z| <= 1, image on the unit circle

  Strategy strategy() const { return strategy_; }
  Angle fixed_point() const { return fixed_point_; }
  const CircleSelfMap& map() const { return *map_; }

 private:
  std::shared_ptr<const CircleSelfMap> map_;
  Angle fixed_point_;
  Strategy strategy_;
  RotationSchedule schedule_;
  double lift_offset_ = 0.0;
};

Angle extend_disc_rotation(const CircleSelfMap& map, Angle fixed_point, double t, Angle phi);
Angle extend_disc_collapse0(const CircleSelfMap& map, Angle fixed_point, double t, Angle phi);

// The boundary map transported to the circumscribed circle by the boundary
// parametrisation: f' = dh o f o dh^{-1}. Degree is preserved; the lift
// branch comes from a dense unwrapped table.
class ConjugatedCircleMap final : public CircleSelfMap {
 public:
  ConjugatedCircleMap(BoundaryParam param, LiftedCircleMap map);

  Angle eval(Angle phi) const override;
  double lift_value(double phi) const override;
  int degree() const override { return degree_; }

  const BoundaryParam& param() const { return param_; }

 private:
  BoundaryParam param_;
  LiftedCircleMap map_;
  std::vector<double> lift_table_;
  int degree_ = 0;
};

ConjugatedCircleMap conjugate_boundary_map(BoundaryParam param, LiftedCircleMap map);

// Extension over a star-shaped planar domain. A point q is read in the
// polar frame of the anchor (radial fraction along its ray, circle angle of
// the ray), pushed through the disc extension of the conjugated map, and
// walked back to the domain boundary.
class DomainExtension {
 public:
  DomainExtension(BoundaryParam param, DiscExtension inner);

  PlanarPoint operator()(PlanarPoint q) const;

  const PlanarDomain& domain() const { return param_.domain(); }
  const Circle& circle() const { return param_.circle(); }
  const BoundaryParam& param() const { return param_; }
  const DiscExtension& inner() const { return inner_; }

 private:
  BoundaryParam param_;
  DiscExtension inner_;
};

// Builds the full pipeline: fixed points of f (least angle chosen), the
// circumscribed circle, the conjugated map, and the disc extension.
DomainExtension extend_domain(const PlanarDomain& domain, const LiftedCircleMap& map,
                              Strategy strategy, std::uint64_t seed = kDefaultGeomSeed);

// Interior extension witness for the identity boundary map on the unit
// disc: z + (1 - |z|) v with 0 < |v| <= 1. Continuous, equal to the
// identity on the boundary, and displaces every interior point.
PlanarPoint witness_identity_extension(PlanarPoint v, PlanarPoint z);

}  // namespace bext
