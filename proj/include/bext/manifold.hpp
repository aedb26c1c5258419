#pragma once

#include <cstdint>

#include "bext/angle.hpp"
#include "bext/circle_map.hpp"
#include "bext/extend.hpp"
#include "bext/geom2d.hpp"
#include "bext/lift_expr.hpp"

namespace bext {

enum class SurfaceModel { kEuclidean, kHyperbolic, kParaboloid };

// Tangent vector at the pole, in polar form.
struct TangentVector {
  double r = 0.0;  // geodesic length, >= 0
  Angle theta;
};

// Point in the model's ambient coordinates. The plane and the Poincare disc
// use (x, y) with z = 0; the paraboloid z = (x^2 + y^2) / 2 is embedded.
struct SurfacePoint {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

// Meridian arclength of the paraboloid profile, s(rho) = integral of
// sqrt(1 + u^2) from 0 to rho, and its inverse by safeguarded Newton.
double paraboloid_arclength(double rho);
double paraboloid_arclength_inverse(double r);

// A complete simply connected surface carrying a pole o: the exponential at
// o is a global diffeomorphism, so exp and log convert between tangent
// polar coordinates and model points. Supported models: the Euclidean
// plane, the hyperbolic plane of curvature kappa < 0 (Poincare disc), and
// the paraboloid of revolution z = (x^2 + y^2) / 2 with the pole at the
// vertex.
class PoleSurface {
 public:
  static PoleSurface euclidean();
  static PoleSurface hyperbolic(double kappa);
  static PoleSurface paraboloid();

  SurfaceModel model() const { return model_; }
  double kappa() const { return kappa_; }

  SurfacePoint exp(const TangentVector& v) const;
  TangentVector log(const SurfacePoint& q) const;
  void validate(const SurfacePoint& q) const;
  double ambient_distance(const SurfacePoint& a, const SurfacePoint& b) const;

  // Lower bound on the ambient displacement per unit tangent displacement
  // over the geodesic ball of radius r_max.
  double min_distortion(double r_max) const;

  // Completes the ambient coordinates of a model point given (x, y).
  SurfacePoint lift_xy(double x, double y) const;

 private:
  PoleSurface(SurfaceModel model, double kappa) : model_(model), kappa_(kappa) {}

  SurfaceModel model_ = SurfaceModel::kEuclidean;
  double kappa_ = 0.0;
};

// Geodesic-polar region around the pole: r <= rho_g(theta) with rho_g
// continuous and strictly positive.
struct GeodesicDomain {
  PoleSurface surface;
  LiftExpr rho_g;
  double rho_min = 0.0;
  double rho_max = 0.0;
};

GeodesicDomain make_geodesic_domain(PoleSurface surface, LiftExpr rho_g);

// Tangent-plane shadow of the region: the radial planar domain with the
// same profile.
PlanarDomain pull_back_domain(const GeodesicDomain& domain);

// Extension on the surface: H = exp_o o psi o log_o with psi the planar
// extension over the pulled-back domain. On the Euclidean model the (x, y)
// coordinates pass straight through, so the planar pipeline is reproduced
// bit for bit.
class SurfaceExtension {
 public:
  SurfaceExtension(GeodesicDomain domain, DomainExtension planar);

  SurfacePoint operator()(const SurfacePoint& q) const;

  const GeodesicDomain& domain() const { return domain_; }
  const DomainExtension& planar() const { return planar_; }

 private:
  GeodesicDomain domain_;
  DomainExtension planar_;
};

SurfaceExtension extend_on_surface(const GeodesicDomain& domain, const LiftedCircleMap& map,
                                   Strategy strategy, std::uint64_t seed = kDefaultGeomSeed);

}  // namespace bext
