#include "bext/manifold.hpp"

#include <cmath>
#include <string>

#include "bext/tolerances.hpp"

namespace bext {

double paraboloid_arclength(double rho) {
  return 0.5 * (rho * std::sqrt(1.0 + rho * rho) + std::asinh(rho));
}

double paraboloid_arclength_inverse(double r) {
  if (!(r >= 0.0)) throw GeometryError("arclength must be nonnegative");
  if (r == 0.0) return 0.0;
  double lo = 0.0, hi = r;  // s(rho) >= rho brackets the root
  double x = r / std::sqrt(1.0 + r);
  for (int iter = 0; iter < 100; ++iter) {
    double fx = paraboloid_arclength(x) - r;
    if (std::abs(fx) <= 1e-14 * (1.0 + r)) return x;
    if (fx > 0.0) {
      hi = x;
    } else {
      lo = x;
    }
    double step = fx / std::sqrt(1.0 + x * x);
    double next = x - step;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  throw GeometryError("arclength inversion did not converge");
}

PoleSurface PoleSurface::euclidean() { return PoleSurface(SurfaceModel::kEuclidean, 0.0); }

PoleSurface PoleSurface::hyperbolic(double kappa) {
  if (!(kappa < 0.0)) throw GeometryError("hyperbolic curvature must be negative");
  return PoleSurface(SurfaceModel::kHyperbolic, kappa);
}

PoleSurface PoleSurface::paraboloid() { return PoleSurface(SurfaceModel::kParaboloid, 0.0); }

SurfacePoint PoleSurface::exp(const TangentVector& v) const {
  if (!(v.r >= 0.0)) throw GeometryError("tangent radius must be nonnegative");
  double c = v.theta.cos();
  double s = v.theta.sin();
  switch (model_) {
    case SurfaceModel::kEuclidean:
      return {v.r * c, v.r * s, 0.0};
    case SurfaceModel::kHyperbolic: {
      double lambda = std::sqrt(-kappa_);
      double m = std::tanh(0.5 * lambda * v.r);
      return {m * c, m * s, 0.0};
    }
    case SurfaceModel::kParaboloid: {
      double rho = paraboloid_arclength_inverse(v.r);
      return {rho * c, rho * s, 0.5 * rho * rho};
    }
  }
  throw GeometryError("unknown surface model");
}

void PoleSurface::validate(const SurfacePoint& q) const {
  switch (model_) {
    case SurfaceModel::kEuclidean:
      if (std::abs(q.z) > kTol.homeo_roundtrip) throw GeometryError("plane points must have z = 0");
      return;
    case SurfaceModel::kHyperbolic: {
      if (std::abs(q.z) > kTol.homeo_roundtrip) {
        throw GeometryError("disc model points must have z = 0");
      }
      if (q.x * q.x + q.y * q.y >= 1.0) {
        throw GeometryError("point lies outside the open unit disc");
      }
      return;
    }
    case SurfaceModel::kParaboloid: {
      double expected = 0.5 * (q.x * q.x + q.y * q.y);
      if (std::abs(q.z - expected) > kTol.homeo_roundtrip * (1.0 + expected)) {
        throw GeometryError("point is off the paraboloid");
      }
      return;
    }
  }
}

TangentVector PoleSurface::log(const SurfacePoint& q) const {
  validate(q);
  double rho = std::hypot(q.x, q.y);
  Angle theta = rho > 0.0 ? Angle(std::atan2(q.y, q.x)) : Angle(0.0);
  switch (model_) {
    case SurfaceModel::kEuclidean:
      return {rho, theta};
    case SurfaceModel::kHyperbolic: {
      double lambda = std::sqrt(-kappa_);
      return {2.0 * std::atanh(rho) / lambda, theta};
    }
    case SurfaceModel::kParaboloid:
      return {paraboloid_arclength(rho), theta};
  }
  throw GeometryError("unknown surface model");
}

double PoleSurface::ambient_distance(const SurfacePoint& a, const SurfacePoint& b) const {
  double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double PoleSurface::min_distortion(double r_max) const {
  switch (model_) {
    case SurfaceModel::kEuclidean:
      return 1.0;
    case SurfaceModel::kHyperbolic: {
      // radial derivative of tanh(lambda r / 2), smallest at r_max
      double lambda = std::sqrt(-kappa_);
      double ch = std::cosh(0.5 * lambda * r_max);
      return 0.5 * lambda / (ch * ch);
    }
    case SurfaceModel::kParaboloid: {
      // horizontal shadow contracts by 1 / sqrt(1 + rho^2) at worst
      double rho = paraboloid_arclength_inverse(r_max);
      return 1.0 / std::sqrt(1.0 + rho * rho);
    }
  }
  return 1.0;
}

SurfacePoint PoleSurface::lift_xy(double x, double y) const {
  switch (model_) {
    case SurfaceModel::kParaboloid:
      return {x, y, 0.5 * (x * x + y * y)};
    default:
      return {x, y, 0.0};
  }
}

GeodesicDomain make_geodesic_domain(PoleSurface surface, LiftExpr rho_g) {
  double lo = 0.0, hi = 0.0;
  const int n = kTol.analysis_grid;
  for (int i = 0; i <= n; ++i) {
    double r = rho_g(canonicalize_angle(kTwoPi * i / n));
    if (i == 0) {
      lo = hi = r;
    } else {
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
  if (!(lo > 0.0)) throw GeometryError("geodesic radius profile must stay strictly positive");
  double seam = std::abs(rho_g(0.0) - rho_g(kTwoPi));
  if (seam > kTol.homeo_roundtrip * (1.0 + hi)) {
    throw GeometryError("geodesic radius profile is discontinuous at the seam");
  }
  return GeodesicDomain{surface, std::move(rho_g), lo, hi};
}

PlanarDomain pull_back_domain(const GeodesicDomain& domain) {
  return PlanarDomain::radial(domain.rho_g);
}

SurfaceExtension::SurfaceExtension(GeodesicDomain domain, DomainExtension planar)
    : domain_(std::move(domain)), planar_(std::move(planar)) {}

SurfacePoint SurfaceExtension::operator()(const SurfacePoint& q) const {
  const PoleSurface& surface = domain_.surface;
  if (surface.model() == SurfaceModel::kEuclidean) {
    surface.validate(q);
    PlanarPoint image = planar_({q.x, q.y});
    return {image.x, image.y, 0.0};
  }
  TangentVector v = surface.log(q);
  PlanarPoint image = planar_({v.r * v.theta.cos(), v.r * v.theta.sin()});
  double r = norm(image);
  Angle theta = r > 0.0 ? Angle(std::atan2(image.y, image.x)) : Angle(0.0);
  return surface.exp({r, theta});
}

SurfaceExtension extend_on_surface(const GeodesicDomain& domain, const LiftedCircleMap& map,
                                   Strategy strategy, std::uint64_t seed) {
  PlanarDomain planar_domain = pull_back_domain(domain);
  DomainExtension planar = extend_domain(planar_domain, map, strategy, seed);
  return SurfaceExtension(domain, std::move(planar));
}

}  // namespace bext
